"""
Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`, polynomials are
:class:`sympy.Poly` over :data:`sympy.QQ` (so the zero polynomial has
degree ``-oo``), and this module adds the pieces that neither library
supplies in the shape the lattice code needs: residues in Q/2Z,
reduced rational functions with a monic denominator, immutable
integer matrices and a Smith normal form that returns its transforms.

"""
from fractions import Fraction
import logging

import sympy
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from k3brauer import errors


LOGGER = logging.getLogger(__name__)


def to_fraction(value):
    """
    Convert `value` into a :class:`fractions.Fraction`.

    :param value: an :class:`int`, :class:`~fractions.Fraction`,
        :class:`QMod2Z`, SymPy rational or a string in ``p/q`` form.
    :rtype: fractions.Fraction
    :raises k3brauer.errors.InvalidInput: for anything inexact.

    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, QMod2Z):
        return value.value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        return Fraction(int(value.numerator), int(value.denominator))
    raise errors.InvalidInput(
        'cannot convert {!r} to an exact rational'.format(value))


def parse_rational(text):
    """
    Parse ``"p/q"`` or ``"p"`` into a reduced :class:`~fractions.Fraction`.

    :param str text: the string to parse.
    :rtype: fractions.Fraction
    :raises k3brauer.errors.InvalidInput: on malformed input or a
        zero denominator.

    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise errors.InvalidInput('not a rational: {!r}'.format(text))


def format_rational(value):
    """Canonical string for a rational: ``"p/q"`` or ``"p"``."""
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return '{}/{}'.format(value.numerator, value.denominator)


def mod1(value):
    """Representative of `value` in ``[0, 1)``."""
    value = to_fraction(value)
    return value - (value.numerator // value.denominator)


class QMod2Z(object):

    """
    An element of Q/2Z.

    :param value: any exact rational.

    The stored representative always lies in ``[0, 2)`` so two
    instances compare equal exactly when their representatives are
    identical.  Instances are immutable.

    """

    __slots__ = ('_value',)

    def __init__(self, value):
        value = to_fraction(value)
        self._value = value - 2 * (value // 2)

    @property
    def value(self):
        """The canonical representative in ``[0, 2)``."""
        return self._value

    def is_zero(self):
        return self._value == 0

    def __add__(self, other):
        return QMod2Z(self._value + to_fraction(other))

    __radd__ = __add__

    def __sub__(self, other):
        return QMod2Z(self._value - to_fraction(other))

    def __neg__(self):
        return QMod2Z(-self._value)

    def __mul__(self, other):
        if not isinstance(other, int):
            return NotImplemented
        return QMod2Z(self._value * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return qmod2z_eq(self, other)
        except errors.InvalidInput:
            return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(('QMod2Z', self._value))

    def __str__(self):
        return format_rational(self._value)

    def __repr__(self):
        return 'QMod2Z({})'.format(format_rational(self._value))


def qmod2z_eq(a, b):
    """
    Do `a` and `b` agree in Q/2Z?

    :param a: a :class:`QMod2Z` or exact rational.
    :param b: a :class:`QMod2Z` or exact rational.
    :returns: :data:`True` iff ``a - b`` is an even integer.
    :rtype: bool

    """
    difference = (to_fraction(a) - to_fraction(b)) / 2
    return difference.denominator == 1


#
# Polynomials
#

def _sympify_rational(value):
    value = to_fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def make_poly(coefficients, symbol='x'):
    """
    Build a univariate polynomial over Q.

    :param list coefficients: exact rationals, lowest degree first.
        Trailing zeros are dropped.
    :param symbol: variable name or :class:`sympy.Symbol`.
    :rtype: sympy.Poly

    """
    gen = sympy.Symbol(symbol) if isinstance(symbol, str) else symbol
    coefficients = [to_fraction(c) for c in coefficients]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    if not coefficients:
        return sympy.Poly(0, gen, domain=QQ)
    return sympy.Poly([_sympify_rational(c) for c in reversed(coefficients)],
                      gen, domain=QQ)


def parse_poly(text, symbol='x'):
    """
    Parse the comma separated text format.

    :param str text: rational coefficients, lowest degree first, for
        example ``"0,-1,0,4"`` for :math:`4x^3 - x`.
    :param symbol: variable name or :class:`sympy.Symbol`.
    :rtype: sympy.Poly
    :raises k3brauer.errors.InvalidInput: on malformed coefficients.

    """
    parts = [part for part in text.split(',')]
    if not text.strip() or any(not part.strip() for part in parts):
        raise errors.InvalidInput('not a polynomial: {!r}'.format(text))
    return make_poly([parse_rational(part) for part in parts], symbol)


def coefficients(poly):
    """Coefficients of `poly` as Fractions, lowest degree first."""
    top = degree(poly)
    if top == -sympy.oo:
        return []
    return [to_fraction(poly.nth(k)) for k in range(int(top) + 1)]


def format_poly(poly):
    """Inverse of :func:`parse_poly`; the zero polynomial prints as ``0``."""
    return ','.join(format_rational(c) for c in coefficients(poly)) or '0'


def degree(poly):
    """
    Degree of a univariate polynomial.

    The zero polynomial answers :data:`sympy.oo` negated, so degree
    sums such as ``degree(f * g) == degree(f) + degree(g)`` stay true.

    """
    return poly.degree()


def content(poly):
    """
    Positive content of a polynomial over Q.

    The gcd of the numerators divided by the lcm of the denominators,
    so that ``poly / content(poly)`` has coprime integer coefficients.
    The zero polynomial has content 0.

    """
    values = [c for c in coefficients(poly) if c]
    if not values:
        return Fraction(0)
    numerator, denominator = 0, 1
    for value in values:
        numerator = sympy.igcd(numerator, value.numerator)
        denominator = sympy.ilcm(denominator, value.denominator)
    return Fraction(int(numerator), int(denominator))


def evaluate(poly, point):
    """Exact value of a univariate `poly` at a rational `point`."""
    return to_fraction(poly.eval(_sympify_rational(point)))


class RatFunc(object):

    """
    A reduced quotient of univariate polynomials over Q.

    :param sympy.Poly numerator:
    :param sympy.Poly denominator: optional, defaults to ``1``.

    Instances are canonical: numerator and denominator are coprime
    and the denominator is monic, so equality is structural.
    Arithmetic with integers, Fractions and :class:`sympy.Poly`
    values in the same variable is supported.

    """

    __slots__ = ('_numerator', '_denominator')

    def __init__(self, numerator, denominator=None):
        gen = numerator.gen
        numerator = sympy.Poly(numerator, gen, domain=QQ)
        if denominator is None:
            denominator = sympy.Poly(1, gen, domain=QQ)
        else:
            denominator = sympy.Poly(denominator, gen, domain=QQ)
        if denominator.is_zero:
            raise errors.InvalidInput('zero denominator')
        if numerator.is_zero:
            denominator = sympy.Poly(1, gen, domain=QQ)
        else:
            common = numerator.gcd(denominator)
            numerator = numerator.exquo(common)
            denominator = denominator.exquo(common)
            numerator = numerator.quo_ground(denominator.LC())
            denominator = denominator.monic()
        self._numerator = numerator
        self._denominator = denominator

    @classmethod
    def constant(cls, value, symbol='x'):
        return cls(make_poly([value], symbol))

    @property
    def numerator(self):
        return self._numerator

    @property
    def denominator(self):
        return self._denominator

    @property
    def gen(self):
        return self._numerator.gen

    def is_zero(self):
        return self._numerator.is_zero

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, sympy.Poly):
            return RatFunc(other)
        return RatFunc.constant(to_fraction(other), self.gen)

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(
            self._numerator * other._denominator +
            other._numerator * self._denominator,
            self._denominator * other._denominator)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self._numerator, self._denominator)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self._numerator * other._numerator,
                       self._denominator * other._denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise errors.InvalidInput('division by the zero function')
        return RatFunc(self._numerator * other._denominator,
                       self._denominator * other._numerator)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except errors.InvalidInput:
            return NotImplemented
        return (self._numerator == other._numerator and
                self._denominator == other._denominator)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((format_poly(self._numerator),
                     format_poly(self._denominator)))

    def as_expr(self):
        return self._numerator.as_expr() / self._denominator.as_expr()

    def __str__(self):
        if self._denominator.degree() == 0:
            return str(self._numerator.as_expr())
        return '({})/({})'.format(self._numerator.as_expr(),
                                  self._denominator.as_expr())

    def __repr__(self):
        return 'RatFunc({})'.format(self)


#
# Integer matrices
#

class IntMatrix(object):

    """
    An immutable rectangular matrix of Python integers.

    :param entries: a sequence of equally long rows.
    :raises k3brauer.errors.InvalidInput: for empty or ragged input.

    """

    __slots__ = ('_entries',)

    def __init__(self, entries):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        if not rows or not rows[0]:
            raise errors.InvalidInput('a matrix needs at least one entry')
        if any(len(row) != len(rows[0]) for row in rows):
            raise errors.InvalidInput('ragged matrix rows')
        self._entries = rows

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)]
                    for i in range(n)])

    @classmethod
    def block_diagonal(cls, blocks):
        """Assemble square `blocks` along the diagonal."""
        size = sum(block.rows for block in blocks)
        entries = [[0] * size for _ in range(size)]
        offset = 0
        for block in blocks:
            for i in range(block.rows):
                for j in range(block.cols):
                    entries[offset + i][offset + j] = block[i, j]
            offset += block.rows
        return cls(entries)

    @property
    def rows(self):
        return len(self._entries)

    @property
    def cols(self):
        return len(self._entries[0])

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, index):
        i, j = index
        return self._entries[i][j]

    def row(self, i):
        return self._entries[i]

    def column(self, j):
        return tuple(row[j] for row in self._entries)

    def to_lists(self):
        return [list(row) for row in self._entries]

    def transpose(self):
        return IntMatrix(zip(*self._entries))

    def is_square(self):
        return self.rows == self.cols

    def is_symmetric(self):
        return self.is_square() and self == self.transpose()

    def __mul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise errors.InvalidInput('shape mismatch {} x {}'.format(
                self.shape, other.shape))
        columns = list(zip(*other._entries))
        return IntMatrix([[sum(a * b for a, b in zip(row, col))
                           for col in columns] for row in self._entries])

    def __neg__(self):
        return IntMatrix([[-v for v in row] for row in self._entries])

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._entries == other._entries

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        return 'IntMatrix({!r})'.format(self.to_lists())

    def determinant(self):
        """Exact determinant, computed by SymPy over ZZ."""
        if not self.is_square():
            raise errors.InvalidInput('determinant of a non-square matrix')
        return int(_domain_matrix(self._entries).det())


def _domain_matrix(rows):
    rows = [list(row) for row in rows]
    return DomainMatrix([[ZZ(v) for v in row] for row in rows],
                        (len(rows), len(rows[0])), ZZ)


def smith_normal_form(m):
    """
    Smith normal form with its unimodular transforms.

    :param IntMatrix m: any integer matrix.
    :returns: ``(U, D, V)`` with ``U * m * V == D``, ``U`` and ``V``
        unimodular and ``D`` diagonal with non-negative entries
        ``d1 | d2 | ...``.
    :rtype: tuple

    Each step moves the smallest non-zero entry of the remaining block
    into pivot position, clears its row and column by Euclidean
    reduction, and folds in a row whenever an entry is not divisible
    by the pivot.  Zero matrices come back unchanged.

    """
    rows, cols = m.shape
    a = m.to_lists()
    u = IntMatrix.identity(rows).to_lists()
    v = IntMatrix.identity(cols).to_lists()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(target, source, factor):
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]

    def add_col(target, source, factor):
        for row in a:
            row[target] += factor * row[source]
        for row in v:
            row[target] += factor * row[source]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (pivot is None or
                                    abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and not a[i][t]
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and not a[t][j]
            if not clean:
                continue
            stray = next(((i, j) for i in range(t + 1, rows)
                          for j in range(t + 1, cols) if a[i][j] % p), None)
            if stray is None:
                break
            add_row(t, stray[0], 1)
        if pivot is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return IntMatrix(u), IntMatrix(a), IntMatrix(v)


def invariant_factors(m):
    """Diagonal of the Smith normal form of `m`."""
    _, d, _ = smith_normal_form(m)
    return [d[i, i] for i in range(min(d.shape))]


def matrix_rank(m):
    """Rank of an integer matrix over Q."""
    return sum(1 for value in invariant_factors(m) if value)


def integer_kernel(m):
    """
    Basis of the integer right kernel ``{x : m x = 0}``.

    :param IntMatrix m:
    :returns: a list of integer tuples spanning the kernel; the kernel
        of an integer matrix is always a primitive sublattice.
    :rtype: list

    """
    _, d, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(d.shape)) if d[i, i])
    return [v.column(j) for j in range(rank, m.cols)]


def hermite_basis(vectors):
    """
    Canonical basis of the lattice spanned by `vectors`.

    :param list vectors: integer vectors of equal length.
    :returns: the columns of the Hermite normal form (computed by
        SymPy) of the matrix whose columns are `vectors`.
    :rtype: list

    Two generating sets of the same lattice give the same output,
    which keeps kernels and complements deterministic.

    """
    vectors = [tuple(int(x) for x in vector) for vector in vectors]
    if not vectors:
        return []
    columns = list(zip(*vectors))
    hnf = hermite_normal_form(_domain_matrix(columns)).to_Matrix()
    return [tuple(int(hnf[i, j]) for i in range(hnf.rows))
            for j in range(hnf.cols)]


def congruence_diagonalize(matrix, zero=0, one=1):
    """
    Diagonalise a symmetric matrix by congruence over a field.

    :param list matrix: square list of lists of field elements
        (Fractions, :class:`RatFunc`, ...).
    :param zero: the field's zero.
    :param one: the field's one.
    :returns: ``(P, D)`` as lists of lists with
        ``transpose(P) * matrix * P == D`` and ``D`` diagonal.
    :raises k3brauer.errors.InvalidInput: if `matrix` is singular.

    A zero pivot is repaired by adding the lowest-index row/column
    with a non-zero entry in the pivot row, with sign chosen so that
    the new pivot ``2 m_kj + m_jj`` (or ``-2 m_kj + m_jj``) is non-zero.

    """
    n = len(matrix)
    a = [list(row) for row in matrix]
    p = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def add_multiple(target, source, factor):
        for i in range(n):
            a[i][target] = a[i][target] + factor * a[i][source]
        for j in range(n):
            a[target][j] = a[target][j] + factor * a[source][j]
        for i in range(n):
            p[i][target] = p[i][target] + factor * p[i][source]

    for k in range(n):
        if a[k][k] == zero:
            partner = next((j for j in range(k + 1, n) if a[k][j] != zero),
                           None)
            if partner is None:
                raise errors.InvalidInput('matrix is singular')
            if 2 * a[k][partner] + a[partner][partner] != zero:
                add_multiple(k, partner, one)
            else:
                add_multiple(k, partner, -one)
        pivot = a[k][k]
        for j in range(k + 1, n):
            if a[j][k] != zero:
                add_multiple(j, k, -(a[j][k] / pivot))
    return p, a


def matrix_product(left, right, zero=0):
    """Product of two list-of-lists matrices over any ring."""
    columns = list(zip(*right))
    result = []
    for row in left:
        out = []
        for col in columns:
            total = zero
            for x, y in zip(row, col):
                total = total + x * y
            out.append(total)
        result.append(out)
    return result


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]
