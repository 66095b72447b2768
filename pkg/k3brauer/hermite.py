"""
Genus-one fibrations in quartic form and their Jacobians.

A double cover ``w^2 = a0 v^4 + 4 a1 v^3 + 6 a2 v^2 + 4 a3 v + a4`` with
coefficients in ``Q[t]`` has Jacobian ``y^2 = 4x^3 - g2 x - g3`` where
``g2`` and ``g3`` are the classical invariants of the binary quartic.
The symmetric matrix::

    [ -a0      -a1      2x - a2 ]
    [ -a1      -a2 - x  -a3     ]
    [ 2x - a2  -a3      -a4     ]

has determinant ``4x^3 - g2 x - g3``.  With the signs of the ``ai``
flipped the determinant would be ``4x^3 - g2 x + g3`` instead.
Diagonalising it over ``Q(x)``
yields the quaternion symbol of the associated conic bundle.

"""
from fractions import Fraction
import itertools
import logging

import mpmath
import sympy
from sympy.polys.domains import QQ

from k3brauer import catalog, errors, exactnum


LOGGER = logging.getLogger(__name__)

BINOMIALS = (1, 4, 6, 4, 1)
DOUBLE_QUADRIC_DEGREES = (4, 4, 4, 4, 4)
NODAL_SEXTIC_DEGREES = (2, 3, 4, 5, 6)

X = sympy.Symbol('x')
V = sympy.Symbol('v')


def _as_poly(value, gen):
    if isinstance(value, sympy.Poly):
        return value
    if isinstance(value, str):
        return exactnum.parse_poly(value, gen)
    if isinstance(value, (int, Fraction)):
        return exactnum.make_poly([value], gen)
    expr = sympy.sympify(value)
    symbols = sorted(expr.free_symbols, key=str)
    if not symbols:
        return exactnum.make_poly([exactnum.to_fraction(expr)], gen)
    return sympy.Poly(expr, *symbols, domain=QQ)


def _degree_in(poly, gen):
    if poly.is_zero:
        return -sympy.oo
    if gen in poly.gens:
        return poly.degree(gen)
    return 0


def _poly_text(poly):
    if len(poly.gens) == 1:
        return exactnum.format_poly(poly)
    return str(poly.as_expr())


class QuarticModel(object):

    """
    The coefficients ``a0 .. a4`` of a quartic genus-one model.

    :param coefficients: five values, each a :class:`sympy.Poly`, a
        rational, a sympy expression or a polynomial string in the
        comma format of :func:`k3brauer.exactnum.parse_poly`.
    :param degrees: optional upper bounds on ``deg a_i`` in the base
        variable.
    :param str symbol: the base variable, ``t`` by default.
    :raises k3brauer.errors.InvalidInput: if all coefficients vanish
        or a declared degree is exceeded.

    The binomial convention is built in: ``a1`` multiplies ``4 v^3``.
    Use :meth:`from_plain` for coefficients of the bare quartic.

    """

    def __init__(self, coefficients, degrees=None, symbol='t'):
        coefficients = list(coefficients)
        if len(coefficients) != 5:
            raise errors.InvalidInput('a quartic model has five coefficients')
        self.gen = sympy.Symbol(symbol) if isinstance(symbol, str) else symbol
        self.coefficients = tuple(_as_poly(c, self.gen) for c in coefficients)
        if all(p.is_zero for p in self.coefficients):
            raise errors.InvalidInput('all quartic coefficients vanish')
        self.degrees = None
        if degrees is not None:
            degrees = tuple(int(d) for d in degrees)
            if len(degrees) != 5:
                raise errors.InvalidInput('five declared degrees required')
            for i, (poly, bound) in enumerate(zip(self.coefficients,
                                                  degrees)):
                if _degree_in(poly, self.gen) > bound:
                    raise errors.InvalidInput(
                        'deg a{} exceeds declared degree {}'.format(i, bound))
            self.degrees = degrees

    @classmethod
    def from_plain(cls, coefficients, degrees=None, symbol='t'):
        """Model for ``w^2 = c0 v^4 + c1 v^3 + c2 v^2 + c3 v + c4``."""
        gen = sympy.Symbol(symbol)
        scaled = [_as_poly(c, gen) * sympy.Rational(1, k)
                  for c, k in zip(coefficients, BINOMIALS)]
        return cls(scaled, degrees, symbol)

    @classmethod
    def symbolic(cls):
        """Model whose coefficients are the indeterminates ``a0 .. a4``."""
        return cls(sympy.symbols('a0:5'))

    def is_constant(self):
        return all(p.is_zero or p.is_ground for p in self.coefficients)

    def constants(self):
        """The coefficients as Fractions; the model must be constant."""
        if not self.is_constant():
            raise errors.InvalidInput(
                'specialise the base variable before numerical work')
        return [exactnum.to_fraction(p.as_expr()) for p in self.coefficients]

    def specialize(self, point):
        """Substitute a rational value for the base variable."""
        value = exactnum._sympify_rational(point)
        return QuarticModel([p.as_expr().subs(self.gen, value)
                             for p in self.coefficients], symbol=self.gen)

    def binary_form(self):
        """``a0 v^4 + 4 a1 v^3 + 6 a2 v^2 + 4 a3 v + a4`` as an expression."""
        return sum(k * p.as_expr() * V ** (4 - i) for i, (k, p) in
                   enumerate(zip(BINOMIALS, self.coefficients)))

    def translated(self, shift):
        """
        The model of ``v -> v + shift``.

        :param shift: a rational or a sympy symbol.

        """
        if isinstance(shift, (int, Fraction, str)):
            shift = exactnum._sympify_rational(shift)
        expanded = sympy.Poly(sympy.expand(self.binary_form().subs(
            V, V + shift)), V)
        new = [expanded.nth(4 - i) / k for i, k in enumerate(BINOMIALS)]
        return QuarticModel(new, self.degrees, self.gen)

    def has_repeated_root(self):
        """Does the specialised binary quartic have a repeated root?"""
        constants = self.constants()
        if constants[0] == 0:
            raise errors.InvalidInput('a0 must be non-zero')
        quartic = sympy.Poly(self.binary_form(), V, domain=QQ)
        return quartic.discriminant() == 0

    def to_json(self):
        document = {'coeffs': [_poly_text(p) for p in self.coefficients]}
        if self.degrees is not None:
            document['degrees'] = list(self.degrees)
        return document

    def __repr__(self):
        return 'QuarticModel({})'.format(
            '; '.join(_poly_text(p) for p in self.coefficients))


class WeierstrassModel(object):

    """``y^2 = 4x^3 - g2 x - g3``."""

    def __init__(self, g2, g3):
        self.g2 = g2
        self.g3 = g3

    def cubic(self, x=X):
        return 4 * x ** 3 - self.g2.as_expr() * x - self.g3.as_expr()

    def discriminant(self):
        return self.g2 ** 3 - 27 * self.g3 ** 2

    def is_smooth(self):
        return not self.discriminant().is_zero

    def to_json(self):
        return {'g2': _poly_text(self.g2), 'g3': _poly_text(self.g3)}


def hermite_jacobian(model):
    """
    Hermite's invariants of a quartic model.

    ``g2 = a0 a4 - 4 a1 a3 + 3 a2^2`` and
    ``g3 = a0 a2 a4 - a0 a3^2 - a1^2 a4 + 2 a1 a2 a3 - a2^3``.

    :param QuarticModel model:
    :rtype: WeierstrassModel

    """
    a0, a1, a2, a3, a4 = model.coefficients
    g2 = a0 * a4 - 4 * a1 * a3 + 3 * a2 ** 2
    g3 = (a0 * a2 * a4 - a0 * a3 ** 2 - a1 ** 2 * a4 +
          2 * a1 * a2 * a3 - a2 ** 3)
    return WeierstrassModel(g2, g3)


def weierstrass_disc(model):
    """``g2^3 - 27 g3^2``; zero means every fibre is singular."""
    return model.discriminant()


class ConicMatrix(object):

    """
    The symmetric conic-bundle matrix of a quartic model.

    :param sympy.Matrix matrix: entries are expressions in ``x`` and
        the model's coefficients.
    :param WeierstrassModel jacobian:
    :param bool identity_verified: ``det M = 4x^3 - g2 x - g3`` was
        checked by exact expansion.

    """

    def __init__(self, matrix, jacobian, identity_verified):
        self.matrix = matrix
        self.jacobian = jacobian
        self.identity_verified = identity_verified

    def determinant(self):
        return sympy.expand(self.matrix.det(method='berkowitz'))

    def to_json(self):
        return {
            'matrix': [[str(self.matrix[i, j]) for j in range(3)]
                       for i in range(3)],
            'det': str(self.determinant()),
            'identity_verified': self.identity_verified,
        }


def conic_matrix(model):
    """
    Build ``M`` and check ``det M = 4x^3 - g2 x - g3``.

    :param QuarticModel model:
    :rtype: ConicMatrix
    :raises k3brauer.errors.InvariantViolation: if the identity fails.

    """
    a0, a1, a2, a3, a4 = [p.as_expr() for p in model.coefficients]
    matrix = sympy.Matrix([[-a0, -a1, 2 * X - a2],
                           [-a1, -a2 - X, -a3],
                           [2 * X - a2, -a3, -a4]])
    jacobian = hermite_jacobian(model)
    difference = sympy.expand(matrix.det(method='berkowitz') -
                              jacobian.cubic())
    if difference != 0:
        raise errors.InvariantViolation(
            'det M differs from 4x^3 - g2 x - g3 by {}'.format(difference))
    return ConicMatrix(matrix, jacobian, True)


def symbolic_identity():
    """Verify the determinant identity with ``a0 .. a4`` indeterminate."""
    return conic_matrix(QuarticModel.symbolic()).identity_verified


#
# Numerics of the trigonal curve
#

class FibrationNumerics(object):

    """
    Invariants of the trigonal curve ``C`` on ``F_{2d}``.

    ``g = 6d - 2``, ``chi(X) = 4 + 2g``, ``h0(theta) = 2d`` with
    ``theta = (2d - 1)F`` restricted to ``C`` an even theta
    characteristic.

    """

    def __init__(self, d):
        if d < 1:
            raise errors.InvalidInput('d must be at least 1')
        self.d = d
        self.genus = 6 * d - 2
        self.euler = 4 + 2 * self.genus
        self.theta_dim = 2 * d
        self.theta_parity = 'even'
        self.theta_degree = 3 * (2 * d - 1)
        self.canonical_degree = 2 * self.genus - 2
        self.b2 = self.euler - 2
        self.brauer2_rank = 2 * self.genus

    def to_json(self):
        return {
            'd': self.d, 'genus': self.genus, 'euler': self.euler,
            'theta_dim': self.theta_dim, 'theta_parity': self.theta_parity,
            'theta_degree': self.theta_degree,
            'canonical_degree': self.canonical_degree,
            'b2': self.b2, 'brauer2_rank': self.brauer2_rank,
        }


def fibration_numerics(d):
    return FibrationNumerics(d)


def adjunction_genus(d):
    """
    Genus of ``C = 3 C_inf + 6d F`` on ``F_{2d}`` by adjunction.

    Classes are written in the basis ``(F, C_inf)`` of
    :func:`k3brauer.catalog.ruled_surface`; ``K = -(2d + 2)F - 2 C_inf``.

    """
    if d < 1:
        raise errors.InvalidInput('d must be at least 1')
    surface = catalog.ruled_surface(2 * d)
    curve = (6 * d, 3)
    canonical = (-(2 * d + 2), -2)
    if surface.inner(curve, (0, 1)) != 0:
        raise errors.InvariantViolation('curve meets the negative section')
    twice_genus_minus_two = surface.inner(
        curve, tuple(c + k for c, k in zip(curve, canonical)))
    return twice_genus_minus_two // 2 + 1


class TrigonalReport(object):

    """
    Result of the numerical Lagrange-resolvent check.

    Complex values are kept as mpmath numbers; :meth:`to_json` writes
    them as ``[re, im]`` floats under a ``numerical`` key.

    """

    def __init__(self, quartic_roots, pairings, cubic_roots, alpha, beta,
                 permutation, residual, tol):
        self.quartic_roots = quartic_roots
        self.pairings = pairings
        self.cubic_roots = cubic_roots
        self.alpha = alpha
        self.beta = beta
        self.permutation = permutation
        self.residual = residual
        self.tol = tol

    @property
    def passed(self):
        return self.residual is not None and self.residual < self.tol

    def to_json(self):
        def pair(z):
            return [float(mpmath.re(z)), float(mpmath.im(z))]

        return {
            'passed': self.passed,
            'permutation': list(self.permutation or ()),
            'numerical': {
                'residual': (None if self.residual is None
                             else float(self.residual)),
                'tol': self.tol,
                'alpha': None if self.alpha is None else pair(self.alpha),
                'beta': None if self.beta is None else pair(self.beta),
                'quartic_roots': [pair(z) for z in self.quartic_roots],
                'pairings': [pair(z) for z in self.pairings],
                'cubic_roots': [pair(z) for z in self.cubic_roots],
            },
        }


def _mpf(value):
    value = exactnum.to_fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def _affine_fit(source, target):
    count = len(source)
    source_mean = sum(source) / count
    target_mean = sum(target) / count
    spread = sum(abs(s - source_mean) ** 2 for s in source)
    if spread == 0:
        return None
    alpha = sum(mpmath.conj(s - source_mean) * (t - target_mean)
                for s, t in zip(source, target)) / spread
    beta = target_mean - alpha * source_mean
    residual = max(abs(alpha * s + beta - t) for s, t in zip(source, target))
    return alpha, beta, residual


def trigonal_resolvent(model, tol=1e-8, precision=100, **kwargs):
    """
    The resolvent cubic of a specialised quartic and a numerical check.

    The four roots ``e_i`` of the quartic give three pairings
    ``e1 e2 + e3 e4``, ``e1 e3 + e2 e4``, ``e1 e4 + e2 e3``.  An affine
    map is fitted from the pairings to the roots of
    ``4x^3 - g2 x - g3`` for every matching of the two triples and the
    best residual is reported.

    :param QuarticModel model: constant coefficients with ``a0 != 0``.
    :param float tol: largest residual that counts as a pass.
    :param int precision: working precision in bits.
    :returns: ``(WeierstrassModel, TrigonalReport)``
    :raises k3brauer.errors.InvalidInput: for repeated roots.

    """
    a0, a1, a2, a3, a4 = model.constants()
    if model.has_repeated_root():
        raise errors.InvalidInput('quartic has a repeated root')
    jacobian = hermite_jacobian(model)
    g2 = exactnum.to_fraction(jacobian.g2.as_expr())
    g3 = exactnum.to_fraction(jacobian.g3.as_expr())
    with mpmath.mp.workprec(precision):
        try:
            roots = mpmath.polyroots(
                [_mpf(a0), 4 * _mpf(a1), 6 * _mpf(a2), 4 * _mpf(a3),
                 _mpf(a4)], maxsteps=200, extraprec=precision)
            cubic_roots = mpmath.polyroots(
                [4, 0, -_mpf(g2), -_mpf(g3)], maxsteps=200,
                extraprec=precision)
        except mpmath.NoConvergence:
            LOGGER.warning('root finding did not converge for %r', model)
            return jacobian, TrigonalReport([], [], [], None, None, None,
                                            None, tol)
        e1, e2, e3, e4 = roots
        pairings = [e1 * e2 + e3 * e4, e1 * e3 + e2 * e4, e1 * e4 + e2 * e3]
        best = None
        for permutation in itertools.permutations(range(3)):
            target = [cubic_roots[i] for i in permutation]
            fit = _affine_fit(pairings, target)
            if fit is not None and (best is None or fit[2] < best[0][2]):
                best = (fit, permutation)
    if best is None:
        return jacobian, TrigonalReport(roots, pairings, cubic_roots, None,
                                        None, None, None, tol)
    (alpha, beta, residual), permutation = best
    report = TrigonalReport(roots, pairings, cubic_roots, alpha, beta,
                            permutation, residual, tol)
    LOGGER.debug('trigonal fit residual %s (passed=%s)',
                 mpmath.nstr(residual, 5), report.passed)
    return jacobian, report


#
# Diagonalisation over Q(x)
#

def conic_ratfunc_matrix(model):
    """``M`` of a specialised model with entries in ``Q(x)``."""
    a0, a1, a2, a3, a4 = model.constants()

    def entry(constant, slope=0):
        return exactnum.RatFunc(exactnum.make_poly([constant, slope], X))

    return [[entry(-a0), entry(-a1), entry(-a2, 2)],
            [entry(-a1), entry(-a2, -1), entry(-a3)],
            [entry(-a2, 2), entry(-a3), entry(-a4)]]


class Diagonalization(object):

    """``transpose(P) M P = D`` over ``Q(x)``."""

    def __init__(self, matrix, transform, diagonal, verified):
        self.matrix = matrix
        self.transform = transform
        self.diagonal = diagonal
        self.verified = verified

    @property
    def entries(self):
        return [self.diagonal[i][i] for i in range(len(self.diagonal))]

    def to_json(self):
        return {
            'P': [[str(v) for v in row] for row in self.transform],
            'D': [str(v) for v in self.entries],
            'identity_verified': self.verified,
        }


def diagonalize_symmetric(matrix):
    """
    Congruence-diagonalise a symmetric matrix over ``Q(x)``.

    :param list matrix: rows of :class:`~k3brauer.exactnum.RatFunc`.
    :rtype: Diagonalization
    :raises k3brauer.errors.InvalidInput: if the matrix is singular or
        not symmetric.
    :raises k3brauer.errors.InvariantViolation: if ``P^t M P != D``.

    """
    n = len(matrix)
    if any(matrix[i][j] != matrix[j][i] for i in range(n) for j in range(n)):
        raise errors.InvalidInput('matrix is not symmetric')
    gen = matrix[0][0].gen
    zero = exactnum.RatFunc.constant(0, gen)
    one = exactnum.RatFunc.constant(1, gen)
    transform, diagonal = exactnum.congruence_diagonalize(matrix, zero, one)
    product = exactnum.matrix_product(
        exactnum.transpose(transform),
        exactnum.matrix_product(matrix, transform, zero), zero)
    verified = all(product[i][j] == diagonal[i][j]
                   for i in range(n) for j in range(n))
    if not verified or any(diagonal[i][j] != zero
                           for i in range(n) for j in range(n) if i != j):
        raise errors.InvariantViolation('congruence check failed')
    return Diagonalization(matrix, transform, diagonal, verified)


def quaternion_symbol(diagonal):
    """
    The symbol ``(-fg, -fh)`` of ``diag(f, g, h)``.

    :param diagonal: a :class:`Diagonalization`, a diagonal matrix or
        the triple ``(f, g, h)``.
    :raises k3brauer.errors.InvalidInput: for a zero diagonal entry.

    """
    if isinstance(diagonal, Diagonalization):
        f, g, h = diagonal.entries
    elif isinstance(diagonal[0], (list, tuple)):
        f, g, h = [diagonal[i][i] for i in range(3)]
    else:
        f, g, h = diagonal
    if any(value == 0 for value in (f, g, h)):
        raise errors.InvalidInput('diagonal entries must be non-zero')
    return -(f * g), -(f * h)


#
# Random instances
#

def random_rational(rng, numerator=10 ** 3, denominator=30):
    return Fraction(rng.randint(-numerator, numerator),
                    rng.randint(1, denominator))


def _random_poly(rng, degree, gen):
    values = [random_rational(rng) for _ in range(degree + 1)]
    while values[-1] == 0:
        values[-1] = random_rational(rng)
    return exactnum.make_poly(values, gen)


def random_quartic(rng, degrees=None, plain=False, symbol='t'):
    """
    A seeded generic quartic model.

    :param random.Random rng:
    :param degrees: exact degrees in the base variable, or :data:`None`
        for constant coefficients.
    :param bool plain: draw coefficients of the bare quartic and
        convert with :meth:`QuarticModel.from_plain`.

    """
    gen = sympy.Symbol(symbol)
    degrees_used = degrees or (0, 0, 0, 0, 0)
    polys = [_random_poly(rng, d, gen) for d in degrees_used]
    if plain:
        return QuarticModel.from_plain(polys, degrees, symbol)
    return QuarticModel(polys, degrees, symbol)


def random_smooth_quartic(rng, **kwargs):
    """A constant quartic model with ``a0 != 0`` and four distinct roots."""
    while True:
        model = random_quartic(rng, **kwargs)
        if model.constants()[0] != 0 and not model.has_repeated_root():
            return model


def random_pivot_quartic(rng):
    """A constant model with ``a0 = 0``, exercising the pivot repair."""
    values = [Fraction(0)] + [random_rational(rng) for _ in range(4)]
    if rng.random() < 0.5:
        values[1] = Fraction(0)
    return QuarticModel(values)
