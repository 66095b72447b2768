"""
Censuses of 2-torsion Brauer classes.

The 2-torsion of ``Br(X)`` is ``Hom(T_X, Z/2)``, so classes are read
off ``T/2T``.  For a degree ``2d`` K3 surface with ``T = <-2d> + Lambda'``
a class is a pair ``(a, lambda)`` with ``a`` a bit and ``lambda`` in
``Lambda'/2Lambda' = F_2^20``; the isomorphism type of the kernel
lattice is governed by the F2 quadratic form ``x -> <x, x>/2 mod 2``.

"""
from fractions import Fraction
import logging

import numpy as np

from k3brauer import catalog, errors, lattice


LOGGER = logging.getLogger(__name__)

MAX_CENSUS_DIMENSION = 24
LAMBDA_PRIME_RANK = 20


class F2Form(object):

    """
    A quadratic form on ``F_2^n`` given by an upper-triangular bit matrix.

    :param list bits: ``n`` rows of ``n`` bits; entries below the
        diagonal are ignored.

    ``q(v) = sum_{i <= j} bits[i][j] v_i v_j`` and the polar form
    ``q(u + v) - q(u) - q(v)`` is the off-diagonal part symmetrised.

    """

    def __init__(self, bits):
        n = len(bits)
        if not n or any(len(row) != n for row in bits):
            raise errors.InvalidInput('F2 form needs a square bit matrix')
        self.bits = tuple(tuple(int(bits[i][j]) & 1 if j >= i else 0
                                for j in range(n)) for i in range(n))

    @property
    def dimension(self):
        return len(self.bits)

    def _masks(self):
        masks = []
        for i, row in enumerate(self.bits):
            mask = 0
            for j in range(i + 1, self.dimension):
                if row[j]:
                    mask |= 1 << j
            masks.append(mask)
        return masks

    def __call__(self, v):
        """``q(v)`` for a bit sequence or an integer bit mask."""
        if not isinstance(v, int):
            v = sum(1 << i for i, bit in enumerate(v) if int(bit) & 1)
        total = 0
        for i, mask in enumerate(self._masks()):
            if v >> i & 1:
                total ^= self.bits[i][i] ^ (bin(v & mask).count('1') & 1)
        return total

    def __repr__(self):
        return '<F2Form dimension={}>'.format(self.dimension)


def f2_form_from_gram(even_lattice):
    """
    The form ``v -> <v, v>/2 mod 2`` on ``L/2L``.

    :param k3brauer.lattice.GramLattice even_lattice:
    :rtype: F2Form
    :raises k3brauer.errors.InvalidInput: if the lattice is odd.

    """
    if not even_lattice.is_even():
        raise errors.InvalidInput('F2 form needs an even lattice')
    gram = even_lattice.gram
    n = even_lattice.rank
    bits = [[0] * n for _ in range(n)]
    for i in range(n):
        bits[i][i] = (gram[i, i] // 2) % 2
        for j in range(i + 1, n):
            bits[i][j] = gram[i, j] % 2
    return F2Form(bits)


def _parity(values):
    values = values ^ (values >> 16)
    values = values ^ (values >> 8)
    values = values ^ (values >> 4)
    values = values ^ (values >> 2)
    values = values ^ (values >> 1)
    return values & 1


def _chunk_values(form, masks, start, stop):
    vectors = np.arange(start, stop, dtype=np.uint32)
    values = np.zeros(vectors.shape, dtype=np.uint32)
    for i, mask in enumerate(masks):
        selected = (vectors >> np.uint32(i)) & np.uint32(1)
        cross = _parity(vectors & np.uint32(mask))
        values ^= selected & (cross ^ np.uint32(form.bits[i][i]))
    return values


def count_f2_zeros(form, census_chunk=1 << 16, **kwargs):
    """
    Count ``v`` in ``F_2^n`` with ``q(v) = 0``, zero vector included.

    :param F2Form form:
    :param int census_chunk: vectors evaluated per numpy batch.
    :rtype: int
    :raises k3brauer.errors.InvalidInput: above dimension 24.

    The space is swept in contiguous ranges of integer bit masks and
    the per-range counts are added.

    """
    n = form.dimension
    if n > MAX_CENSUS_DIMENSION:
        raise errors.InvalidInput(
            'refusing to enumerate F2^{} (limit {})'.format(
                n, MAX_CENSUS_DIMENSION))
    masks = form._masks()
    total = 1 << n
    zeros = 0
    for start in range(0, total, census_chunk):
        stop = min(start + census_chunk, total)
        values = _chunk_values(form, masks, start, stop)
        zeros += int(stop - start - int(values.sum()))
    LOGGER.debug('%d zeros of %r', zeros, form)
    return zeros


def gamma2_census(**kwargs):
    """
    Split the non-zero classes of ``Gamma/2Gamma`` by kernel type.

    A class ``gamma`` has kernel isometric to ``Gamma_{2,0}`` when
    ``<gamma, gamma>/2`` is even and to ``Gamma_{2,1}`` otherwise.

    :returns: ``{'gamma_2_0': ..., 'gamma_2_1': ...}``
    :rtype: dict

    """
    zeros = count_f2_zeros(f2_form_from_gram(catalog.lambda_prime()),
                           **kwargs)
    return {'gamma_2_0': zeros - 1,
            'gamma_2_1': (1 << LAMBDA_PRIME_RANK) - zeros}


class BrauerElement(object):

    """
    A 2-torsion Brauer class on a K3 of degree ``2d``.

    :param int d: ``h^2 = 2d``.
    :param int a_alpha: 0 or 1.
    :param lambda_alpha: 20 bits in the basis order ``U, U, E8(-1),
        E8(-1)`` of ``Lambda'``, or a 20 character 0/1 string.

    """

    def __init__(self, d, a_alpha, lambda_alpha):
        if int(d) < 1:
            raise errors.InvalidInput('d must be positive')
        if a_alpha not in (0, 1):
            raise errors.InvalidInput('a_alpha must be 0 or 1')
        if isinstance(lambda_alpha, str):
            if set(lambda_alpha) - set('01'):
                raise errors.InvalidInput(
                    'lambda must be a 0/1 string: {!r}'.format(lambda_alpha))
            lambda_alpha = [int(ch) for ch in lambda_alpha]
        bits = tuple(int(bit) for bit in lambda_alpha)
        if len(bits) != LAMBDA_PRIME_RANK or set(bits) - {0, 1}:
            raise errors.InvalidInput('lambda needs exactly 20 bits')
        self.d = int(d)
        self.a_alpha = int(a_alpha)
        self.lambda_alpha = bits

    def is_zero(self):
        return not self.a_alpha and not any(self.lambda_alpha)

    @property
    def bitstring(self):
        return ''.join(str(bit) for bit in self.lambda_alpha)

    def character(self):
        """
        The homomorphism ``T_{2d} -> Z/2`` of this class.

        It is ``a`` on the generator of ``<-2d>`` and ``<x, lambda>``
        on ``Lambda'``.
        """
        transcendental = catalog.transcendental(self.d)
        prime = catalog.lambda_prime()
        values = [self.a_alpha]
        for i in range(LAMBDA_PRIME_RANK):
            values.append(sum(g * bit for g, bit in
                              zip(prime.gram.row(i), self.lambda_alpha)))
        return lattice.Character(transcendental, 2, values)

    def to_json(self):
        return {'d': self.d, 'a': self.a_alpha, 'lambda': self.bitstring}

    def __repr__(self):
        return 'BrauerElement(d={}, a={}, lambda={})'.format(
            self.d, self.a_alpha, self.bitstring)


def _require_nonzero(element):
    if element.is_zero():
        raise errors.InvalidInput('the zero Brauer class has no kernel')


def lambda_parity(element):
    """``<lambda, lambda>/2 mod 2``, read from the F2 form of ``Lambda'``."""
    return f2_form_from_gram(catalog.lambda_prime())(element.lambda_alpha)


class Brauer2Class(object):

    """
    Classification record of a non-zero 2-torsion class.

    :param list shape: invariant factors of the kernel's discriminant
        group.
    :param str parity: ``even`` or ``odd`` for ``a = 1`` with ``d``
        odd, ``single`` for ``a = 1`` with ``d`` even, :data:`None`
        for ``a = 0``.

    """

    def __init__(self, element, shape, parity, verified=None):
        self.element = element
        self.shape = shape
        self.parity = parity
        self.verified = verified

    def to_json(self):
        document = {'element': self.element.to_json(),
                    'shape': self.shape, 'parity': self.parity}
        if self.verified is not None:
            document['verified'] = self.verified
        return document


def predicted_form(element):
    """
    The discriminant form of ``ker(alpha)`` predicted by the census.

    ``a = 0``: the form of ``<-2d> + U(2)`` when ``<lambda, lambda>/2``
    is even and of ``<-2d> + <2> + <-2>`` when it is odd; for odd ``d`` the
    two are isometric.  ``a = 1``: cyclic of
    order ``8d`` generated by ``(t* + lambda)/2`` with
    ``q = (-1 + 2d <lambda, lambda>) / 8d`` for the 0/1 lift of lambda.

    :rtype: k3brauer.lattice.DiscriminantForm

    """
    _require_nonzero(element)
    d = element.d
    if not element.a_alpha:
        if lambda_parity(element):
            return lattice.DiscriminantForm(
                [2 * d, 2, 2],
                [Fraction(-1, 2 * d), Fraction(1, 2), Fraction(3, 2)])
        return lattice.DiscriminantForm(
            [2 * d, 2, 2], [Fraction(-1, 2 * d), 0, 0],
            [[0, 0, 0], [0, 0, Fraction(1, 2)],
             [0, Fraction(1, 2), 0]])
    norm = catalog.lambda_prime().norm(element.lambda_alpha)
    return lattice.DiscriminantForm.cyclic(
        8 * d, Fraction(-1 + 2 * d * norm, 8 * d))


def verify_against_kernel(element, **kwargs):
    """
    Compare the prediction with ``discriminant_form(ker alpha)``.

    :returns: :data:`True` when the invariant factors agree and the
        forms are isometric.

    """
    kernel = lattice.kernel_sublattice(catalog.transcendental(element.d),
                                       element.character())
    computed = lattice.discriminant_form(kernel)
    expected = predicted_form(element)
    if computed.invariant_factors != expected.invariant_factors:
        return False
    return lattice.disc_forms_isomorphic(computed, expected,
                                         **kwargs) is not None


def brauer2_class(element, verify=False, **kwargs):
    """
    Classify a non-zero 2-torsion Brauer class.

    :param BrauerElement element:
    :param bool verify: also rebuild the kernel lattice and compare
        its discriminant form with the prediction.
    :rtype: Brauer2Class
    :raises k3brauer.errors.InvalidInput: for the zero class.
    :raises k3brauer.errors.InvariantViolation: if verification fails.

    """
    _require_nonzero(element)
    d = element.d
    if not element.a_alpha:
        shape = sorted([2, 2, 2 * d])
        parity = None
    else:
        shape = [8 * d]
        if d % 2:
            parity = 'odd' if lambda_parity(element) else 'even'
        else:
            parity = 'single'
    verified = None
    if verify:
        verified = verify_against_kernel(element, **kwargs)
        if not verified:
            raise errors.InvariantViolation(
                'kernel of {!r} does not match its prediction'.format(element))
    return Brauer2Class(element, shape, parity, verified)


class Brauer2Census(object):

    """Class sizes of the non-zero 2-torsion classes for one ``d``."""

    def __init__(self, d, counts):
        self.d = d
        self.counts = counts

    def as_tuple(self):
        keys = (('a0', 'a1_even', 'a1_odd') if self.d % 2
                else ('a0', 'a1'))
        return tuple(self.counts[key] for key in keys)

    @property
    def total(self):
        return sum(self.counts.values())

    def to_json(self):
        document = {'d': self.d, 'total': self.total}
        document.update(self.counts)
        return document


def brauer2_census(d, **kwargs):
    """
    Count non-zero 2-torsion classes by isomorphism type of the kernel.

    ``a = 0`` gives ``2^20 - 1`` classes.  For ``a = 1`` and ``d`` even
    all ``2^20`` classes are alike; for ``d`` odd they split by the
    parity of ``<lambda, lambda>/2``, counted exhaustively over
    ``F_2^20``.

    :rtype: Brauer2Census

    """
    if d < 1:
        raise errors.InvalidInput('d must be positive')
    space = 1 << LAMBDA_PRIME_RANK
    counts = {'a0': space - 1}
    if d % 2:
        even = count_f2_zeros(f2_form_from_gram(catalog.lambda_prime()),
                              **kwargs)
        counts['a1_even'] = even
        counts['a1_odd'] = space - even
    else:
        counts['a1'] = space
    return Brauer2Census(d, counts)


def square_solvable(d):
    """
    Smallest ``x`` in ``[0, 16d)`` with ``x^2 = 1 - 4d mod 16d``.

    :returns: the witness or :data:`None`.

    """
    if d < 1:
        raise errors.InvalidInput('d must be positive')
    modulus = 16 * d
    target = (1 - 4 * d) % modulus
    for x in range(modulus):
        if x * x % modulus == target:
            return x
    return None


def primitive_embedding_exists(element):
    """
    Does ``ker(alpha)`` embed primitively in the K3 lattice?

    Only for ``a = 1``, and then when ``d`` is even or ``lambda`` is in
    the even class.

    """
    _require_nonzero(element)
    if not element.a_alpha:
        return False
    if element.d % 2 == 0:
        return True
    return lambda_parity(element) == 0


class BrauerRankInputs(object):

    """
    Topological data of a K3 double cover ``X -> Y`` branched in ``C``.

    :param int b2_y: second Betti number of ``Y``.
    :param int b0_c: number of components of ``C``.
    :param int rho: Picard rank of ``X``.

    """

    def __init__(self, b2_y, b0_c, rho):
        if min(b2_y, b0_c) < 0 or rho < 1:
            raise errors.InvalidInput(
                'need b2(Y), b0(C) >= 0 and rho >= 1')
        self.b2_y = int(b2_y)
        self.b0_c = int(b0_c)
        self.rho = int(rho)

    def to_json(self):
        return {'b2': self.b2_y, 'b0': self.b0_c, 'rho': self.rho}


def brauer_rank(inputs):
    """
    Rank ``n`` of the quotient ``(Z/2)^n`` of ``Br(X)_2``.

    ``n = 2(1 + b2(Y) - b0(C)) - rho``.

    :param BrauerRankInputs inputs:
    :raises k3brauer.errors.InvalidInput: if ``n`` would be negative.

    """
    n = 2 * (1 + inputs.b2_y - inputs.b0_c) - inputs.rho
    if n < 0:
        raise errors.InvalidInput(
            'inputs give n = {}; not a K3 double cover'.format(n))
    return n


def double_cover_betti2(b2_y, b0_c, b1_c):
    """``b2(X) = 2(1 + b2(Y) - b0(C)) + b1(C)`` for a double cover."""
    return 2 * (1 + b2_y - b0_c) + b1_c


def brauer2_rank(b2_x, rho):
    """Rank of ``Br(X)_2`` over ``F_2``: ``b2(X) - rho``."""
    if rho > b2_x:
        raise errors.InvalidInput('rho exceeds b2')
    return b2_x - rho
