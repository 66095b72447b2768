"""
Rank-2 lattices ``Lambda_{b,c}`` and their transcendental partners.

``Lambda_{b,c}`` is ``Z^2`` with Gram ``(0, b, 2c)``; it is the
Neron-Severi lattice of a K3 surface with a genus-one fibration whose
fibre class is ``(1, 0)``.  ``Gamma_{b,c}`` adds ``U + E8(-1)^2``.
Everything in this module is indexed by the pair ``(b, c)``.

"""
import logging
import math

import sympy

from k3brauer import catalog, errors, lattice
from k3brauer.exactnum import IntMatrix


LOGGER = logging.getLogger(__name__)


class Rank2Params(object):

    """
    The canonical pair ``(b, c)``.

    :param int b: non-zero.
    :param int c: any integer.

    On construction ``b`` is made positive and ``c`` is reduced into
    ``[0, b)``, following ``Lambda_{b,c} = Lambda_{-b,c} =
    Lambda_{b,c-nb}``.

    """

    __slots__ = ('b', 'c')

    def __init__(self, b, c):
        b, c = int(b), int(c)
        if b == 0:
            raise errors.InvalidInput('b must be non-zero')
        self.b = abs(b)
        self.c = c % self.b

    @property
    def gram(self):
        return IntMatrix([[0, self.b], [self.b, 2 * self.c]])

    def lattice(self):
        return catalog.lambda_bc(self.b, self.c)

    def gamma(self):
        return catalog.gamma_bc(self.b, self.c)

    def to_json(self):
        return {'b': self.b, 'c': self.c}

    def __eq__(self, other):
        if not isinstance(other, Rank2Params):
            return NotImplemented
        return (self.b, self.c) == (other.b, other.c)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.b, self.c))

    def __repr__(self):
        return 'Rank2Params(b={}, c={})'.format(self.b, self.c)


def _as_params(value):
    if isinstance(value, Rank2Params):
        return value
    return Rank2Params(*value)


def _as_gram(value):
    if isinstance(value, lattice.GramLattice):
        return value.gram
    if isinstance(value, IntMatrix):
        return value
    return IntMatrix(value)


#
# GL(2, Z) oracle
#

def _primitive_completion(x, y):
    """A vector ``w`` with ``det [u w] = 1`` for primitive ``u = (x, y)``."""
    if y == 0:
        return 0, x
    p = pow(x, -1, abs(y)) if abs(y) > 1 else 0
    q = (1 - p * x) // y
    return -q, p


def _representations(gram, n, bound):
    """Primitive ``(x, y)`` with ``|x|, |y| <= bound`` and ``Q(x, y) = n``."""
    alpha, beta, gamma = gram[0, 0], gram[0, 1], gram[1, 1]
    found = set()
    if alpha == 0 and beta != 0:
        if n == 0:
            g = math.gcd(2 * beta, gamma)
            found.update([(1, 0), (-1, 0), (-gamma // g, 2 * beta // g),
                          (gamma // g, -2 * beta // g)])
        else:
            for divisor in sympy.divisors(abs(n)):
                for y in (divisor, -divisor):
                    rest = n // y - gamma * y
                    if rest % (2 * beta) == 0:
                        found.add((rest // (2 * beta), y))
    elif gamma == 0 and alpha != 0:
        swapped = IntMatrix([[0, beta], [beta, alpha]])
        found.update((y, x) for x, y in _representations(swapped, n, bound))
    else:
        for y in range(-bound, bound + 1):
            if alpha == 0:
                if gamma * y * y != n:
                    continue
                found.update((x, y) for x in range(-bound, bound + 1))
                continue
            quarter = (beta * beta - alpha * gamma) * y * y + alpha * n
            if quarter < 0:
                continue
            root = math.isqrt(quarter)
            if root * root != quarter:
                continue
            for signed in {root, -root}:
                numerator = -beta * y + signed
                if numerator % alpha == 0:
                    found.add((numerator // alpha, y))
    return sorted((x, y) for x, y in found
                  if max(abs(x), abs(y)) <= bound and math.gcd(x, y) == 1)


def _pair(gram, u, v):
    return (u[0] * (gram[0, 0] * v[0] + gram[0, 1] * v[1]) +
            u[1] * (gram[1, 0] * v[0] + gram[1, 1] * v[1]))


def _witness_key(matrix):
    entries = [v for row in matrix.to_lists() for v in row]
    return (max(abs(v) for v in entries),
            -(matrix[0, 0] + matrix[1, 1]), tuple(entries))


def enumerate_isometries(first, second, oracle_bound=10 ** 4, **kwargs):
    """
    Every ``A`` in GL(2, Z) with ``A^t G1 A = G2`` and small entries.

    :param first: Gram matrix ``G1`` (list, IntMatrix or GramLattice).
    :param second: Gram matrix ``G2``.
    :param int oracle_bound: largest absolute entry considered.
    :returns: witnesses ordered by maximal entry, then by descending
        trace, then row-major.
    :rtype: list

    """
    g1, g2 = _as_gram(first), _as_gram(second)
    if g1.shape != (2, 2) or g2.shape != (2, 2):
        raise errors.InvalidInput('the GL(2, Z) oracle needs 2 x 2 Grams')
    if not (g1.is_symmetric() and g2.is_symmetric()):
        raise errors.InvalidInput('Gram matrices must be symmetric')
    n, m, k = g2[0, 0], g2[0, 1], g2[1, 1]
    witnesses = set()
    for u in _representations(g1, n, oracle_bound):
        w0 = _primitive_completion(*u)
        cross, norm0 = _pair(g1, u, w0), _pair(g1, w0, w0)
        for sign in (1, -1):
            if n:
                if (m - sign * cross) % n:
                    continue
                shifts = [(m - sign * cross) // n]
            elif sign * cross != m:
                continue
            elif cross:
                if (k - norm0) % (2 * sign * cross):
                    continue
                shifts = [(k - norm0) // (2 * sign * cross)]
            else:
                shifts = [0]
            for t in shifts:
                w = (sign * w0[0] + t * u[0], sign * w0[1] + t * u[1])
                candidate = IntMatrix([[u[0], w[0]], [u[1], w[1]]])
                if max(abs(v) for v in w) > oracle_bound:
                    continue
                if candidate.transpose() * g1 * candidate == g2:
                    witnesses.add(candidate)
    result = sorted(witnesses, key=_witness_key)
    LOGGER.debug('%d GL(2,Z) witnesses up to %d', len(result), oracle_bound)
    return result


def gl2_isometry_oracle(first, second, oracle_bound=10 ** 4, **kwargs):
    """
    Smallest ``A`` in GL(2, Z) with ``A^t G1 A = G2``, if one is found.

    :returns: an :class:`~k3brauer.exactnum.IntMatrix` or :data:`None`
        when nothing exists with entries up to `oracle_bound`; a miss
        is not a proof of non-isometry.

    """
    witnesses = enumerate_isometries(first, second,
                                     oracle_bound=oracle_bound)
    return witnesses[0] if witnesses else None


#
# Classification
#

class IsometryVerdict(object):

    """Outcome of :func:`lambda_isometric`."""

    ISOMETRIC = 'isometric'
    NOT_ISOMETRIC = 'not_isometric'
    INCONCLUSIVE = 'inconclusive'

    def __init__(self, status, witness=None, reason=None):
        self.status = status
        self.witness = witness
        self.reason = reason

    def to_json(self):
        return {'verdict': self.status,
                'witness': (None if self.witness is None
                            else self.witness.to_lists()),
                'reason': self.reason}

    def __repr__(self):
        return '<IsometryVerdict {}>'.format(self.status)


def lambda_isometric(first, second, oracle_bound=10 ** 4,
                     enumeration_bound=10 ** 6, **kwargs):
    """
    Decide whether ``Lambda_{b,c}`` and ``Lambda_{b',d}`` are isometric.

    :param first: :class:`Rank2Params` or a ``(b, c)`` pair.
    :param second: :class:`Rank2Params` or a ``(b, d)`` pair.
    :rtype: IsometryVerdict

    When ``c`` or ``d`` is prime to ``b`` the answer is closed form:
    isometric iff ``c = d`` or ``cd = 1 mod b``, with the witness
    ``(-c, -e; b, d)`` where ``cd - be = 1``.  Otherwise discriminant
    forms rule out non-isometric pairs and the GL(2, Z) oracle looks
    for a witness; a miss is reported as inconclusive.

    """
    p, q = _as_params(first), _as_params(second)
    b, c, d = p.b, p.c, q.c
    if p.b != q.b:
        return IsometryVerdict(IsometryVerdict.NOT_ISOMETRIC,
                               reason='different determinants')
    if c == d:
        return IsometryVerdict(IsometryVerdict.ISOMETRIC,
                               IntMatrix.identity(2), reason='equal')
    if math.gcd(b, c) == 1 or math.gcd(b, d) == 1:
        if (c * d - 1) % b:
            return IsometryVerdict(IsometryVerdict.NOT_ISOMETRIC,
                                   reason='cd != 1 mod b')
        e = (c * d - 1) // b
        return IsometryVerdict(IsometryVerdict.ISOMETRIC,
                               IntMatrix([[-c, -e], [b, d]]),
                               reason='cd = 1 mod b')
    try:
        witness = lattice.disc_forms_isomorphic(
            lattice.discriminant_form(p.lattice()),
            lattice.discriminant_form(q.lattice()),
            enumeration_bound=enumeration_bound)
    except errors.Inconclusive as error:
        LOGGER.info('form comparison for %r, %r inconclusive: %s',
                    p, q, error)
        return IsometryVerdict(IsometryVerdict.INCONCLUSIVE,
                               reason=str(error))
    if witness is None:
        return IsometryVerdict(IsometryVerdict.NOT_ISOMETRIC,
                               reason='discriminant forms differ')
    found = gl2_isometry_oracle(p.gram, q.gram, oracle_bound=oracle_bound)
    if found is None:
        return IsometryVerdict(
            IsometryVerdict.INCONCLUSIVE,
            reason='no witness with entries up to {}'.format(oracle_bound))
    return IsometryVerdict(IsometryVerdict.ISOMETRIC, found,
                           reason='oracle witness')


def gamma_isometric(first, second, enumeration_bound=10 ** 6, **kwargs):
    """
    Is ``Gamma_{b,c}`` isometric to ``Gamma_{b,d}``?

    Both lattices are even, indefinite and of the same rank and
    signature, so isometry is decided by their discriminant forms,
    which are those of the rank-2 summands.

    :raises k3brauer.errors.Inconclusive: if the forms are too large
        to compare.

    """
    p, q = _as_params(first), _as_params(second)
    if p.b != q.b:
        return False
    return lattice.disc_forms_isomorphic(
        lattice.discriminant_form(p.lattice()),
        lattice.discriminant_form(q.lattice()),
        enumeration_bound=enumeration_bound) is not None


def gamma_class_census(b, **kwargs):
    """
    Partition ``{0, ..., b-1}`` into isometry classes of ``Gamma_{b,c}``.

    :param int b: an odd prime.
    :returns: classes as sorted lists, ordered by their least member.
    :raises k3brauer.errors.InvalidInput: unless `b` is an odd prime.

    """
    if b <= 2 or not sympy.isprime(b):
        raise errors.InvalidInput(
            'census needs an odd prime, got {}'.format(b))
    classes = []
    for c in range(b):
        for members in classes:
            if gamma_isometric((b, members[0]), (b, c), **kwargs):
                members.append(c)
                break
        else:
            classes.append([c])
    LOGGER.debug('Gamma census for b=%d: %r', b, classes)
    return classes


#
# Cones, fibrations, automorphisms
#

class ConeData(object):

    """
    The Kahler cone of a K3 surface with Neron-Severi ``Lambda_{b,c}``.

    :param list cone: integer covectors ``l`` with the cone ``l(v) > 0``.
    :param list neg2_curves: classes of the (-2)-curves.
    :param list fibrations: primitive isotropic classes of the
        genus-one fibrations.

    """

    def __init__(self, cone, neg2_curves, fibrations):
        self.cone = cone
        self.neg2_curves = neg2_curves
        self.fibrations = fibrations

    def contains_closure(self, v):
        return all(l[0] * v[0] + l[1] * v[1] >= 0 for l in self.cone)

    def to_json(self):
        return {'cone': [list(l) for l in self.cone],
                'neg2_curves': [list(v) for v in self.neg2_curves],
                'fibrations': [list(v) for v in self.fibrations]}


def _reduced_pair(p):
    g = math.gcd(p.b, p.c)
    return p.b // g, p.c // g


def fibration_classes(params):
    """
    Primitive isotropic classes that are fibre classes.

    ``(1, 0)`` always; ``(-c', b')`` with ``(b', c') = (b, c) / gcd``
    as well unless ``c = b - 1``, where the (-2)-curve cuts it off.

    """
    p = _as_params(params)
    if p.c == p.b - 1:
        return [(1, 0)]
    b_prime, c_prime = _reduced_pair(p)
    return [(1, 0), (-c_prime, b_prime)]


def kahler_cone(params):
    """
    Kahler cone and (-2)-curves for ``Lambda_{b,c}``.

    Solutions of ``v^2 = 2y(bx + cy) = -2`` have ``y = +-1`` and exist
    exactly when ``c = b - 1``; the effective one is ``N = (-1, 1)``
    and the cone is then cut by ``v . N = bx + (b - 2)y > 0``.

    :rtype: ConeData

    """
    p = _as_params(params)
    b, c = p.b, p.c
    curves = []
    for y in (1, -1):
        remainder = -y - c * y
        if remainder % b == 0:
            v = (remainder // b, y)
            if _pair(p.gram, v, v) != -2:
                raise errors.InvariantViolation('bad (-2)-class {}'.format(v))
            if y > 0:
                curves.append(v)
    if curves:
        cone = [(0, 1), (b, b - 2)]
    else:
        cone = [(0, 1), (b, c)]
    return ConeData(cone, curves, fibration_classes(p))


class AutResult(object):

    """
    Orthogonal group of ``Lambda_{b,c}`` and automorphisms of the K3.

    :param str orthogonal_group: ``PM_I`` or ``PM_I_AND_J``.
    :param str k3_automorphisms: ``TRIVIAL`` or ``Z2``.

    """

    PM_I = 'PM_I'
    PM_I_AND_J = 'PM_I_AND_J'
    TRIVIAL = 'TRIVIAL'
    Z2 = 'Z2'

    def __init__(self, orthogonal_group, k3_automorphisms):
        self.orthogonal_group = orthogonal_group
        self.k3_automorphisms = k3_automorphisms

    @property
    def orthogonal_order(self):
        return 4 if self.orthogonal_group == self.PM_I_AND_J else 2

    def to_json(self):
        return {'orthogonal_group': self.orthogonal_group,
                'orthogonal_order': self.orthogonal_order,
                'k3_automorphisms': self.k3_automorphisms}


def automorphisms(params):
    """
    Orthogonal group and K3 automorphism group for ``Lambda_{b,c}``.

    ``O(Lambda_{b,c}) = {+-I, +-J}`` iff ``c = 0`` or ``c'^2 = 1 mod b'``;
    the surface has the involution only for ``(1, 0)``, ``(2, 0)`` or
    ``c = 1`` with ``b > 2``.

    :rtype: AutResult

    """
    p = _as_params(params)
    b_prime, c_prime = _reduced_pair(p)
    if p.c == 0 or (c_prime * c_prime - 1) % b_prime == 0:
        group = AutResult.PM_I_AND_J
    else:
        group = AutResult.PM_I
    if (p.b, p.c) in ((1, 0), (2, 0)) or (p.b > 2 and p.c == 1):
        auts = AutResult.Z2
    else:
        auts = AutResult.TRIVIAL
    return AutResult(group, auts)


class FMPartnerCount(object):

    """Isometry classes among the candidates ``Lambda_{b,-a^2}``."""

    def __init__(self, b, classes):
        self.b = b
        self.classes = classes

    @property
    def class_count(self):
        return len(self.classes)

    @property
    def fibration_tally(self):
        return [len(members) for members in self.classes]

    def to_json(self):
        return {'b': self.b, 'classes': self.class_count,
                'members': self.classes,
                'fibration_tally': self.fibration_tally,
                'fibrations': sum(self.fibration_tally)}


def fm_partner_count(b, **kwargs):
    """
    Count Fourier-Mukai partners for a prime ``b = 1 mod 4``.

    The candidates are ``Lambda_{b,-a^2}`` for ``a = 1 .. (b-1)/2``;
    they are grouped with :func:`lambda_isometric`.  There are
    ``(b + 3) / 4`` classes and the class sizes add up to ``(b - 1) / 2``.

    :rtype: FMPartnerCount
    :raises k3brauer.errors.InvalidInput: unless `b` is such a prime.

    """
    if not sympy.isprime(b) or b % 4 != 1:
        raise errors.InvalidInput(
            'b must be a prime congruent to 1 mod 4, got {}'.format(b))
    classes = []
    for a in range(1, (b - 1) // 2 + 1):
        c = (-a * a) % b
        for members in classes:
            verdict = lambda_isometric((b, members[0]), (b, c), **kwargs)
            if verdict.status == IsometryVerdict.ISOMETRIC:
                members.append(c)
                break
        else:
            classes.append([c])
    return FMPartnerCount(b, classes)


def jacobian_unique(params, **kwargs):
    """
    Are the relative Jacobians of both fibrations isomorphic?

    True iff the discriminant form of ``Gamma_{b,c}`` has exactly one
    maximal isotropic subgroup of order ``b``.

    :raises k3brauer.errors.InvalidInput: unless ``gcd(b, 2c) = 1`` and
        ``c < b - 1``, or ``(b, c) = (2, 0)``.

    """
    p = _as_params(params)
    coprime = math.gcd(p.b, 2 * p.c) == 1 and p.c < p.b - 1
    if not (coprime or (p.b, p.c) == (2, 0)):
        raise errors.InvalidInput(
            'relative Jacobian comparison needs gcd(b, 2c) = 1 and '
            'c < b - 1, or (b, c) = (2, 0)')
    form = lattice.discriminant_form(p.gamma())
    subgroups = [s for s in lattice.isotropic_subgroups(form, **kwargs)
                 if s.maximal and s.order == p.b]
    LOGGER.debug('%d maximal isotropic subgroups of order %d',
                 len(subgroups), p.b)
    return len(subgroups) == 1


#
# Embeddings into U^2
#

class StandardEmbedding(object):

    """
    ``Lambda_{b,c}`` placed in ``U + U`` together with its complement.

    :param list vectors: images of the two basis vectors.
    :param GramLattice ambient: ``U + U``.

    """

    def __init__(self, vectors, ambient):
        self.vectors = vectors
        self.ambient = ambient
        self.image = ambient.sublattice(vectors)
        self.complement = lattice.orthogonal_complement(ambient, vectors)

    def to_json(self):
        return {'vectors': [list(v) for v in self.vectors],
                'image': self.image.to_json(),
                'complement': self.complement.to_json()}


def standard_embedding(b, c, literal=True):
    """
    Map the basis of ``Lambda_{b,c}`` to ``((1,0),(b,0))`` and a second
    vector in ``U + U``.

    :param bool literal: use ``((0,0),(2c,1))`` for the second vector,
        whose image is ``Lambda_{b,2c}`` with complement ``(0, -b, -4c)``;
        otherwise ``((0,0),(c,1))``, which embeds ``Lambda_{b,c}`` itself.
    :rtype: StandardEmbedding

    """
    p = Rank2Params(b, c)
    u = catalog.hyperbolic_plane()
    second = 2 * c if literal else c
    vectors = [(1, 0, p.b, 0), (0, 0, second, 1)]
    return StandardEmbedding(vectors, u.direct_sum(u))


def lambda_params_of(gram):
    """
    Recognise a rank-2 even lattice with an isotropic vector.

    :param gram: a 2 x 2 Gram matrix.
    :returns: :class:`Rank2Params` ``(b, c)`` with the lattice isometric
        to ``Lambda_{b,c}``.
    :raises k3brauer.errors.InvalidInput: for odd, degenerate or
        anisotropic input.

    """
    g = _as_gram(gram)
    if g.shape != (2, 2) or not g.is_symmetric():
        raise errors.InvalidInput('need a symmetric 2 x 2 Gram matrix')
    if g[0, 0] % 2 or g[1, 1] % 2:
        raise errors.InvalidInput('lattice is odd')
    alpha, beta, gamma = g[0, 0], g[0, 1], g[1, 1]
    minus_det = beta * beta - alpha * gamma
    if minus_det <= 0:
        raise errors.InvalidInput('lattice has no isotropic vector')
    root = math.isqrt(minus_det)
    if root * root != minus_det:
        raise errors.InvalidInput('lattice has no isotropic vector')
    if alpha == 0:
        u = (1, 0)
    else:
        x, y = -beta + root, alpha
        common = math.gcd(x, y)
        u = (x // common, y // common)
    w = _primitive_completion(*u)
    return Rank2Params(_pair(g, u, w), _pair(g, w, w) // 2)
