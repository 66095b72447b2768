"""
Integer lattices and their discriminant forms.

A lattice here is ``Z^r`` together with a symmetric integer Gram
matrix.  Its discriminant group ``L*/L`` is read off the Smith normal
form of the Gram matrix; the generators ``V e_i / d_i`` come with
their rational lifts so that the quadratic form ``q(x) = <x, x> mod 2``
can always be recomputed from the lattice.

"""
from fractions import Fraction
import collections
import itertools
import logging

import sympy

from k3brauer import errors, exactnum


LOGGER = logging.getLogger(__name__)


class GramLattice(object):

    """
    An integer symmetric bilinear form on ``Z^r``.

    :param gram: an :class:`~k3brauer.exactnum.IntMatrix` or a list of
        rows.
    :param basis: optional rows expressing this lattice's basis in the
        coordinates of an ambient lattice (set by
        :func:`kernel_sublattice` and :func:`orthogonal_complement`).
    :param str name: optional label used in reports.
    :raises k3brauer.errors.InvalidInput: if the matrix is not
        symmetric.

    """

    def __init__(self, gram, basis=None, name=None):
        if not isinstance(gram, exactnum.IntMatrix):
            gram = exactnum.IntMatrix(gram)
        if not gram.is_symmetric():
            raise errors.InvalidInput('Gram matrix must be symmetric')
        self.gram = gram
        self.basis = (None if basis is None
                      else [tuple(int(x) for x in row) for row in basis])
        self.name = name

    @property
    def rank(self):
        return self.gram.rows

    def determinant(self):
        return self.gram.determinant()

    def is_nondegenerate(self):
        return self.determinant() != 0

    def is_even(self):
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    def inner(self, x, y):
        """Pairing of two coordinate vectors (integers or Fractions)."""
        total = 0
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.gram.row(i)
            total += xi * sum(g * yj for g, yj in zip(row, y))
        return total

    def norm(self, x):
        return self.inner(x, x)

    def direct_sum(self, *others):
        """Orthogonal direct sum, assembled block-diagonally."""
        blocks = [self.gram] + [other.gram for other in others]
        return GramLattice(exactnum.IntMatrix.block_diagonal(blocks))

    def scaled(self, factor):
        """The lattice ``L(n)`` with every pairing multiplied by `factor`."""
        return GramLattice([[factor * v for v in row]
                            for row in self.gram.to_lists()])

    def signature(self):
        """
        Signature ``(positive, negative)`` by exact congruence.

        :raises k3brauer.errors.DegenerateLattice: for a singular Gram.

        """
        matrix = [[Fraction(v) for v in row] for row in self.gram.to_lists()]
        try:
            _, diagonal = exactnum.congruence_diagonalize(
                matrix, Fraction(0), Fraction(1))
        except errors.InvalidInput:
            raise errors.DegenerateLattice('signature of a degenerate lattice')
        pivots = [diagonal[i][i] for i in range(self.rank)]
        return (sum(1 for p in pivots if p > 0),
                sum(1 for p in pivots if p < 0))

    def sublattice(self, basis):
        """Lattice spanned by integer `basis` rows, with induced Gram."""
        rows = exactnum.IntMatrix(basis)
        gram = rows * self.gram * rows.transpose()
        return GramLattice(gram, basis=rows.to_lists())

    def to_json(self):
        return {'rank': self.rank, 'gram': self.gram.to_lists()}

    def __eq__(self, other):
        if not isinstance(other, GramLattice):
            return NotImplemented
        return self.gram == other.gram

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        label = ' {}'.format(self.name) if self.name else ''
        return '<GramLattice{} rank={}>'.format(label, self.rank)


class DiscriminantForm(object):

    """
    A finite quadratic form ``q: A -> Q/2Z``.

    :param list orders: orders of the chosen generators (each > 1).
    :param list q_values: ``q`` of each generator, any exact rationals.
    :param list bilinear: optional square matrix of ``b(g_i, g_j)``
        values; off-diagonal entries default to 0 and the diagonal is
        always ``q(g_i) mod 1``.
    :param list lifts: optional rational lifts of the generators to
        ``L (x) Q``, kept for recomputation.

    Elements are integer tuples reduced modulo `orders`.

    """

    def __init__(self, orders, q_values, bilinear=None, lifts=None):
        if len(orders) != len(q_values):
            raise errors.InvalidInput('one q-value per generator required')
        if any(int(order) < 2 for order in orders):
            raise errors.InvalidInput('generator orders must exceed 1')
        self.orders = tuple(int(order) for order in orders)
        self.q_values = tuple(exactnum.QMod2Z(v) for v in q_values)
        k = len(self.orders)
        values = [[Fraction(0)] * k for _ in range(k)]
        if bilinear is not None:
            for i in range(k):
                for j in range(k):
                    values[i][j] = exactnum.mod1(bilinear[i][j])
        for i in range(k):
            values[i][i] = exactnum.mod1(self.q_values[i].value)
        self.bilinear_values = tuple(tuple(row) for row in values)
        self.lifts = lifts

    @classmethod
    def cyclic(cls, order, q_value):
        return cls([order], [q_value])

    @property
    def order(self):
        total = 1
        for value in self.orders:
            total *= value
        return total

    @property
    def invariant_factors(self):
        """Elementary-divisor chain ``d1 | d2 | ...`` of the group."""
        if not self.orders:
            return []
        return [d for d in exactnum.invariant_factors(
            exactnum.IntMatrix.diagonal(list(self.orders))) if d > 1]

    def is_cyclic(self):
        return len(self.invariant_factors) <= 1

    def zero(self):
        return (0,) * len(self.orders)

    def reduce(self, x):
        return tuple(int(v) % o for v, o in zip(x, self.orders))

    def add(self, x, y):
        return self.reduce(a + b for a, b in zip(x, y))

    def scale(self, k, x):
        return self.reduce(k * v for v in x)

    def elements(self):
        """All elements, in lexicographic order of coordinates."""
        return itertools.product(*[range(o) for o in self.orders])

    def element_order(self, x):
        result = 1
        for v, o in zip(x, self.orders):
            part = o // sympy.igcd(v % o, o)
            result = result * part // sympy.igcd(result, part)
        return int(result)

    def b(self, x, y):
        """Bilinear form with values in Q/Z, represented in ``[0, 1)``."""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    total += xi * yj * self.bilinear_values[i][j]
        return exactnum.mod1(total)

    def q(self, x):
        """Quadratic form value as a :class:`~k3brauer.exactnum.QMod2Z`."""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            total += xi * xi * self.q_values[i].value
            for j in range(i + 1, len(x)):
                if x[j]:
                    total += 2 * xi * x[j] * self.bilinear_values[i][j]
        return exactnum.QMod2Z(total)

    def negate(self):
        """The form ``-q`` on the same group."""
        return DiscriminantForm(
            self.orders, [-v.value for v in self.q_values],
            [[-v for v in row] for row in self.bilinear_values],
            lifts=self.lifts)

    def direct_sum(self, other):
        k, m = len(self.orders), len(other.orders)
        bilinear = [[Fraction(0)] * (k + m) for _ in range(k + m)]
        for i in range(k):
            for j in range(k):
                bilinear[i][j] = self.bilinear_values[i][j]
        for i in range(m):
            for j in range(m):
                bilinear[k + i][k + j] = other.bilinear_values[i][j]
        return DiscriminantForm(
            self.orders + other.orders,
            [v.value for v in self.q_values + other.q_values], bilinear)

    def subgroup_order(self, generators):
        """Order of the subgroup spanned by `generators`."""
        k = len(self.orders)
        if not k:
            return 1
        columns = [list(g) for g in generators]
        columns.extend([self.orders[i] if i == j else 0 for j in range(k)]
                       for i in range(k))
        relations = exactnum.IntMatrix(columns).transpose()
        index = 1
        for value in exactnum.invariant_factors(relations):
            index *= value
        return self.order // index

    def span(self, generators):
        """All elements of the subgroup spanned by `generators`."""
        members = {self.zero()}
        for g in generators:
            if g in members:
                continue
            multiples = []
            current = self.zero()
            while True:
                multiples.append(current)
                current = self.add(current, g)
                if current in members:
                    break
            members = {self.add(m, k) for m in members for k in multiples}
        return members

    def to_json(self):
        return {'orders': list(self.orders),
                'q': [str(v) for v in self.q_values]}

    def __repr__(self):
        return '<DiscriminantForm orders={} q={}>'.format(
            list(self.orders), [str(v) for v in self.q_values])


def discriminant_form(lattice):
    """
    Discriminant form of a nondegenerate lattice.

    :param GramLattice lattice:
    :rtype: DiscriminantForm
    :raises k3brauer.errors.DegenerateLattice: when ``det = 0``.

    For odd lattices the q-values are those of the stored lifts and are
    only meaningful modulo 1.

    """
    _, d, v = exactnum.smith_normal_form(lattice.gram)
    diagonal = [d[i, i] for i in range(lattice.rank)]
    if 0 in diagonal:
        raise errors.DegenerateLattice(
            'discriminant form of a degenerate lattice')
    lifts, orders = [], []
    for i, order in enumerate(diagonal):
        if order > 1:
            orders.append(order)
            lifts.append(tuple(Fraction(x, order) for x in v.column(i)))
    k = len(lifts)
    bilinear = [[lattice.inner(lifts[i], lifts[j]) for j in range(k)]
                for i in range(k)]
    form = DiscriminantForm(orders, [bilinear[i][i] for i in range(k)],
                            bilinear, lifts=lifts)
    LOGGER.debug('discriminant form of rank %d lattice: %r',
                 lattice.rank, form)
    return form


class Character(object):

    """
    A homomorphism ``L -> Z/nZ`` given by its values on the basis.

    :param GramLattice lattice:
    :param int modulus: ``n >= 2``.
    :param values: integers, reduced modulo `modulus`.

    """

    def __init__(self, lattice, modulus, values):
        if modulus < 2:
            raise errors.InvalidInput('character modulus must be >= 2')
        if len(values) != lattice.rank:
            raise errors.InvalidInput('one character value per basis vector')
        self.lattice = lattice
        self.modulus = int(modulus)
        self.values = tuple(int(v) % self.modulus for v in values)

    @classmethod
    def pairing_with(cls, lattice, vector, modulus):
        """The character ``x -> <x, vector> mod n``."""
        values = [sum(g * v for g, v in zip(lattice.gram.row(i), vector))
                  for i in range(lattice.rank)]
        return cls(lattice, modulus, values)

    def is_zero(self):
        return not any(self.values)

    def __call__(self, x):
        return sum(c * xi for c, xi in zip(self.values, x)) % self.modulus

    def __repr__(self):
        return '<Character mod {} {}>'.format(self.modulus, list(self.values))


def kernel_sublattice(lattice, character):
    """
    The sublattice ``ker(chi)``, Hermite-canonical.

    :param GramLattice lattice:
    :param Character character: must not vanish identically.
    :returns: the kernel with its basis (rows in `lattice` coordinates)
        and induced Gram matrix.
    :rtype: GramLattice
    :raises k3brauer.errors.InvalidInput: for the zero character.

    """
    if character.is_zero():
        raise errors.InvalidInput('kernel of the zero character')
    congruence = exactnum.IntMatrix(
        [list(character.values) + [character.modulus]])
    solutions = exactnum.integer_kernel(congruence)
    basis = exactnum.hermite_basis([s[:-1] for s in solutions])
    kernel = lattice.sublattice(basis)
    LOGGER.debug('kernel of %r has det %d', character, kernel.determinant())
    return kernel


def orthogonal_complement(ambient, sub_basis):
    """
    Primitive orthogonal complement of a sublattice.

    :param GramLattice ambient:
    :param list sub_basis: integer vectors spanning the sublattice.
    :rtype: GramLattice
    :raises k3brauer.errors.InvalidInput: if `sub_basis` is dependent.

    """
    rows = exactnum.IntMatrix(sub_basis)
    if exactnum.matrix_rank(rows) != rows.rows:
        raise errors.InvalidInput('sub-basis vectors are dependent')
    pairing = rows * ambient.gram
    basis = exactnum.hermite_basis(exactnum.integer_kernel(pairing))
    if not basis:
        raise errors.InvalidInput('orthogonal complement is zero')
    return ambient.sublattice(basis)


class IsotropicSubgroup(object):

    """
    A subgroup of a discriminant group on which ``q`` vanishes.

    :param list generators: a reduced generating list.
    :param frozenset elements: all members.
    :param bool maximal: not contained in a larger isotropic subgroup.

    """

    def __init__(self, generators, elements, maximal):
        self.generators = generators
        self.elements = elements
        self.maximal = maximal

    @property
    def order(self):
        return len(self.elements)

    def to_json(self):
        return {'generators': [list(g) for g in self.generators],
                'order': self.order, 'maximal': self.maximal}

    def __repr__(self):
        return '<IsotropicSubgroup order={} generators={}>'.format(
            self.order, self.generators)


def _check_bound(form, bound):
    if form.order > bound:
        raise errors.Inconclusive(
            'group of order {} exceeds enumeration bound {}'.format(
                form.order, bound), bound=bound)


def isotropic_subgroups(form, enumeration_bound=10 ** 6, **kwargs):
    """
    Every nontrivial isotropic subgroup of `form`.

    :param DiscriminantForm form:
    :param int enumeration_bound: largest group order enumerated.
    :returns: subgroups sorted by order and then by elements.
    :rtype: list
    :raises k3brauer.errors.Inconclusive: if the group is too large.

    Subgroups are grown one isotropic element at a time from the
    trivial one, so each is visited once per distinct member set.

    """
    _check_bound(form, enumeration_bound)
    zero = form.zero()
    isotropic = [x for x in form.elements()
                 if x != zero and form.q(x).is_zero()]
    LOGGER.debug('%d isotropic elements in group of order %d',
                 len(isotropic), form.order)
    seen = {frozenset([zero]): []}
    queue = collections.deque([frozenset([zero])])
    children = collections.defaultdict(int)
    while queue:
        members = queue.popleft()
        generators = seen[members]
        for x in isotropic:
            if x in members:
                continue
            if any(form.b(x, g) != 0 for g in generators):
                continue
            grown = frozenset(form.span(generators + [x]))
            children[members] += 1
            if grown not in seen:
                seen[grown] = generators + [x]
                queue.append(grown)
    result = []
    for members, generators in seen.items():
        if len(members) == 1:
            continue
        result.append(IsotropicSubgroup(
            _reduced_generators(form, members), members,
            children[members] == 0))
    result.sort(key=lambda s: (s.order, sorted(s.elements)))
    return result


def _reduced_generators(form, members):
    generators, spanned = [], {form.zero()}
    for x in sorted(members):
        if x not in spanned:
            generators.append(x)
            spanned = form.span(generators)
    return generators


class FormIsomorphism(object):

    """
    An isometry between two discriminant forms.

    :param list images: image of each source generator.
    :param int multiplier: for cyclic forms, the unit ``a`` with
        ``q1(a g1) = q2(g2)``.

    """

    def __init__(self, source, target, images, multiplier=None):
        self.source = source
        self.target = target
        self.images = [tuple(image) for image in images]
        self.multiplier = multiplier

    def __call__(self, x):
        result = self.target.zero()
        for coefficient, image in zip(x, self.images):
            result = self.target.add(result,
                                     self.target.scale(coefficient, image))
        return result

    def to_json(self):
        document = {'images': [list(image) for image in self.images]}
        if self.multiplier is not None:
            document['multiplier'] = self.multiplier
        return document


def disc_forms_isomorphic(first, second, enumeration_bound=10 ** 6,
                          **kwargs):
    """
    Search for an isometry ``first -> second``.

    :param DiscriminantForm first:
    :param DiscriminantForm second:
    :param int enumeration_bound: largest group order searched.
    :returns: a :class:`FormIsomorphism`, or :data:`None` when the
        exhaustive search proves there is none.
    :raises k3brauer.errors.Inconclusive: if the groups are too large.

    """
    if first.invariant_factors != second.invariant_factors:
        return None
    _check_bound(first, enumeration_bound)
    if not first.orders:
        return FormIsomorphism(first, second, [])
    if len(first.orders) == 1 and len(second.orders) == 1:
        return _cyclic_isomorphism(first, second)
    return _general_isomorphism(first, second)


def _cyclic_isomorphism(first, second):
    n = first.orders[0]
    target = second.q((1,))
    for a in range(1, n):
        if sympy.igcd(a, n) != 1:
            continue
        if first.q((a,)) == target:
            inverse = int(sympy.mod_inverse(a, n))
            return FormIsomorphism(first, second, [(inverse,)], multiplier=a)
    return None


def _general_isomorphism(first, second):
    candidates = collections.defaultdict(list)
    for y in second.elements():
        candidates[second.element_order(y)].append(y)
    k = len(first.orders)
    generators = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    images = []

    def extend(i):
        if i == k:
            return second.subgroup_order(images) == second.order
        g = generators[i]
        for y in candidates[first.orders[i]]:
            if second.q(y) != first.q(g):
                continue
            if any(second.b(y, images[j]) != first.b(g, generators[j])
                   for j in range(i)):
                continue
            images.append(y)
            if extend(i + 1):
                return True
            images.pop()
        return False

    if extend(0):
        return FormIsomorphism(first, second, list(images))
    return None
