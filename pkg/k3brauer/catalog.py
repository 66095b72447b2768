"""
Named lattices.

Every lattice that appears in the K3 bookkeeping is registered here
under a name so that the command line and the acceptance suite can
refer to it.  New entries are added with :func:`add_lattice`.

"""
import re

from k3brauer import errors
from k3brauer.exactnum import IntMatrix
from k3brauer.lattice import GramLattice


_lattice_factories = {}

_SPEC_PATTERN = re.compile(r'^\s*([A-Za-z0-9_]+)\s*(?:\(([^)]*)\))?\s*$')


def get_lattice(name):
    """
    Retrieve a lattice factory by name.

    :param str name: registered name, case-insensitive.
    :returns: a callable accepting the lattice's integer parameters.
    :raises k3brauer.errors.InvalidInput: for unknown names.

    """
    try:
        return _lattice_factories[name.upper()]
    except KeyError:
        raise errors.InvalidInput(
            'unknown lattice {!r}, expected one of {}'.format(
                name, ', '.join(registered_names())))


def add_lattice(name, lattice_factory):
    """
    Register a new named lattice.

    :param str name: name of the lattice to register
    :param lattice_factory: function called with the lattice parameters
        that returns a :class:`~k3brauer.lattice.GramLattice`

    """
    _lattice_factories[name.upper()] = lattice_factory


def registered_names():
    return sorted(_lattice_factories)


def standard_lattice(name, *params):
    """
    Build a registered lattice.

    :param str name: for example ``'U'``, ``'LAMBDA_BC'``.
    :param params: integer parameters, e.g. ``b, c`` for ``LAMBDA_BC``.
    :rtype: k3brauer.lattice.GramLattice
    :raises k3brauer.errors.InvalidInput: for unknown names or
        invalid parameters.

    """
    factory = get_lattice(name)
    try:
        lattice = factory(*[int(p) for p in params])
    except TypeError:
        raise errors.InvalidInput('wrong parameters for {}: {}'.format(
            name, list(params)))
    if lattice.name is None:
        lattice.name = format_spec(name, params)
    return lattice


def format_spec(name, params):
    if not params:
        return name.upper()
    return '{}({})'.format(name.upper(), ','.join(str(p) for p in params))


def parse_spec(text):
    """
    Parse ``"NAME"`` or ``"NAME(p1,p2)"`` and build that lattice.

    :raises k3brauer.errors.InvalidInput: on malformed text.

    """
    match = _SPEC_PATTERN.match(text)
    if not match:
        raise errors.InvalidInput('malformed lattice name {!r}'.format(text))
    name, raw = match.groups()
    params = []
    if raw and raw.strip():
        try:
            params = [int(p) for p in raw.split(',')]
        except ValueError:
            raise errors.InvalidInput(
                'lattice parameters must be integers: {!r}'.format(text))
    return standard_lattice(name, *params)


def hyperbolic_plane(scale=1):
    if scale == 0:
        raise errors.InvalidInput('U(0) is degenerate')
    return GramLattice([[0, 1], [1, 0]]).scaled(scale)


_E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


def e8_minus_one():
    """The negative definite E8 root lattice, as minus its Cartan matrix."""
    entries = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        entries[i][j] = entries[j][i] = 1
    return GramLattice(entries)


def rank_one(n):
    if n == 0:
        raise errors.InvalidInput('<0> is degenerate')
    return GramLattice([[n]])


def lambda_prime():
    """``U^2 + E8(-1)^2``, rank 20."""
    u = hyperbolic_plane()
    e8 = e8_minus_one()
    return u.direct_sum(u, e8, e8)


def lambda_k3():
    """The K3 lattice ``U^3 + E8(-1)^2``, rank 22."""
    u = hyperbolic_plane()
    e8 = e8_minus_one()
    return u.direct_sum(u, u, e8, e8)


def lambda_bc(b, c):
    """Rank-2 lattice with Gram ``(0, b, 2c)``."""
    if b == 0:
        raise errors.InvalidInput('LAMBDA_BC needs b != 0')
    return GramLattice(IntMatrix([[0, b], [b, 2 * c]]))


def gamma_bc(b, c):
    """``Lambda_{b,c} + U + E8(-1)^2``, rank 20."""
    e8 = e8_minus_one()
    return lambda_bc(b, c).direct_sum(hyperbolic_plane(), e8, e8)


def transcendental(d):
    """``<-2d> + Lambda'``, the lattice ``h^perp`` for ``h^2 = 2d``."""
    if d < 1:
        raise errors.InvalidInput('polarisation degree must be positive')
    return rank_one(-2 * d).direct_sum(lambda_prime())


def ruled_surface(e):
    """Pic of the Hirzebruch surface ``F_e`` in the basis ``F, C_inf``."""
    if e < 0:
        raise errors.InvalidInput('Hirzebruch index must be >= 0')
    return GramLattice([[0, 1], [1, -e]])


def gamma_alpha(d):
    """``<-2d> + U(2) + U + E8(-1)^2``."""
    if d < 1:
        raise errors.InvalidInput('polarisation degree must be positive')
    e8 = e8_minus_one()
    return rank_one(-2 * d).direct_sum(
        hyperbolic_plane(2), hyperbolic_plane(), e8, e8)


add_lattice('U', hyperbolic_plane)
add_lattice('E8_MINUS_1', e8_minus_one)
add_lattice('RANK1', rank_one)
add_lattice('LAMBDA_PRIME', lambda_prime)
add_lattice('GAMMA', lambda_prime)
add_lattice('LAMBDA_K3', lambda_k3)
add_lattice('LAMBDA_BC', lambda_bc)
add_lattice('GAMMA_BC', gamma_bc)
add_lattice('T2D', transcendental)
add_lattice('RULED', ruled_surface)
add_lattice('GAMMA_ALPHA', gamma_alpha)
