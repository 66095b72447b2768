"""
Command line front end.

Every subcommand prints one JSON document on standard output, with an
``inputs`` block echoing the parsed command line.  Exit status is 0 on
success, 1 when a check or suite criterion fails, 2 for invalid input
and 3 when a bounded search could not decide.

"""
import argparse
import logging
import sys

import k3brauer
from k3brauer import (brauer, catalog, errors, hermite, lattice, rank2,
                      reporting, suite)


LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3


def _add_global_flags(parser, suppress=False):
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument('--json', action='store_true', default=default(True),
                        help='emit JSON (the only output format)')
    parser.add_argument('--bound', type=int, default=default(None),
                        help='oracle and enumeration bound')
    parser.add_argument('--seed', type=int, default=default(None),
                        help='seed of the random acceptance instances')
    parser.add_argument('--tol', type=float, default=default(None),
                        help='tolerance of the numerical trigonal oracle')
    parser.add_argument('--verbose', action='store_true',
                        default=default(False), help='log at DEBUG level')
    parser.add_argument('--timings', action='store_true',
                        default=default(False),
                        help='include suite runtimes in the output')


#
# rank2
#

def _rank2_isom(args, options):
    verdict = rank2.lambda_isometric((args.b, args.c), (args.b, args.d),
                                     **options)
    status = (EXIT_INCONCLUSIVE
              if verdict.status == rank2.IsometryVerdict.INCONCLUSIVE
              else EXIT_OK)
    return verdict.to_json(), status


def _rank2_cone(args, options):
    params = rank2.Rank2Params(args.b, args.c)
    document = rank2.kahler_cone(params).to_json()
    document['params'] = params.to_json()
    return document, EXIT_OK


def _rank2_aut(args, options):
    params = rank2.Rank2Params(args.b, args.c)
    document = rank2.automorphisms(params).to_json()
    document['params'] = params.to_json()
    document['witnessed_isometries'] = len(rank2.enumerate_isometries(
        params.gram, params.gram, **options))
    return document, EXIT_OK


def _rank2_fm(args, options):
    return rank2.fm_partner_count(args.b, **options).to_json(), EXIT_OK


def _rank2_census(args, options):
    classes = rank2.gamma_class_census(args.b, **options)
    return {'b': args.b, 'classes': classes,
            'class_count': len(classes)}, EXIT_OK


def _rank2_jacobians(args, options):
    params = rank2.Rank2Params(args.b, args.c)
    return {'params': params.to_json(),
            'jacobians_isomorphic': rank2.jacobian_unique(params, **options)
            }, EXIT_OK


def _rank2_embed(args, options):
    embedding = rank2.standard_embedding(args.b, args.c,
                                         literal=not args.corrected)
    document = embedding.to_json()
    witness = lattice.disc_forms_isomorphic(
        lattice.discriminant_form(embedding.complement),
        lattice.discriminant_form(embedding.image).negate(), **options)
    document['complement_form_negated'] = witness is not None
    return document, EXIT_OK


#
# brauer
#

def _brauer_census(args, options):
    return brauer.brauer2_census(args.d, **options).to_json(), EXIT_OK


def _brauer_class(args, options):
    element = brauer.BrauerElement(args.d, args.a, args.lambda_bits)
    document = brauer.brauer2_class(element, verify=args.verify,
                                    **options).to_json()
    document['primitive_embedding'] = brauer.primitive_embedding_exists(
        element)
    return document, EXIT_OK


def _brauer_square(args, options):
    witness = brauer.square_solvable(args.d)
    return {'d': args.d, 'solvable': witness is not None,
            'witness': witness}, EXIT_OK


def _brauer_rank(args, options):
    inputs = brauer.BrauerRankInputs(args.b2, args.b0, args.rho)
    document = {'n': brauer.brauer_rank(inputs)}
    if args.b1 is not None:
        b2_x = brauer.double_cover_betti2(args.b2, args.b0, args.b1)
        document['b2_x'] = b2_x
        document['br2_rank'] = brauer.brauer2_rank(b2_x, args.rho)
    return document, EXIT_OK


def _brauer_zeros(args, options):
    target = catalog.parse_spec(args.lattice)
    form = brauer.f2_form_from_gram(target)
    return {'lattice': target.name, 'dimension': form.dimension,
            'zeros': brauer.count_f2_zeros(form, **options)}, EXIT_OK


#
# fib
#

def _quartic(args):
    coefficients = [part.strip() for part in args.coeffs.split(';')]
    if args.plain_coeffs:
        model = hermite.QuarticModel.from_plain(coefficients)
    else:
        model = hermite.QuarticModel(coefficients)
    if args.at is not None:
        model = model.specialize(args.at)
    return model


def _degree(poly):
    return None if poly.is_zero else int(poly.degree())


def _fib_jacobian(args, options):
    model = _quartic(args)
    jacobian = hermite.hermite_jacobian(model)
    document = jacobian.to_json()
    document.update({'model': model.to_json(),
                     'degrees': [_degree(jacobian.g2), _degree(jacobian.g3)],
                     'smooth': jacobian.is_smooth()})
    return document, EXIT_OK


def _fib_conic(args, options):
    model = _quartic(args)
    document = hermite.conic_matrix(model).to_json()
    document['model'] = model.to_json()
    return document, EXIT_OK


def _fib_resolvent(args, options):
    model = _quartic(args)
    jacobian, report = hermite.trigonal_resolvent(model, **options)
    document = report.to_json()
    document.update({'model': model.to_json(),
                     'jacobian': jacobian.to_json()})
    return document, EXIT_OK if report.passed else EXIT_FAILED


def _fib_diag(args, options):
    model = _quartic(args)
    result = hermite.diagonalize_symmetric(hermite.conic_ratfunc_matrix(model))
    document = result.to_json()
    document['symbol'] = [str(v) for v in hermite.quaternion_symbol(result)]
    document['model'] = model.to_json()
    return document, EXIT_OK


#
# lattice
#

def _lattice_disc(args, options):
    target = catalog.parse_spec(args.lattice)
    form = lattice.discriminant_form(target)
    return {'lattice': target.name, 'rank': target.rank,
            'determinant': target.determinant(),
            'signature': list(target.signature()),
            'even': target.is_even(),
            'invariant_factors': form.invariant_factors,
            'form': form.to_json()}, EXIT_OK


def _lattice_isotropic(args, options):
    target = catalog.parse_spec(args.lattice)
    subgroups = lattice.isotropic_subgroups(
        lattice.discriminant_form(target), **options)
    return {'lattice': target.name, 'count': len(subgroups),
            'subgroups': [s.to_json() for s in subgroups]}, EXIT_OK


#
# suite
#

def _suite(args, options):
    report = suite.run_suite(args.name, timings=args.timings, **options)
    return report.to_json(), EXIT_OK if report.passed else EXIT_FAILED


def build_parser():
    """
    The argument parser for every subcommand.

    Global flags are accepted before or after the subcommand.

    """
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)

    parser = argparse.ArgumentParser(
        prog='k3brauer',
        description='Lattices and Brauer classes of K3 surfaces.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(k3brauer.version))
    _add_global_flags(parser)
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    def leaf(group, name, handler, help_text):
        sub = group.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    def ints(sub, *names):
        for name in names:
            sub.add_argument('--' + name, type=int, required=True)

    group = commands.add_parser('rank2', help='the lattices Lambda_{b,c}')
    actions = group.add_subparsers(dest='action', metavar='action')
    actions.required = True
    ints(leaf(actions, 'isom', _rank2_isom, 'isometry of Lambda_{b,c}, '
              'Lambda_{b,d}'), 'b', 'c', 'd')
    ints(leaf(actions, 'cone', _rank2_cone, 'Kahler cone'), 'b', 'c')
    ints(leaf(actions, 'aut', _rank2_aut, 'automorphisms'), 'b', 'c')
    ints(leaf(actions, 'fm', _rank2_fm, 'Fourier-Mukai partners'), 'b')
    ints(leaf(actions, 'census', _rank2_census,
              'isometry classes of Gamma_{b,c}'), 'b')
    ints(leaf(actions, 'jacobians', _rank2_jacobians,
              'compare the relative Jacobians'), 'b', 'c')
    sub = leaf(actions, 'embed', _rank2_embed, 'embedding into U + U')
    ints(sub, 'b', 'c')
    sub.add_argument('--corrected', action='store_true',
                     help='use ((0,0),(c,1)) as the second vector')

    group = commands.add_parser('brauer', help='2-torsion Brauer classes')
    actions = group.add_subparsers(dest='action', metavar='action')
    actions.required = True
    ints(leaf(actions, 'census', _brauer_census, 'class census'), 'd')
    sub = leaf(actions, 'class', _brauer_class, 'classify one class')
    ints(sub, 'd', 'a')
    sub.add_argument('--lambda', dest='lambda_bits', required=True,
                     help='20 bits in the order U, U, E8(-1), E8(-1)')
    sub.add_argument('--verify', action='store_true',
                     help='rebuild the kernel lattice and compare')
    ints(leaf(actions, 'square', _brauer_square,
              'solve x^2 = 1 - 4d mod 16d'), 'd')
    sub = leaf(actions, 'rank', _brauer_rank, 'rank of the quotient')
    ints(sub, 'b2', 'b0', 'rho')
    sub.add_argument('--b1', type=int, help='first Betti number of C')
    sub = leaf(actions, 'zeros', _brauer_zeros, 'zeros of the F2 form')
    sub.add_argument('--lattice', required=True, help='e.g. LAMBDA_PRIME')

    group = commands.add_parser('fib', help='genus-one fibrations')
    actions = group.add_subparsers(dest='action', metavar='action')
    actions.required = True
    for name, handler, help_text in (
            ('jacobian', _fib_jacobian, 'Hermite invariants g2, g3'),
            ('conic', _fib_conic, 'conic bundle matrix'),
            ('resolvent', _fib_resolvent, 'numerical trigonal check'),
            ('diag', _fib_diag, 'diagonalise over Q(x)')):
        sub = leaf(actions, name, handler, help_text)
        sub.add_argument('--coeffs', required=True,
                         help='a0;a1;a2;a3;a4, each a polynomial in t')
        sub.add_argument('--plain-coeffs', action='store_true',
                         help='coefficients of the bare quartic')
        sub.add_argument('--at', help='rational value substituted for t')

    group = commands.add_parser('lattice', help='named lattices')
    actions = group.add_subparsers(dest='action', metavar='action')
    actions.required = True
    for name, handler, help_text in (
            ('disc', _lattice_disc, 'discriminant form'),
            ('isotropic', _lattice_isotropic, 'isotropic subgroups')):
        sub = leaf(actions, name, handler, help_text)
        sub.add_argument('--lattice', required=True,
                         help='e.g. LAMBDA_BC(2,0)')

    sub = leaf(commands, 'suite', _suite, 'acceptance suite')
    sub.add_argument('name', choices=suite.SUITES)

    return parser


def _options(args):
    return k3brauer.settings(oracle_bound=args.bound,
                             enumeration_bound=args.bound,
                             seed=args.seed, tol=args.tol)


def _inputs(args):
    return {key: value for key, value in sorted(vars(args).items())
            if key != 'handler'}


def main(argv=None, stream=None):
    """
    Run one command.

    :param list argv: arguments, :data:`sys.argv` by default.
    :param stream: where the JSON document goes, standard output by
        default.
    :returns: the exit status.
    :rtype: int

    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr)
    try:
        options = _options(args)
        document, status = args.handler(args, options)
    except errors.InvalidInput as error:
        LOGGER.error('invalid input: %s', error)
        document, status = {'error': str(error)}, EXIT_INVALID
    except errors.Inconclusive as error:
        LOGGER.warning('inconclusive: %s', error)
        document = {'verdict': rank2.IsometryVerdict.INCONCLUSIVE,
                    'reason': str(error), 'bound': error.bound}
        status = EXIT_INCONCLUSIVE
    except errors.InvariantViolation as error:
        LOGGER.error('check failed: %s', error)
        document, status = {'error': str(error)}, EXIT_FAILED
    document['inputs'] = _inputs(args)
    reporting.report(document, stream)
    return status
