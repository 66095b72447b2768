version_info = (0, 1, 0)
version = '.'.join(str(v) for v in version_info)

DEFAULT_SETTINGS = {
    'enumeration_bound': 10 ** 6,
    'oracle_bound': 10 ** 4,
    'seed': 0,
    'tol': 1e-8,
    'precision': 100,
    'census_chunk': 1 << 16,
}


def settings(**overrides):
    """
    Build a settings dictionary for the library.

    :keyword int enumeration_bound: largest finite group that the
        discriminant-form searches will enumerate.
    :keyword int oracle_bound: largest absolute matrix entry the
        GL(2,Z) isometry oracle considers.
    :keyword int seed: seed for the randomised acceptance suites.
    :keyword float tol: acceptance tolerance of the numerical
        trigonal oracle.
    :keyword int precision: working precision, in bits, of the
        numerical root finder.
    :keyword int census_chunk: number of F2 vectors evaluated per
        vectorised block during a census.
    :returns: a new :class:`dict` holding :data:`DEFAULT_SETTINGS`
        updated with `overrides`.
    :rtype: dict
    :raises k3brauer.errors.InvalidInput: if an unknown setting
        is named.

    The returned dictionary is meant to be passed down as keyword
    arguments, e.g. ``suite.run_suite('fast', **settings(seed=3))``.

    """
    from k3brauer import errors

    unknown = sorted(set(overrides) - set(DEFAULT_SETTINGS))
    if unknown:
        raise errors.InvalidInput(
            'unknown settings: {}'.format(', '.join(unknown)))
    merged = DEFAULT_SETTINGS.copy()
    merged.update((k, v) for k, v in overrides.items() if v is not None)
    return merged
