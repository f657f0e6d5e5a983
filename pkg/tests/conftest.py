"""Shared fixtures: canonical multi-domain configurations and rational test functions.

Config A: two unit disks centered at -2 and 2 (both maps affine).
Config B: a quadratic perturbation of the left disk, a shrunk right disk.
Config C: three affine disks centered at -4, 4, 4i.
"""

import pytest

from faberkit import ConformalMapSpec, MultiDomainConfig, RationalFn, evaluate_map


@pytest.fixture(scope="session")
def config_a():
    return MultiDomainConfig(
        maps=(ConformalMapSpec(center=-2.0, coeffs=(1.0,)),
              ConformalMapSpec(center=2.0, coeffs=(1.0,)))
    )


@pytest.fixture(scope="session")
def config_b():
    return MultiDomainConfig(
        maps=(ConformalMapSpec(center=-2.0, coeffs=(1.0, 0.1)),
              ConformalMapSpec(center=2.0, coeffs=(0.8,)))
    )


@pytest.fixture(scope="session")
def config_c():
    return MultiDomainConfig(
        maps=(ConformalMapSpec(center=-4.0, coeffs=(1.0,)),
              ConformalMapSpec(center=4.0, coeffs=(1.0,)),
              ConformalMapSpec(center=4j, coeffs=(1.0,)))
    )


@pytest.fixture(scope="session")
def single_affine():
    # f(w) = 2 + 0.8 w, the right disk of config B on its own
    return MultiDomainConfig(maps=(ConformalMapSpec(center=2.0, coeffs=(0.8,)),))


@pytest.fixture(scope="session")
def single_poly():
    # one non-affine region, f(w) = -2 + w + 0.1 w^2
    return MultiDomainConfig(maps=(ConformalMapSpec(center=-2.0, coeffs=(1.0, 0.1)),))


def rational_fixtures(config):
    """Rational functions with all poles strictly inside the regions of config.

    Pole locations are taken as f_j(w0) for |w0| <= 0.45 so membership is
    guaranteed by construction rather than by eyeballing coordinates.
    """
    fns = []
    for j, spec in enumerate(config.maps):
        p1 = complex(evaluate_map(spec, 0.3))
        p2 = complex(evaluate_map(spec, -0.35 + 0.2j))
        fns.append(RationalFn.single(p1, 1, 1.0))
        fns.append(RationalFn.single(p2, 2, 0.5 + 0.25j))
        fns.append(RationalFn(terms=((p1, 1, 0.7), (p2, 1, -0.4j))))
    # one function spanning every region at once
    cross = []
    for spec in config.maps:
        cross.append((complex(evaluate_map(spec, 0.25j)), 1, 1.0))
    fns.append(RationalFn(terms=tuple(cross)))
    return fns
