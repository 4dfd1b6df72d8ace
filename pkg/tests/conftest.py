import numpy as np
import pytest

from bn_relax import EosParams, PrimitiveState


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)


def random_primitive(rng, n, alpha_range=(0.05, 0.95), rho_range=(0.2, 3.0),
                     u_range=(-1.0, 1.0), p_range=(0.2, 3.0)):
    """Admissible random states for ideal-gas phases."""
    return PrimitiveState(
        alpha1=rng.uniform(*alpha_range, n),
        rho1=rng.uniform(*rho_range, n), u1=rng.uniform(*u_range, n),
        p1=rng.uniform(*p_range, n),
        rho2=rng.uniform(*rho_range, n), u2=rng.uniform(*u_range, n),
        p2=rng.uniform(*p_range, n),
    )


@pytest.fixture(scope="session")
def ideal():
    return EosParams(gamma=1.4)


@pytest.fixture(scope="session")
def stiff():
    return EosParams(gamma=3.0, p_inf=100.0)
