import numpy as np
import pytest

from fermicorr import exactfock
from fermicorr.model import KitaevParams, build_kitaev
from fermicorr.thermal import covariance, diagonalize


@pytest.fixture(scope="session")
def fock_ops_4():
    return exactfock.build_fock_operators(4)


@pytest.fixture(scope="session")
def fock_ops_6():
    return exactfock.build_fock_operators(6)


@pytest.fixture(scope="session")
def kitaev_state_6(fock_ops_6):
    """A generic L=6 Kitaev point with both the Gaussian covariance and the
    exact thermal density matrix."""
    params = KitaevParams.default_point(6, mu=0.8, alpha=2.0)
    beta = 0.7
    cov = covariance(diagonalize(build_kitaev(params)), beta)
    rho = exactfock.thermal_state(
        exactfock.kitaev_fock_hamiltonian(params, fock_ops_6), beta
    )
    return params, beta, cov, rho


def rng(seed: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed)
