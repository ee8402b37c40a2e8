import pytest

from anyonrep.fock import LatticeConfig, build_basis


@pytest.fixture(scope="session")
def cfg21():
    return LatticeConfig(M=2, N=1, S=2, n_max=2, nu=0.3)


@pytest.fixture(scope="session")
def basis21(cfg21):
    return build_basis(cfg21)


@pytest.fixture(scope="session")
def cfg22():
    return LatticeConfig(M=2, N=2, S=2, n_max=2, nu=0.3)


@pytest.fixture(scope="session")
def basis22(cfg22):
    return build_basis(cfg22)
