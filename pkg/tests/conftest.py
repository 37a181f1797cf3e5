import pytest

from gacable import dim5, omega, roberts7


@pytest.fixture(scope="session")
def d5():
    return dim5.make()


@pytest.fixture(scope="session")
def om():
    return omega.OmegaContext(40)


@pytest.fixture(scope="session")
def omt():
    return omega.OmegaContext(40, with_t=True)


@pytest.fixture(scope="session")
def rob():
    return roberts7.make(2)
