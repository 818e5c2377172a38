import pytest

from abelpencil.exact.poly import MultiPoly
from abelpencil.derham import all_connection_matrices, validate_pencil

x = MultiPoly.var("x")
t = MultiPoly.var("t")
t1 = MultiPoly.var("t1")
t2 = MultiPoly.var("t2")


@pytest.fixture(scope="session")
def iso_pencil():
    return validate_pencil(x ** 3 - t)


@pytest.fixture(scope="session")
def iso_mats(iso_pencil):
    return all_connection_matrices(iso_pencil)


@pytest.fixture(scope="session")
def legendre_pencil():
    return validate_pencil(x * (x - 1) * (x - t))


@pytest.fixture(scope="session")
def legendre_mats(legendre_pencil):
    return all_connection_matrices(legendre_pencil)


@pytest.fixture(scope="session")
def constant_pencil():
    return validate_pencil(x ** 3 - 1, params=("t",))


@pytest.fixture(scope="session")
def constant_mats(constant_pencil):
    return all_connection_matrices(constant_pencil)


@pytest.fixture(scope="session")
def genus2_pencil():
    return validate_pencil(x * (x - 1) * (x - 2) * (x - 3) * (x - t))


@pytest.fixture(scope="session")
def genus2_mats(genus2_pencil):
    return all_connection_matrices(genus2_pencil)


@pytest.fixture(scope="session")
def genus2_two_param_pencil():
    return validate_pencil(x * (x - 1) * (x - 2) * (x - t1) * (x - t2))


@pytest.fixture(scope="session")
def genus2_two_param_mats(genus2_two_param_pencil):
    return all_connection_matrices(genus2_two_param_pencil)
