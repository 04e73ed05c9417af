import pytest

from dqc import validate_prime


@pytest.fixture(scope="session")
def f3():
    return validate_prime(3)


@pytest.fixture(scope="session")
def f7():
    return validate_prime(7)


@pytest.fixture(scope="session")
def f11():
    return validate_prime(11)


@pytest.fixture(scope="session")
def f19():
    return validate_prime(19)
