import pytest

from quiverext import load_fixture


@pytest.fixture(scope="session")
def f1():
    return load_fixture("f1")


@pytest.fixture(scope="session")
def f2():
    return load_fixture("f2")


@pytest.fixture(scope="session")
def f3():
    return load_fixture("f3")
