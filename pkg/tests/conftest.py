import pytest

from bocskit.corpus import by_name


@pytest.fixture(scope="session")
def B5():
    return by_name("kupisch:[2,3]:cyclic")


@pytest.fixture(scope="session")
def A2():
    return by_name("kx:2")


@pytest.fixture(scope="session")
def T2():
    return by_name("kupisch:[2,1]:linear")


@pytest.fixture(scope="session")
def K():
    return by_name("kx:1")
