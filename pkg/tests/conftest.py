import pytest

from tcover.constructions import four_square_example, pentagon_example


@pytest.fixture(scope="session")
def pentagon():
    return pentagon_example()


@pytest.fixture(scope="session")
def four_square():
    return four_square_example()
