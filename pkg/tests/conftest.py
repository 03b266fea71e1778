import pytest
from hypothesis import settings

from schnyder.fixtures import load
from schnyder.generators import grid_map

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def fig5():
    return load("fig5").map


@pytest.fixture(scope="session")
def fig15():
    return load("fig15").map


@pytest.fixture(scope="session")
def grid33():
    return grid_map(3, 3)
