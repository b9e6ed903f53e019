import numpy as np
import pytest

from torus_euler import Grid, classify_eigenspace, preset_basis


@pytest.fixture(scope="session")
def hex_basis():
    return preset_basis("hexagonal")


@pytest.fixture(scope="session")
def hex_info(hex_basis):
    return classify_eigenspace(hex_basis)


@pytest.fixture(scope="session")
def square_basis():
    return preset_basis("square")


@pytest.fixture(scope="session")
def square_info(square_basis):
    return classify_eigenspace(square_basis)


@pytest.fixture(scope="session")
def rect_basis():
    return preset_basis("rectangular:3.0")


@pytest.fixture(scope="session")
def rect_info(rect_basis):
    return classify_eigenspace(rect_basis)


@pytest.fixture(scope="session")
def hex_grid(hex_basis):
    return Grid(hex_basis, 64, 64)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
