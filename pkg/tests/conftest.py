import numpy as np
import pytest

from modules.design import SncDesign, builtin
from modules.gf import field_new


@pytest.fixture
def gf2():
    return field_new(1)


@pytest.fixture
def gf4():
    return field_new(2)


@pytest.fixture
def gf256():
    return field_new(8)


@pytest.fixture
def table3() -> SncDesign:
    return builtin("table3")


@pytest.fixture
def simple3() -> SncDesign:
    return builtin("simple:3")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)
