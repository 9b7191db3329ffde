import random

import pytest

from psl2coset.ffield import make_field


@pytest.fixture(scope="session")
def f7():
    return make_field(7)


@pytest.fixture(scope="session")
def f13():
    return make_field(13)


@pytest.fixture(scope="session")
def f25():
    return make_field(5, 2)


@pytest.fixture(scope="session")
def f27():
    return make_field(3, 3)


@pytest.fixture(scope="session")
def f53():
    return make_field(53)


@pytest.fixture()
def rng():
    return random.Random(20260819)
