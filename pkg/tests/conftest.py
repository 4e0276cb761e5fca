import random

import pytest

from duelsweep.encoding import get_scheme
from duelsweep.instances import random_string, symbols


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=["exact", "param", "cartesian"])
def scheme(request):
    return get_scheme(request.param)


def sample_for(scheme, alphabet=4):
    sigma = symbols(scheme.name, alphabet)
    return lambda rng, n: random_string(rng, sigma, n)
