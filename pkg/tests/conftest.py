import os

import pytest

from quadgb.fields import make_field
from quadgb.groebner import load_ideal

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "quadgb", "data")


def data_path(name):
    return os.path.join(DATA, name)


@pytest.fixture
def F101():
    return make_field(101)


@pytest.fixture
def example():
    def load(name, p=101):
        return load_ideal(data_path(f"{name}.ideal"), p=p)
    return load
