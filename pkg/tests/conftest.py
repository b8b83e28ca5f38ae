import pytest

from graphenergy.graph import WeightedGraph, generate


@pytest.fixture
def k2():
    return WeightedGraph.with_degree_weight(2, [(0, 1)])


@pytest.fixture
def p3():
    return generate("path", 3)


@pytest.fixture
def c4():
    return generate("cycle", 4)


@pytest.fixture
def star4():
    return generate("star", 4)
