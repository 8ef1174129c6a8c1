import pytest

from cpnets.fixtures import demo_net
from cpnets.oracle import build_graph


@pytest.fixture(scope="session")
def net():
    return demo_net()


@pytest.fixture(scope="session")
def graph(net):
    return build_graph(net)
