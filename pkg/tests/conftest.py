import os

import pytest
from hypothesis import HealthCheck, settings

from drg_mnhd import graphs, spectra

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# seed for the random-graph property checks
RANDOM_GRAPH_SEED = 20240611

FIXTURE_GRAPHS = {
    "hypercube3": lambda: graphs.hypercube(3),
    "johnson63": lambda: graphs.johnson(6, 3),
    "icosahedron": graphs.icosahedron,
    "cycle6": lambda: graphs.cycle(6),
    "complete4": lambda: graphs.complete(4),
}


@pytest.fixture(scope="session")
def fixture_graphs():
    return {name: make() for name, make in FIXTURE_GRAPHS.items()}


@pytest.fixture(scope="session")
def decomps(fixture_graphs):
    return {name: spectra.decompose_graph(g) for name, g in fixture_graphs.items()}
