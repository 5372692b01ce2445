import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import all_graphs_up_to  # noqa: E402

from planecover.graphs import is_connected  # noqa: E402
from planecover.search import search_k4_fragments  # noqa: E402


@pytest.fixture(scope="session")
def fragment_certificate():
    """The full fold 1..5 fragment search, shared across tests."""
    return search_k4_fragments(5)


@pytest.fixture(scope="session")
def graph_corpus():
    """All graphs on up to 7 vertices (one per isomorphism class)."""
    return all_graphs_up_to(7)


@pytest.fixture(scope="session")
def connected_corpus(graph_corpus):
    return [g for graphs in graph_corpus.values() for g in graphs if is_connected(g)]
