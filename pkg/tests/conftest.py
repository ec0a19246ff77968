"""
Shared test fixtures for coxrel tests
"""

import os
import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from coxrel.catalog import affine_a, chain4
from coxrel.config import reset_settings
from coxrel.diagram import INFINITY, CoxeterMatrix, GenSet
from coxrel.racg import SimpleGraph, from_graph

FIXTURES = Path(__file__).parent / "fixtures"


def one_based(*indices: int) -> GenSet:
    """GenSet from the 1-based generator numbers used in the literature"""
    return GenSet.from_indices(i - 1 for i in indices)


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default settings, whatever the environment holds"""
    for name in ("LOG_LEVEL", "NUMERIC_TOLERANCE", "MAX_ORACLE_CORES", "MINIMAL_HYPERBOLIC_BOUND"):
        monkeypatch.delenv(f"COXREL_{name}", raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def chain4_7():
    """Seven generators, consecutive pairs of order 4, all others commuting"""
    return chain4(7)


@pytest.fixture
def chain4_7_family():
    """The four peripheral classes of chain4(7), as GenSets"""
    return [
        one_based(1, 2, 3, 5, 6, 7),
        one_based(2, 3, 4),
        one_based(3, 4, 5),
        one_based(4, 5, 6),
    ]


@pytest.fixture
def triangle():
    """The (3,3,3) triangle group, affine type Ã2"""
    return affine_a(2)


@pytest.fixture
def hyperbolic_triangle():
    """The (3,3,4) triangle group: minimal hyperbolic, every pair finite"""
    return CoxeterMatrix.from_edges(3, {(0, 1): 3, (1, 2): 3, (0, 2): 4})


@pytest.fixture
def infinite_dihedral():
    return CoxeterMatrix.from_edges(2, {(0, 1): INFINITY})


@pytest.fixture
def pentagon_graph():
    return SimpleGraph.cycle(5)


@pytest.fixture
def pentagon(pentagon_graph):
    """Right-angled pentagon reflection group"""
    return from_graph(pentagon_graph)


@pytest.fixture
def square_graph():
    """K_{2,2}: the 4-cycle, whose right-angled group is D∞ × D∞"""
    return SimpleGraph.complete_bipartite(2, 2)


@pytest.fixture
def k32_graph():
    """K_{3,2}: condition (ii) fails at the independent triple {1, 2, 3}"""
    return SimpleGraph.complete_bipartite(3, 2)
