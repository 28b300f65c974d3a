"""Shared oracle builders, cached so the sweeps reuse complexes."""

from functools import lru_cache

import pytest

from cyclehom.complexes import build
from cyclehom.graphs import cycle, path
from cyclehom.homology import analyze_components


def even_cycle(k):
    """C_k as a source graph; C_2 degenerates to the single edge L_2."""
    return path(2) if k == 2 else cycle(k)


@lru_cache(maxsize=None)
def cycle_complex(m, n):
    return build(even_cycle(m), cycle(n))


@lru_cache(maxsize=None)
def path_complex(m, n):
    return build(even_cycle(m), path(n))


@lru_cache(maxsize=None)
def component_reports(m, n):
    return analyze_components(cycle_complex(m, n).all_cells())


@lru_cache(maxsize=None)
def path_component_reports(m, n):
    return analyze_components(path_complex(m, n).all_cells())


def vertex_tuple(cell):
    """The value tuple of a 0-cell."""
    return tuple(e[0] for e in cell.entries())


@pytest.fixture
def c9c3():
    return cycle_complex(9, 3)
