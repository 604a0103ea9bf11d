import pytest

from ebelyi.belyi import compute_belyi
from ebelyi.triples import Triple


@pytest.fixture(scope="session")
def worked_cover():
    """Degree 4 cover in case (3,3,3) whose exact data is known by hand."""
    t = Triple((2, 0, 1, 3), (3, 1, 0, 2), (0, 2, 3, 1), (3, 3, 3))
    m = compute_belyi(t)
    m.verify()
    return m


@pytest.fixture(scope="session")
def torus_cover():
    """Degree 3 genus 1 cover: all three permutations the same 3-cycle."""
    rho = (1, 2, 0)
    m = compute_belyi(Triple(rho, rho, rho, (3, 3, 3)))
    m.verify()
    return m
