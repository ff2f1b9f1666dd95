from __future__ import annotations

import functools

import pytest

from revfactor.avoidance import AvoidanceSpec, build_by_intersection, build_direct

SMALL_SPECS = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2)]


@functools.lru_cache(maxsize=None)
def direct(k: int, ell: int):
    return build_direct(AvoidanceSpec(k, ell))


@functools.lru_cache(maxsize=None)
def intersect(k: int, ell: int):
    return build_by_intersection(AvoidanceSpec(k, ell))


def lang(k: int, ell: int):
    return direct(k, ell)[0]


@pytest.fixture(scope="session")
def l26():
    return direct(2, 6)
