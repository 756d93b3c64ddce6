import functools

import pytest

from loopcrystal.cartan import load_quiver
from loopcrystal.extract import crystal_binf, crystal_module
from loopcrystal.freealg import FormParams, FreeAlgebra


@functools.lru_cache(maxsize=None)
def algebra(name: str) -> FreeAlgebra:
    q = load_quiver(name)
    return FreeAlgebra(q, FormParams(q))


@functools.lru_cache(maxsize=None)
def binf(name: str, bound: int):
    return crystal_binf(algebra(name), bound)


@functools.lru_cache(maxsize=None)
def module(name: str, lam: tuple, bound: int):
    return crystal_module(algebra(name), lam, bound)


@pytest.fixture
def alg():
    return algebra
