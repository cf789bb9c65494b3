from __future__ import annotations

from pathlib import Path

import pytest

import greenseq as gs

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str) -> gs.Quiver:
    return gs.parse_quiver((FIXTURES / f"{name}.quiver").read_text())


@pytest.fixture
def a3cycle() -> gs.Quiver:
    return load("a3cycle")


@pytest.fixture
def zigzag7() -> gs.Quiver:
    return load("zigzag7")


@pytest.fixture
def tree15() -> gs.Quiver:
    return load("tree15")


@pytest.fixture
def tree16() -> gs.Quiver:
    return load("tree16")


@pytest.fixture
def t15(tree15) -> gs.EmbeddedQuiver:
    return gs.embed(tree15, (1, 2, 3))


@pytest.fixture
def t16(tree16) -> gs.EmbeddedQuiver:
    return gs.embed(tree16, (1, 2, 3))
