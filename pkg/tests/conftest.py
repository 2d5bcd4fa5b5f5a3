from __future__ import annotations

import sys
from pathlib import Path

import pytest

import kgraphs as kg

TESTS_DIR = Path(__file__).resolve().parent
INSTANCES = TESTS_DIR.parent / "instances"
sys.path.insert(0, str(TESTS_DIR))


def instance_path(name: str) -> Path:
    return INSTANCES / f"instance_{name}.json"


def load_instance(name: str) -> kg.Skeleton:
    return kg.load_skeleton(instance_path(name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def instance_a() -> kg.Skeleton:
    return load_instance("a")


@pytest.fixture(scope="session")
def instance_b() -> kg.Skeleton:
    return load_instance("b")


@pytest.fixture(scope="session")
def instance_c() -> kg.Skeleton:
    return load_instance("c")


@pytest.fixture(scope="session")
def instance_d() -> kg.Skeleton:
    return load_instance("d")


@pytest.fixture(scope="session")
def instance_e() -> kg.Skeleton:
    return load_instance("e")


@pytest.fixture(scope="session")
def edgeless() -> kg.Skeleton:
    return kg.load_skeleton(
        {"rank": 1, "vertices": [{"id": "u"}], "edges": [], "squares": []}
    )
