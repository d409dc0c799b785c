"""Shared fixtures: fields, seeded generators and the bundled example ideals."""

import numpy as np
import pytest

from algebra.linalg_gf import FieldPrime
from config import reset_config
from utils.file_utils import load_fixture


@pytest.fixture(autouse=True)
def quiet_config(monkeypatch):
    """Fresh configuration per test, with progress messages off."""
    monkeypatch.setenv("TORCLASS_VERBOSE", "false")
    reset_config()
    yield
    reset_config()


@pytest.fixture
def gf():
    return FieldPrime(32003)


@pytest.fixture
def gf2():
    return FieldPrime(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def fixture_ideal():
    """Loader for the example ideals under src/fixtures."""
    return load_fixture
