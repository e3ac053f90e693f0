from __future__ import annotations

import pytest

import properties  # noqa: F401  registers the hypothesis profile
from odprof import fixtures


@pytest.fixture(scope="session")
def taxes():
    return fixtures.load("taxes")


@pytest.fixture(scope="session")
def incompleteness():
    return fixtures.load("incompleteness")


@pytest.fixture(scope="session")
def bug7():
    return fixtures.load("bug7")
