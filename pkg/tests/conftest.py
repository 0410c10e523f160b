"""Shared fixtures: audit log in a temporary file, seeded generators."""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.hilbert import DEFAULT_TOLERANCES
from src.logging import reset_audit_logger

settings.register_profile(
    "branchlab",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("branchlab")


@pytest.fixture(autouse=True, scope="session")
def audit_log(tmp_path_factory):
    """Keep audit entries out of the repository's logs directory."""
    path = tmp_path_factory.mktemp("audit") / "audit.jsonl"
    return reset_audit_logger(path, enabled=True)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def tol():
    return DEFAULT_TOLERANCES
