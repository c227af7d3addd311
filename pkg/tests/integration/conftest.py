"""
Shared fixtures for integration tests.

Provides a runner for the command line as a separate process and the
model configurations used across the end-to-end checks.
"""

import subprocess
import sys
from pathlib import Path

import pytest

from torus_entropy.session import sweep_session

PROJECT_ROOT = Path(__file__).resolve().parents[2]


@pytest.fixture(autouse=True)
def reset_sweep_session():
    """Force a fresh worker pool between tests."""
    sweep_session.close()
    yield
    sweep_session.close()


@pytest.fixture
def run_cli(tmp_path):
    """Run main.py in a subprocess and return the CompletedProcess."""
    def _run(*args, env=None):
        return subprocess.run(
            [sys.executable, str(PROJECT_ROOT / "main.py"), *args],
            capture_output=True,
            text=True,
            cwd=tmp_path,
            env=env,
            timeout=600,
        )
    return _run


@pytest.fixture
def three_config(write_config):
    return write_config(
        {"model": "three_oscillator", "parameters": {"k": 1.0, "k12": 1.0, "k13": 0.0}},
        name="three.json",
    )


@pytest.fixture
def two_config(write_config):
    return write_config(
        {"model": "two_oscillator", "parameters": {"A": 2.0, "B": 1.0, "C": 1.0}},
        name="two.json",
    )


# Test markers available:
# pytest.mark.slow - for slow tests
# pytest.mark.integration - for integration tests
