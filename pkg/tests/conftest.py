"""Shared pytest fixtures and configuration."""

import math

import pytest

from models.data_models import DmcSpec

LN2 = math.log(2.0)


@pytest.fixture
def test_env(monkeypatch, tmp_path):
    """
    Set environment variables for a clean, valid configuration.

    The output directory points into tmp_path so CLI runs never write into
    the working tree.
    """
    output_dir = tmp_path / "results"
    monkeypatch.setenv("LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("ANYTIME_PPM_OUTPUT_DIR", str(output_dir))
    monkeypatch.setenv("ANYTIME_PPM_WORKERS", "1")

    return {
        "log_level": "DEBUG",
        "output_dir": output_dir,
        "workers": 1,
    }


@pytest.fixture
def clean_env(monkeypatch):
    """Remove the project's environment variables."""
    for name in ("LOG_LEVEL", "ANYTIME_PPM_OUTPUT_DIR", "ANYTIME_PPM_WORKERS"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def invalid_env(monkeypatch):
    """
    Set up invalid environment variables for testing validation.
    """
    monkeypatch.setenv("LOG_LEVEL", "LOUD")
    monkeypatch.setenv("ANYTIME_PPM_WORKERS", "0")


@pytest.fixture
def toy_dmc():
    """Binary-output channel: free input flips to 1 w.p. 0.05, costly input w.p. 0.9."""
    return DmcSpec(
        inputs=["0", "1"],
        outputs=["0", "1"],
        transition=[[0.95, 0.05], [0.1, 0.9]],
        cost=[0.0, 1.0],
        zero_cost_input=0,
    )


@pytest.fixture
def noiseless_dmc():
    """Identity channel with a free input."""
    return DmcSpec(
        inputs=["0", "1"],
        outputs=["0", "1"],
        transition=[[1.0, 0.0], [0.0, 1.0]],
        cost=[0.0, 1.0],
        zero_cost_input=0,
    )


@pytest.fixture
def toy_dmc_text():
    """The toy channel in the plain-text file format."""
    return (
        "# inputs outputs\n"
        "2 2\n"
        "# costs\n"
        "0 1\n"
        "0.95 0.05\n"
        "0.1 0.9   # costly input\n"
    )
