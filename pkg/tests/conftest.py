"""Pytest fixtures for wahlflip tests."""

import json
from pathlib import Path

import pytest


@pytest.fixture
def fixtures_dir():
    """Return the path to the fixtures directory."""
    return Path(__file__).parent / "fixtures"


@pytest.fixture
def load_fixture(fixtures_dir):
    """Factory fixture that returns a function to load JSON fixtures."""
    def _load(group: str, filename: str):
        fixture_path = fixtures_dir / group / filename
        if not fixture_path.exists():
            pytest.skip(f"Fixture not found: {fixture_path}")
        return json.loads(fixture_path.read_text(encoding="utf-8"))
    return _load
