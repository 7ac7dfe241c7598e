"""Pytest configuration shared by unit and integration tests"""

import sys
from pathlib import Path

import pytest

# Add project root to path for src imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """
    Fresh settings for every test.

    Session logs go to the test's tmp_path so runs never touch ./logs.
    """
    from src import config

    monkeypatch.setenv("LINDYN_LOG_FILE", str(tmp_path / "logs" / "lindyn-lab.log"))
    config.get_settings(force_reload=True)
    yield
    config._settings = None


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_collection_modifyitems(items):
    """Mark everything under tests/unit as unit"""
    unit_dir = Path(__file__).parent / "unit"
    for item in items:
        if unit_dir in Path(item.fspath).parents:
            item.add_marker(pytest.mark.unit)
