"""Shared fixtures for integration tests

Integration tests drive the real entry points end to end:
- `main(argv)` exactly as the `lindyn` console script calls it
- `run_suite` with small trial counts on the desk-scale presets

No mocks and no network. The full acceptance runs are marked `slow`:

    pytest tests/integration/ -m "not slow"    # quick pass
    pytest tests/integration/                  # everything
"""

import json
import logging

import pytest

from src.main import main


@pytest.fixture(autouse=True)
def restore_root_logger():
    """main() reconfigures the root logger; put pytest's handlers back afterwards"""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)


@pytest.fixture
def run_cli(capsys):
    """
    Run the CLI in-process.

    Returns:
        Callable argv -> (exit_code, stdout, stderr)
    """
    def run(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


@pytest.fixture
def run_json(run_cli):
    """Like run_cli, with stdout parsed as JSON"""
    def run(*argv):
        code, out, err = run_cli(*argv)
        return code, json.loads(out), err

    return run
