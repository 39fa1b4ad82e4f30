"""Pytest configuration and fixtures."""

from pathlib import Path

import pytest

from constants.cache import CoefficientCache


def pytest_addoption(parser: pytest.Parser) -> None:
    """Add custom command line options."""
    parser.addoption(
        "--run-long",
        action="store_true",
        default=False,
        help="Run long computations (c(9), c(10), 1000-zero scans, T=1e5 moments)",
    )


def pytest_configure(config: pytest.Config) -> None:
    """Register custom markers."""
    config.addinivalue_line(
        "markers",
        "long: mark test as a long-running computation",
    )


def pytest_collection_modifyitems(
    config: pytest.Config, items: list[pytest.Item]
) -> None:
    """Skip long tests unless --run-long is passed."""
    if config.getoption("--run-long"):
        return

    skip_long = pytest.mark.skip(reason="need --run-long option to run")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)


@pytest.fixture
def cache(tmp_path: Path) -> CoefficientCache:
    """Coefficient cache rooted in a temporary directory."""
    return CoefficientCache(tmp_path)
