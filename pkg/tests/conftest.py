"""Shared fixtures: the three-level config hierarchy and resolved config."""

from __future__ import annotations

from pathlib import Path

import pytest

from imprintkit.config import Level, load_config_file, resolve

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def config_dir() -> Path:
    return FIXTURES / "config"


@pytest.fixture(scope="session")
def publisher_node(config_dir):
    return load_config_file(config_dir / "publisher.json", Level.PUBLISHER)


@pytest.fixture(scope="session")
def imprint_node(config_dir):
    return load_config_file(config_dir / "imprint.json", Level.IMPRINT)


@pytest.fixture(scope="session")
def title_node(config_dir):
    return load_config_file(config_dir / "title.json", Level.TITLE)


@pytest.fixture(scope="session")
def resolved_cfg(publisher_node, imprint_node, title_node):
    return resolve(publisher_node, imprint_node, title_node)
