import sys
from pathlib import Path

import pytest

# make the oracle module importable from every test file
sys.path.insert(0, str(Path(__file__).parent))

from twobody import TwoBodySystem, default_catalog, default_constants  # noqa: E402


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def constants():
    return default_constants()


@pytest.fixture(scope="session")
def hydrogen(catalog, constants):
    return TwoBodySystem.from_particles(catalog["electron"], catalog["proton"], 1, constants)


@pytest.fixture(scope="session")
def pionium(catalog, constants):
    return TwoBodySystem.from_particles(catalog["pi-"], catalog["pi+"], 1, constants)


@pytest.fixture(scope="session")
def pionic_deuterium(catalog, constants):
    return TwoBodySystem.from_particles(catalog["pi-"], catalog["deuteron"], 1, constants)
