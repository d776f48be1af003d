from pathlib import Path

import pytest

from artinhom.coxeter import INF, CoxeterSystem, load_system
from artinhom.monoid import ArtinMonoid

SYSTEMS_DIR = Path(__file__).resolve().parent.parent / "systems"

# acceptance criterion -> one-line verdict, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


def system(name: str) -> CoxeterSystem:
    return load_system(SYSTEMS_DIR / f"{name}.cox")


def dihedral(m) -> CoxeterSystem:
    return CoxeterSystem.from_pairs("ab", {("a", "b"): m})


@pytest.fixture(scope="session")
def A2():
    return ArtinMonoid(system("A2"))


@pytest.fixture(scope="session")
def A3():
    return ArtinMonoid(system("A3"))


@pytest.fixture(scope="session")
def A1xA1():
    return ArtinMonoid(system("A1xA1"))


@pytest.fixture(scope="session")
def Iinf():
    return ArtinMonoid(system("I2inf"))


@pytest.fixture(scope="session")
def affA2():
    return ArtinMonoid(system("affA2"))


def w(M: ArtinMonoid, text: str):
    """Canonical element from a word string."""
    return M.parse(text)


__all__ = ["INF", "ACCEPTANCE_LINES", "system", "dihedral", "w"]
