import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from crossmod.actor import build_actor_2crossed  # noqa: E402
from crossmod.braided import build_aut_braided  # noqa: E402
from crossmod.catalog import CATALOG, TWO_CATALOG  # noqa: E402
from crossmod.derivations import enumerate_fder, enumerate_fder_star  # noqa: E402
from crossmod.xmod import enumerate_xmod_automorphisms  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


@functools.lru_cache(maxsize=None)
def xmod(name):
    return CATALOG[name]()


@functools.lru_cache(maxsize=None)
def fder(name):
    return enumerate_fder(xmod(name))


@functools.lru_cache(maxsize=None)
def fder_star(name):
    return enumerate_fder_star(xmod(name))


@functools.lru_cache(maxsize=None)
def aut(name):
    return enumerate_xmod_automorphisms(xmod(name))


@functools.lru_cache(maxsize=None)
def actor(name):
    return build_actor_2crossed(xmod(name))


@functools.lru_cache(maxsize=None)
def braided(name):
    return build_aut_braided(xmod(name))


@functools.lru_cache(maxsize=None)
def two(name):
    return TWO_CATALOG[name]()


# acceptance lines, echoed again in the terminal summary
RESULTS: list[str] = []

XMOD_NAMES = sorted(CATALOG)
TWO_NAMES = sorted(TWO_CATALOG)


@pytest.fixture(params=XMOD_NAMES)
def name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
