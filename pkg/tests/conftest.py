"""Shared fixtures for extdim tests."""

import logging
import random
import shutil
import tempfile
from pathlib import Path

import pytest

from extdim.config import DEFAULT_SEED
from extdim.corpus import builtin_algebra
from extdim.field import FieldSpec
from extdim.module import random_module

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"

# Seeds for the randomized property suites
PROPERTY_SEEDS = [DEFAULT_SEED + k for k in range(5)]

# Small corpus algebras the property suites sweep over: (family, parameter)
PROPERTY_ALGEBRAS = {
    "a2": ("linear", 2),
    "a3": ("linear", 3),
    "exterior2": ("exterior", 2),
    "square_zero_4": ("square_zero_4", None),
}

# === Logging Fixture ===


@pytest.fixture(autouse=True)
def reset_logging():
    """Reset extdim logging configuration before each test.

    This prevents logging handlers from persisting across tests,
    which can cause 'I/O operation on closed file' errors when
    pytest's capsys closes stdout/stderr.
    """
    logger = logging.getLogger("extdim")
    logger.handlers.clear()
    logger.addHandler(logging.NullHandler())
    yield
    logger.handlers.clear()
    logger.addHandler(logging.NullHandler())


@pytest.fixture
def caplog_extdim(caplog):
    """Capture extdim logs at DEBUG level for testing."""
    with caplog.at_level(logging.DEBUG, logger="extdim"):
        yield caplog


# === Path/Directory Fixtures ===


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test outputs."""
    tmp = Path(tempfile.mkdtemp())
    yield tmp
    shutil.rmtree(tmp, ignore_errors=True)


@pytest.fixture
def corpus_dir():
    """The corpus shipped with the repository."""
    return CORPUS_DIR


# === Algebra Fixtures ===


@pytest.fixture(scope="session")
def f2():
    return FieldSpec.prime(2)


@pytest.fixture(scope="session")
def a2():
    """1 -> 2 over Q."""
    return builtin_algebra("linear", 2)


@pytest.fixture(scope="session")
def a2_f2(f2):
    """1 -> 2 over F_2, small enough for brute-force enumeration."""
    return builtin_algebra("linear", 2, f2)


@pytest.fixture(scope="session")
def a3():
    return builtin_algebra("linear", 3)


@pytest.fixture(scope="session")
def a3_f2(f2):
    return builtin_algebra("linear", 3, f2)


@pytest.fixture(scope="session")
def exterior2():
    """Exterior algebra on two generators: self-injective, Loewy length 3."""
    return builtin_algebra("exterior", 2)


@pytest.fixture(scope="session")
def fork5():
    return builtin_algebra("fork", 5)


@pytest.fixture(scope="session")
def square_zero_4():
    return builtin_algebra("square_zero_4")


# === File Fixtures ===


A2_WITH_MODULES = """\
# 1 -> 2 with a module literal for P(1)
field Q
vertices 2
arrow a1 : 1 -> 2

module P1 {
  dim = [1, 1];
  map a1 = [[1]];
}

module S2 {
  dim = [0, 1];
}
"""


@pytest.fixture
def a2_file(temp_dir):
    """An algebra file for A2 carrying module literals."""
    path = temp_dir / "a2.alg"
    path.write_text(A2_WITH_MODULES)
    return path


@pytest.fixture
def settings_file(temp_dir):
    path = temp_dir / "settings.yaml"
    path.write_text("seed: 0x10\nsubsets: exhaustive\ncutoff: 12\n")
    return path


# === Randomized Property Fixtures ===


@pytest.fixture(params=PROPERTY_SEEDS, ids=hex)
def property_seed(request):
    """Each property suite runs once per seed."""
    return request.param


@pytest.fixture
def property_seeds():
    return list(PROPERTY_SEEDS)


@pytest.fixture(scope="session", params=sorted(PROPERTY_ALGEBRAS))
def property_algebra(request):
    family, n = PROPERTY_ALGEBRAS[request.param]
    return builtin_algebra(family, n)


@pytest.fixture
def random_modules():
    """Factory for seeded lists of nonzero random modules."""

    def make(algebra, seed, count, max_dim=8):
        rng = random.Random(seed)
        modules = []
        while len(modules) < count:
            M = random_module(algebra, rng, max_dim)
            if not M.is_zero():
                modules.append(M)
        return modules

    return make
