import numpy as np
import pytest

from gcuntz.catalog import catalog
from gcuntz.fusion import FusionData, validate
from gcuntz.spectral import classify

CATALOG_NAMES = ["inner-2", "inner-3", "inner-5", "a4-iota", "lee-yang-rho", "s3-std", "z2-sign"]


def random_fusion(rng, max_size=5, max_entry=3):
    """Random valid fusion data; density varies so nilpotent reductions show up too."""
    while True:
        s = int(rng.integers(1, max_size + 1))
        density = rng.uniform(0.15, 0.9)
        m = rng.integers(1, max_entry + 1, size=(s, s)) * (rng.random((s, s)) < density)
        data = FusionData([f"s{i}" for i in range(s)], int(rng.integers(s)), m.tolist())
        if validate(data).ok:
            return data


def random_family(count, seed):
    rng = np.random.default_rng(seed)
    return [random_fusion(rng) for _ in range(count)]


@pytest.fixture(scope="session")
def family():
    return random_family(200, seed=20261016)


@pytest.fixture(scope="session")
def catalog_data():
    return {name: catalog(name).fusion_data() for name in CATALOG_NAMES}


@pytest.fixture(scope="session")
def profiles(catalog_data):
    return {name: classify(data) for name, data in catalog_data.items()}


@pytest.fixture
def lee_yang():
    return FusionData(["id", "rho"], 0, [[0, 1], [1, 1]])


@pytest.fixture
def a4():
    return FusionData(["iota", "alpha"], 0, [[1, 1], [1, 0]])


_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def criterion():
    """Record and print the pass/fail line of one acceptance criterion."""

    def record(label, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {label}: {detail}"
        _ACCEPTANCE[str(label)] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for key in sorted(_ACCEPTANCE, key=lambda k: (int(k.rstrip("ab")), k)):
            terminalreporter.write_line(_ACCEPTANCE[key])
