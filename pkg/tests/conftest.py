import warnings

import pytest

warnings.filterwarnings("ignore", message=".*TBB threading layer.*")


@pytest.fixture(scope="session")
def census_p2_n3():
    """Exhaustive p = 2 censuses through level 3 for both algebras (shared, ~1 min)."""
    from a2zeta.lattice import make_lattice
    from a2zeta.poincare import enumerate_counts
    return {alg: enumerate_counts(make_lattice(alg, 2), 2, 3) for alg in ("sl3", "su3")}


_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line per acceptance criterion, printed at the end of the run."""
    def record(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else "")
        print(line)
        request.config.stash[_LINES].append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
