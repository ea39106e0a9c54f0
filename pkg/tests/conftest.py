import pytest

from ryser.design import catalog, catalog_entry, complement
from ryser.params import ryser_profile


def _constructed():
    out = []
    for entry in catalog():
        S = entry.build()
        for i in range(S.v):
            R = complement(S, i)
            out.append((entry, i, R, ryser_profile(R)))
    return out


@pytest.fixture(scope="session")
def constructed():
    """Every catalog symmetric design complemented at every block: (entry, index, S, P)."""
    return _constructed()


def _star(name):
    S = complement(catalog_entry(name).build(), 0)
    return S, ryser_profile(S)


@pytest.fixture(scope="session")
def fano():
    return catalog_entry("fano").build()


@pytest.fixture(scope="session")
def fano_star():
    return _star("fano")


@pytest.fixture(scope="session")
def biplane_star():
    return _star("biplane11")


@pytest.fixture(scope="session")
def pg23_star():
    return _star("pg2_3")


# acceptance reporting: one line per criterion at the end of the run

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n, title = marker.args
    failed = call.excinfo is not None
    prev = _criteria.get(n, (title, True))
    _criteria[n] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok = _criteria[n]
        terminalreporter.write_line(f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}")
