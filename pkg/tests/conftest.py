import pytest

from fracsemi.fixtures import F8_POLY, F128_POLY, field_basis, paper_basis
from fracsemi.gf2core import GF2Vector
from fracsemi.semifield import cube_from_basis


def a(i, n=7):
    """The basis element a_i (1-based, as in the printed matrices)."""
    return GF2Vector.unit(n, i - 1)


@pytest.fixture(scope="session")
def paper():
    return paper_basis()


@pytest.fixture(scope="session")
def paper_cube(paper):
    return cube_from_basis(paper)


@pytest.fixture(scope="session")
def f8_cube():
    return cube_from_basis(field_basis(F8_POLY))


@pytest.fixture(scope="session")
def f128():
    return field_basis(F128_POLY)


_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and rep.when == "call":
        detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
        _CRITERIA.append((marker.args[0], marker.args[1], rep.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_CRITERIA):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}" + (f"  [{detail}]" if detail else ""))
