import pytest

from djkm.arith import C, RatFuncC
from djkm.liealg import build_sl2
from djkm.ring import djkm_curve

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion checked by this test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker:
        number, text = marker
        outcome = "PASS" if report.passed else "FAIL"
        if _criteria.get(number, ("PASS",))[0] != "FAIL":
            _criteria[number] = (outcome, text)


@pytest.hookimpl(tryfirst=True)
def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        outcome, text = _criteria[number]
        terminalreporter.write_line(f"[{outcome}] criterion {number}: {text}")


@pytest.fixture(scope="session")
def sl2():
    return build_sl2()


@pytest.fixture(scope="session")
def curve():
    return djkm_curve()


@pytest.fixture
def c():
    return C


def rf(text: str) -> RatFuncC:
    from djkm.arith import parse_ratfunc

    return parse_ratfunc(text)
