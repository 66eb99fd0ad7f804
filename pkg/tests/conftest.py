import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import DIAMOND, KITE, SLANT_X, SQUARE  # noqa: E402

from freezeset import DigitalImage  # noqa: E402

_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.fixture
def kite():
    return DigitalImage(KITE, 2, name="kite")


@pytest.fixture
def diamond():
    return DigitalImage(DIAMOND, 2, name="diamond")


@pytest.fixture
def slant_image():
    return DigitalImage(SLANT_X, 1)


@pytest.fixture
def square1():
    return DigitalImage(SQUARE, 1)


@pytest.fixture
def square2():
    return DigitalImage(SQUARE, 2)


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.keywords:
        doc = getattr(report, "criterion", None) or report.nodeid
        _ACCEPTANCE.append(("PASS" if report.passed else "FAIL", doc))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    doc = (item.function.__doc__ or "").strip().splitlines()
    if doc:
        rep.criterion = doc[0]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for status, doc in _ACCEPTANCE:
        terminalreporter.write_line(f"[{status}] {doc}")
