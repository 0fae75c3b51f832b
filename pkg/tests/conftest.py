import json
import os
import warnings

import pytest
from hypothesis import HealthCheck, settings

from periodgram.qpiece import FenchelNielsenTriple, complete_from_triple

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def load_golden(name):
    with open(os.path.join(GOLDEN, name)) as fh:
        return json.load(fh)


def golden_path(name):
    return os.path.join(GOLDEN, name)


def geometry(beta, curve, twist=0.0, role="i"):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        return complete_from_triple(FenchelNielsenTriple(beta, curve, twist, role))


@pytest.fixture(scope="session")
def golden_piece():
    return geometry(4.0, 1.2, 0.2, "i")


@pytest.fixture(scope="session")
def tube_piece():
    return geometry(4.0, 2.0, 0.1, "i")


_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    mark = getattr(report, "criterion", None)
    if mark is not None:
        _criteria[mark[0]] = (mark[1], report.outcome.upper(), report.duration, getattr(report, "detail", ""))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report.criterion = m.args
        report.detail = item.user_properties and dict(item.user_properties).get("detail", "")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        title, outcome, dt, detail = _criteria[n]
        status = "PASS" if outcome == "PASSED" else "FAIL"
        line = f"[{status}] {n}. {title} ({dt:.2f} s)"
        if detail:
            line += f": {detail}"
        tr.write_line(line)
