import pytest
from hypothesis import settings

from edsforge.curve import CubicCurve

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

# criterion number -> {"title": ..., "failed": [test names], "ran": count}
CRITERIA = {}


@pytest.fixture
def e2549():
    return CubicCurve(2, 5, 4, 9)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (report.when == "call" or report.failed):
        return
    n, title = marker.args
    entry = CRITERIA.setdefault(n, {"title": title, "failed": [], "ran": 0})
    entry["ran"] += report.when == "call"
    if report.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        entry = CRITERIA[n]
        verdict = "FAIL" if entry["failed"] else "PASS"
        line = f"criterion {n:>2}: {verdict}  {entry['title']}"
        if entry["failed"]:
            line += f"  [failing: {', '.join(entry['failed'])}]"
        terminalreporter.write_line(line)
