import pytest

from ratprog.ratfield import parse_rational_function

CORPUS = [("t", "t^2"), ("t", "1/t"), ("t^2", "t^3"), ("1/t", "1/t^2")]

_criteria: dict[int, list] = {}


@pytest.fixture(scope="session")
def corpus():
    return [(parse_rational_function(a), parse_rational_function(b)) for a, b in CORPUS]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, [title, "PASS", []])
    if report.when == "call":
        entry[2].extend(v for k, v in item.user_properties if k == "note")
    if report.failed:
        entry[1] = "FAIL"
    elif report.skipped and report.when != "teardown" and entry[1] == "PASS" and call.when == "setup":
        entry[1] = "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, notes = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
        for note in notes:
            terminalreporter.write_line(f"               {note}")
