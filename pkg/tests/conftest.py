"""Collects the acceptance criteria outcomes and prints one line each at the
end of the run."""
import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    note = getattr(item, "criterion_note", "")
    if report.failed:
        message = str(report.longrepr.reprcrash.message) if hasattr(report.longrepr, "reprcrash") else ""
        first = message.splitlines()[0] if message else ""
        note = "; ".join(x for x in (note, first) if x)
    _RESULTS[number] = (title, "PASS" if report.passed else "FAIL", note)


@pytest.fixture
def note(request):
    """Attach a one-line summary to the criterion line."""
    def record(text):
        request.node.criterion_note = text
    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, verdict, note = _RESULTS[number]
        line = f"criterion {number:>2} {verdict}: {title}"
        if note:
            line += f" ({note})"
        terminalreporter.write_line(line)
