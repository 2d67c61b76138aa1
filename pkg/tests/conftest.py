import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion check")


@pytest.fixture
def detail(request):
    """Attach a one-line measurement summary to the acceptance report."""
    notes = []
    request.node._acceptance_notes = notes
    return notes.append


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    failed = rep.failed
    if rep.when == "call" or failed:
        prev = _RESULTS.get(number)
        notes = "; ".join(getattr(item, "_acceptance_notes", []))
        if prev is None or failed:
            _RESULTS[number] = (title, "FAIL" if failed else "PASS", notes)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, status, notes = _RESULTS[number]
        line = f"[{number:2d}] {status}  {title}"
        if notes:
            line += f"  ({notes})"
        terminalreporter.write_line(line)
