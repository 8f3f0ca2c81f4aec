import pytest

_CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the outcome is filled in after the test runs."""
    label = request.node.get_closest_marker("criterion").args[0]
    _CRITERIA[request.node.nodeid] = [label, None, ""]

    def note(detail):
        _CRITERIA[request.node.nodeid][2] = detail

    return note


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.nodeid in _CRITERIA and (rep.when == "call" or rep.failed):
        if _CRITERIA[item.nodeid][1] is not False:
            _CRITERIA[item.nodeid][1] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _CRITERIA.values():
        status = "PASS" if passed else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"[{status}] {label}{suffix}")
