import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if not item.name.startswith("test_criterion_"):
        return
    label = (item.obj.__doc__ or item.name).strip().splitlines()[0]
    if report.when == "call" or report.failed:
        passed = report.passed and _criteria.get(item.nodeid, (None, True))[1]
        _criteria[item.nodeid] = (label, passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for _, (label, passed) in sorted(_criteria.items()):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}")
