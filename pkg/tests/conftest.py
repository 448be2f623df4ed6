import re

_RESULTS: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance-gate criterion")


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = f"criterion {int(m.group(1)):>2} ({m.group(2).replace('_', ' ')})"
    if report.when == "call" or report.failed or report.skipped:
        if report.failed:
            _RESULTS[key] = "FAIL"
        elif report.skipped:
            _RESULTS.setdefault(key, "SKIP")
        else:
            _RESULTS.setdefault(key, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS):
        terminalreporter.write_line(f"{_RESULTS[key]}  {key}")
