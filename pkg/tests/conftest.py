import pytest

from aesimg import _backend

BACKENDS = _backend.available()


@pytest.fixture(params=BACKENDS)
def kernels(request):
    """Each importable kernel backend in turn."""
    return _backend.load(request.param)


@pytest.fixture
def python_kernels():
    return _backend.load("python")


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if "acceptance" in report.keywords:
            _acceptance.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}  ({duration:.2f}s)")
