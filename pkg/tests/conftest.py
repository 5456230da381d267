"""Collects per-criterion outcomes of the acceptance tests and prints a summary."""

from collections import OrderedDict

_RESULTS: "OrderedDict[str, bool]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", marker.args[0]))


def pytest_runtest_logreport(report):
    label = dict(report.user_properties).get("criterion")
    if label is None:
        return
    ok = _RESULTS.get(label, True)
    if report.failed or (report.when == "call" and not report.passed):
        ok = False
    _RESULTS[label] = ok


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for label in sorted(_RESULTS, key=lambda s: int(s.split()[0][2:])):
        status = "PASS" if _RESULTS[label] else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")
