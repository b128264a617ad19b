import pytest

_results: dict[int, tuple[str, list[str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    # setup and teardown only matter when they break
    if report.when == "call" or not report.passed:
        _results.setdefault(number, (title, []))[1].append("PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, verdicts = _results[number]
        verdict = "PASS" if verdicts and all(v == "PASS" for v in verdicts) else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number:2d}: {title}")
    passed = sum(all(v == "PASS" for v in vs) for _, vs in _results.values())
    terminalreporter.write_line(f"{passed}/{len(_results)} criteria passed")
