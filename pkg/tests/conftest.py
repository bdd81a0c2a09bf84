import pytest

_ACCEPTANCE: list[tuple[int, str, str, float]] = []


def pytest_addoption(parser):
    parser.addoption(
        "--allow-long",
        action="store_true",
        default=False,
        help="run tests marked long (the 10^8-step recursion)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number): exit criterion with one summary line")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--allow-long"):
        return
    skip = pytest.mark.skip(reason="needs --allow-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _ACCEPTANCE.append((marker.args[0], item.name, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    grouped: dict[int, list[tuple[str, str, float]]] = {}
    for number, name, outcome, duration in _ACCEPTANCE:
        grouped.setdefault(number, []).append((name, outcome, duration))
    for number in sorted(grouped):
        parts = grouped[number]
        outcomes = {outcome for _, outcome, _ in parts}
        if "failed" in outcomes:
            status = "FAIL"
        elif "passed" in outcomes:
            status = "PASS"
        else:
            status = "SKIP"
        total = sum(duration for _, _, duration in parts)
        names = ", ".join(name if outcome == "passed" else f"{name} [{outcome}]" for name, outcome, _ in parts)
        terminalreporter.write_line(f"{status}  criterion {number}  ({total:.2f}s)  {names}")
