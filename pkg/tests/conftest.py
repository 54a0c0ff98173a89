import pytest

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Record a one-line PASS/FAIL verdict for an acceptance criterion."""
    state = {}

    def record(label: str, detail: str) -> None:
        state["label"] = label
        state["detail"] = detail

    yield record
    if "label" in state:
        ACCEPTANCE_LINES[request.node.nodeid] = (state["label"], state["detail"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.acceptance_passed = report.passed


def pytest_runtest_teardown(item, nextitem):
    item.config._acceptance_status = getattr(item.config, "_acceptance_status", {})
    item.config._acceptance_status[item.nodeid] = getattr(item, "acceptance_passed", False)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    status = getattr(config, "_acceptance_status", {})
    terminalreporter.section("acceptance criteria")
    for nodeid, (label, detail) in sorted(ACCEPTANCE_LINES.items(), key=lambda kv: kv[1][0]):
        verdict = "PASS" if status.get(nodeid) else "FAIL"
        terminalreporter.write_line(f"{verdict}  {label}: {detail}")
