import pytest

# criterion id -> (passed, label); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, label = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key:>2}: {label}")


@pytest.fixture
def criterion(request):
    """Record a criterion's outcome: PASS only if the test body finishes."""
    state = {}

    def start(key, label):
        state.update(key=key, label=label)
        ACCEPTANCE[key] = (False, label)

    yield start
    if "key" in state and request.node.rep_call_passed:
        ACCEPTANCE[state["key"]] = (True, state["label"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call_passed = rep.passed
