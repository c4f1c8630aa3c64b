import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# Per-criterion verdicts for the acceptance module, printed at the end of the run.
ACCEPTANCE: dict[int, tuple[str, str]] = {}
_FAILED: set[int] = set()


@pytest.fixture
def criterion(request):
    """Record pass/fail for one acceptance criterion: ``criterion(n, detail)``."""
    state = {}

    def record(n: int, detail: str = ""):
        state["n"] = n
        state["detail"] = detail
        ACCEPTANCE[n] = ("FAIL", detail)

    yield record
    if "n" in state:
        rep = getattr(request.node, "rep_call", None)
        n = state["n"]
        if rep is None or not rep.passed:
            _FAILED.add(n)
        ACCEPTANCE[n] = ("FAIL" if n in _FAILED else "PASS", state["detail"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {detail}")
