import pytest

_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion.

    Usage: ``criterion("AC1", "description")`` before the assertions; the line
    is marked PASS only if the test finishes without failing.
    """
    entry = {}

    def register(tag, text):
        entry.update(tag=tag, text=text)

    yield register
    if entry:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        _RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {entry['tag']}: {entry['text']}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_RESULTS, key=lambda s: int(s.split("AC")[1].split(":")[0])):
            terminalreporter.write_line(line)
