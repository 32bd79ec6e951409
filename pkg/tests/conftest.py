"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): test belongs to an acceptance criterion")


def _entry(item):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return None
    number, title = marker.args
    return _RESULTS.setdefault(number, {"title": title, "tests": [], "notes": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    entry = _entry(item)
    if entry is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        # an expected failure still counts as a failed criterion
        ok = rep.passed and not hasattr(rep, "wasxfail")
        entry["tests"].append((item.name, ok))


@pytest.fixture
def criterion_note(request):
    """Attach a line of evidence to the criterion shown in the summary."""
    entry = _entry(request.node)

    def add(text: str):
        if entry is not None:
            entry["notes"].append(text)

    return add


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        failed = [name for name, ok in entry["tests"] if not ok]
        status = "PASS" if entry["tests"] and not failed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status} - {entry['title']}")
        for name in failed:
            terminalreporter.write_line(f"    failed: {name}")
        for note in entry["notes"]:
            terminalreporter.write_line(f"    {note}")
