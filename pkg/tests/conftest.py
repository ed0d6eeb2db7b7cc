"""Collects acceptance-criterion outcomes and prints one line per criterion."""

from collections import OrderedDict

import pytest

_RESULTS: "OrderedDict[str, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(cid, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        cid, title = mark.args
        entry = _RESULTS.setdefault(cid, {"title": title, "ok": True, "notes": []})
        entry["ok"] &= rep.passed
        entry["notes"].extend(v for k, v in item.user_properties if k == "note")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for cid, entry in sorted(_RESULTS.items(), key=lambda kv: int(kv[0][2:])):
        status = "PASS" if entry["ok"] else "FAIL"
        notes = "; ".join(entry["notes"])
        terminalreporter.write_line(f"{status} {cid} {entry['title']}" + (f" ({notes})" if notes else ""))


@pytest.fixture
def note(request):
    def add(text):
        request.node.user_properties.append(("note", text))
        print(text)
    return add
