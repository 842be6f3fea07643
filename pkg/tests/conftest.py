import pytest

from desp.kernel import Simulation
from desp.rng import GFSR


class ConstantStream(GFSR):
    """Generator stub whose raw output is always ``word``."""

    def __init__(self, word=2**31):
        super().__init__(1)
        self.word = word

    def next_u32(self):
        return self.word


class FixedUniform(GFSR):
    def __init__(self, u):
        super().__init__(1)
        self.u = u

    def uniform01(self):
        return self.u


@pytest.fixture
def sim():
    return Simulation(0.0, 1000.0, seed=1)


# -- acceptance reporting --------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    entry = _ACCEPTANCE.setdefault(number, {"title": title, "ok": True, "notes": []})
    if report.failed:
        entry["ok"] = False
        entry["notes"].append(f"{item.name} failed")
    for key, value in item.user_properties:
        if key == "detail":
            entry["notes"].append(value)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        e = _ACCEPTANCE[number]
        status = "PASS" if e["ok"] else "FAIL"
        notes = "; ".join(dict.fromkeys(e["notes"]))
        terminalreporter.write_line(f"[{status}] {number}. {e['title']}" +
                                    (f" -- {notes}" if notes else ""))
