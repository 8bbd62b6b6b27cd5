import os

import pytest
from hypothesis import HealthCheck, settings

from frattini_lab.cli import data_dir, load_corpus
from frattini_lab.io import load_group

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = data_dir()

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def corpus():
    return {e.id: e for e in load_corpus()}


@pytest.fixture(scope="session")
def group():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_group(DATA / "groups" / f"{name}.grp")
        return cache[name]

    return get


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = marker.args
        verdict = "PASS" if rep.outcome == "passed" else "FAIL"
        case = f" [{item.callspec.id}]" if hasattr(item, "callspec") else ""
        _acceptance_lines.append(f"criterion {number:>2} {verdict}  {title}{case}  ({rep.duration:.2f}s)")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
