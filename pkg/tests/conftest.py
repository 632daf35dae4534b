import functools
import os

import pytest
from hypothesis import HealthCheck, settings

from hermsrg import build_nu, build_switched

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@functools.lru_cache(maxsize=None)
def nu(n, q):
    return build_nu(n, q)


@functools.lru_cache(maxsize=None)
def switched(n, q, variant):
    return build_switched(n, q, variant, parts=True)


# -- acceptance summary: one line per criterion ------------------------------------------

_criteria: dict[int, list[tuple[str, str]]] = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            outcome = "xfail" if report.skipped else "xpass"
        else:
            outcome = report.outcome
        _criteria.setdefault(crit, []).append((report.nodeid.split("::")[-1], outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_criteria):
        tests = _criteria[crit]
        bad = [name for name, o in tests if o not in ("passed", "xfail")]
        skipped = [name for name, o in tests if o == "skipped"]
        literal = [name for name, o in tests if o == "xfail"]
        if bad and len(skipped) == len(bad):
            verdict = "SKIP"
        else:
            verdict = "FAIL" if bad else "PASS"
        line = f"criterion {crit:>2}: {verdict}  ({len(tests) - len(literal)} check{'' if len(tests) - len(literal) == 1 else 's'}"
        if literal:
            line += f"; {len(literal)} literal value(s) unattainable, strict xfail"
        if bad:
            line += f"; not passed: {', '.join(bad)}"
        tr.write_line(line + ")")
