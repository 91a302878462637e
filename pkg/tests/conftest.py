import math
import re

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

SQRT3 = math.sqrt(3.0)
PI_3 = math.pi / 3.0

thetas = st.floats(min_value=0.3, max_value=2.8)
# log-uniform spacing keeps the default fold count moderate
spacings = st.floats(min_value=-3.0, max_value=0.0).map(lambda e: 10.0 ** e)


# -- acceptance summary -----------------------------------------------------------
# tests named test_criterion_<n>_<slug> get one PASS/FAIL line each at the end of
# the run, together with whatever they recorded under "detail".

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results: dict = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
        ok = report.passed and _results.get(key, (True, ""))[0]
        _results[key] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, slug), (ok, detail) in sorted(_results.items()):
        line = f"criterion {num} {slug}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(f"{line}  [{detail}]" if detail else line)
