import itertools
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from formpairs.equivalence import FormPair, is_realizable
from formpairs.forms import Matrix2
from formpairs.fp_core import FieldContext

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_PRIMES = [5, 7, 11, 13]


@pytest.fixture(params=SMALL_PRIMES)
def ctx(request):
    return FieldContext(request.param)


contexts = st.sampled_from(SMALL_PRIMES).map(FieldContext)


@lru_cache(maxsize=None)
def _matrices(p, det):
    ctx = FieldContext(p)
    out = []
    for e in itertools.product(range(p), repeat=4):
        m = Matrix2(ctx, *e)
        if m.is_invertible() and (det is None or m.det in det):
            out.append(m)
    return out


def invertible_matrices(ctx, det=None):
    return st.sampled_from(_matrices(ctx.p, det))


@st.composite
def pairs(draw, ctx, degree=2, realizable=None):
    size = ctx.p ** (2 * degree + 2)
    idx = draw(st.integers(0, size - 1))
    while True:
        pair = FormPair.from_index(ctx, degree, idx)
        if realizable is None or is_realizable(pair) == realizable:
            return pair
        idx = (idx + 1) % size


# -- acceptance summary -----------------------------------------------------

_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[name] = (report.outcome, report.longreprtext.splitlines()[-1] if report.failed else "")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        outcome, why = _CRITERIA[name]
        number = int(name.split("_")[2])
        label = " ".join(name.split("_")[3:])
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"criterion {number:2d} [{status}] {label}"
        terminalreporter.write_line(line + (f"  ({why})" if why else ""))
