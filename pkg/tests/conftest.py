import sys
from pathlib import Path

import pytest

from catho.homotopy import Answer, Exhaustion, collect_verdicts, verify_verdict

FIXTURES = Path(__file__).parent / "fixtures"

# every verdict produced anywhere in the run, checked again at session end
_audit = collect_verdicts()
SEEN = None


def pytest_configure(config):
    global SEEN
    SEEN = _audit.__enter__()


def audit_failures(pairs) -> list[str]:
    """Re-check every Yes/No verdict with the independent verifier."""
    failures = []
    done = set()
    for F, v in pairs:
        key = (F.key(), id(v))
        if key in done:
            continue
        done.add(key)
        if v.answer is Answer.UNKNOWN:
            if not isinstance(v.evidence, Exhaustion) or not v.evidence.note:
                failures.append(f"Unknown verdict without an exhaustion note for {F!r}")
            continue
        report = verify_verdict(F, v)
        if not report.ok:
            failures.append(f"{v.answer.value} for {F!r}: {report.violations[:3]}")
    return failures


def pytest_sessionfinish(session, exitstatus):
    if SEEN is None:
        return
    pairs = list(SEEN)
    _audit.__exit__(None, None, None)
    failures = audit_failures(pairs)
    tr = session.config.pluginmanager.get_plugin("terminalreporter")
    line = f"verdict audit: {len(pairs)} verdicts, {len(failures)} failures"
    if tr is not None:
        tr.write_line(line)
        for f in failures[:10]:
            tr.write_line(f"  {f}")
    if failures:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num][0])


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES
