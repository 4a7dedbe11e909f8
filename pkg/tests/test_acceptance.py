"""The twelve acceptance criteria, each run at its stated size and seed 0.

Every criterion prints one ``PASS``/``FAIL`` line; the lines are repeated in
the pytest terminal summary.  Run alone with ``pytest tests/test_acceptance.py``
or ``python tests/test_acceptance.py``.
"""

import time

import pytest

from cantorgroups.selftest import SUITES, run_suite

# criterion number -> seconds allowed
LIMITS = {1: 60, 5: 300}
LINES: list[str] = []

CRITERIA = sorted(SUITES, key=lambda name: SUITES[name][0])


def evaluate(name: str) -> tuple[bool, str, list]:
    number, title, _ = SUITES[name]
    start = time.perf_counter()
    checks = run_suite(name, 0)
    seconds = time.perf_counter() - start
    failed = [c.line() for c in checks if not c.ok]
    limit = LIMITS.get(number)
    if limit is not None and seconds >= limit:
        failed.append(f"runtime {seconds:.1f} s over the {limit} s target")
    ok = not failed
    cases = sum(c.passed + c.failed for c in checks)
    note = f"{len(checks)} checks, {cases} cases, {seconds:.1f} s"
    if limit is not None:
        note += f" (limit {limit} s)"
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{note}]"
    return ok, line, failed


@pytest.mark.parametrize("name", CRITERIA)
def test_criterion(name):
    ok, line, failed = evaluate(name)
    LINES.append(line)
    print(line)
    assert ok, "\n".join(failed)


if __name__ == "__main__":
    results = [evaluate(name) for name in CRITERIA]
    for ok, line, failed in results:
        print(line)
        for f in failed:
            print("    " + f)
    raise SystemExit(0 if all(r[0] for r in results) else 1)
