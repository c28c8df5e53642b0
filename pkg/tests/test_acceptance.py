"""Acceptance suite: one test per end-to-end criterion.

Each test prints a single pass/fail line (visible with ``pytest -s`` or in
the CLI ``verify`` subcommand, which runs the same functions).
"""

import time

import pytest

from multicutlab.verify import CRITERIA


@pytest.mark.parametrize(
    "index,name,fn",
    [(i, name, fn) for i, (name, fn) in enumerate(CRITERIA, start=1)],
    ids=[f"criterion_{i}_{name.replace(' ', '_')}" for i, (name, _) in enumerate(CRITERIA, start=1)],
)
def test_criterion(index, name, fn):
    t0 = time.time()
    ok, detail = fn()
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] criterion {index} ({name}): {detail} [{time.time() - t0:.1f}s]")
    assert ok, f"criterion {index} ({name}): {detail}"
