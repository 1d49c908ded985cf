"""End-to-end verification gate.

Each check exercises one externally observable guarantee of the package and
prints a single PASS/FAIL line; run with `pytest -v -s tests/test_acceptance.py`
or via `symcap selftest`.
"""

import pytest

from symcap.acceptance import ALL_CHECKS, AcceptanceConfig

CFG = AcceptanceConfig()


@pytest.mark.parametrize("check", ALL_CHECKS, ids=lambda c: c.__name__)
def test_acceptance(check, capsys):
    result = check(CFG)
    with capsys.disabled():
        status = "PASS" if result.ok else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
    assert result.ok, f"{result.name}: {result.detail}"
