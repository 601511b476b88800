"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Criterion inventory (tolerances pinned where each criterion runs):
  1  census           exact counts + azygosity, g = 1..3, < 1 s
  2  jacobi           residual < 1e-10, sign -1 +- 1e-10, 20 + 20 tau, < 5 s
  3  j_invariant      j = 1728 and j = 0 within 1e-8, < 10 s
  4  dictionary       6 + 20 divisor classes within 1e-6 + complements, < 60 s
  5  rosenhain        max over 15 pairs < 1e-6 on 5 seeded curves, < 60 s
  6  guardia          15 systems < 1e-6 (g=2); 56 systems < 1e-4 extended (g=3)
  7  product_theorem  log residual < 1e-5 (g=2, m=15), < 1e-4 (g=3, m=56)
  8  fourth_power     log residual < 1e-5, reorder shift < 1e-5 (g=2)
  9  lockhart         residual < 1e-8 (g=1), < 1e-5 (g=2); worked |D| value
  10 green            symmetry < 1e-5 on 10 pairs; positivity; phi norm
                      reconciliation < 1e-5 (g=2)
  11 vanishing        1 near-zero even value of 36 (g=3); 0 of 10 (g=2)
"""

import pytest

from hypertheta.suite import CRITERIA, run_criterion


@pytest.mark.parametrize("name", [name for name, _ in CRITERIA])
def test_acceptance_criterion(name, capsys):
    result = run_criterion(name)
    status = "PASS" if result["passed"] else "FAIL"
    with capsys.disabled():
        print(f"\n[acceptance] {status} {name} ({result['elapsed_s']}s)")
    assert result["passed"], result["details"]
    assert result["elapsed_s"] < result["budget_s"], (
        f"{name} exceeded its {result['budget_s']}s budget"
    )
