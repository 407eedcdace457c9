"""Acceptance gate: the nine primary criteria, each exact and each held
to its runtime budget.  One line per criterion is printed; run with
`pytest -s tests/test_acceptance.py` to watch them stream."""

import time

import pytest

from planeaut.selftest import CRITERIA, run_criteria

BUDGETS = {
    "decomposition-round-trip": 30,
    "polydegree-invariants": 60,
    "diagonal-conjugation-formula": 60,
    "cyclic-fiber-classifier": 300,
    "torus-commutant-structure": 60,
    "pole-removal-descent": 300,
    "perturbation-margin": 120,
    "family-pipeline": 600,
    "negative-controls": 5,
}


def test_every_criterion_has_a_budget():
    assert sorted(BUDGETS) == sorted(name for name, _, _ in CRITERIA)


@pytest.mark.parametrize("name", [name for name, _, _ in CRITERIA])
def test_criterion(name):
    lines = []
    start = time.monotonic()
    ok = run_criteria(suite=name, seed=0, out=lines.append)
    elapsed = time.monotonic() - start
    for line in lines:
        print(line)
    assert ok, "\n".join(lines)
    assert elapsed < BUDGETS[name], \
        "%s exceeded its %ds budget: %.1fs" % (name, BUDGETS[name], elapsed)
