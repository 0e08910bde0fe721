"""The eight acceptance criteria at full size.

Each test prints one PASS/FAIL line (also collected into the terminal
summary).  Tolerances live in ``lsgame.acceptance``: exact checks at 1e-9,
bound comparisons with 1e-12 slack.
"""
from __future__ import annotations

import numpy as np

from lsgame import acceptance as acc

SEED = acc.DEFAULT_SEED


def _report(result, log):
    line = result.line()
    print(line)
    log.append(line)
    assert result.passed, line


def _rng(offset: int) -> np.random.Generator:
    return np.random.default_rng(SEED + offset)


def test_criterion_1_flagship_sizes(acceptance_log):
    _report(acc.check_flagship_sizes(), acceptance_log)


def test_criterion_2_magic_square(acceptance_log):
    _report(acc.check_magic_square(), acceptance_log)


def test_criterion_3_stability_bounds(acceptance_log):
    r = acc.check_stability(_rng(3), trials=1000)
    _report(r, acceptance_log)
    assert r.data["violations"] == {"involution": 0, "commuting": 0, "abelian": 0}


def test_criterion_4_lift_certification(acceptance_log):
    r = acc.check_lifts(_rng(4), trials=500)
    _report(r, acceptance_log)
    assert r.data["worst_ratio"] <= 75.0


def test_criterion_5_finite_triviality(acceptance_log):
    r = acc.check_finite_triviality(max_degree=4)
    _report(r, acceptance_log)
    assert set(r.data["counts"]) == {1, 2, 3, 4}


def test_criterion_6_amplification(acceptance_log):
    r = acc.check_amplification(_rng(6))
    _report(r, acceptance_log)
    assert r.data["k"] == 10


def test_criterion_7_word_machinery(acceptance_log):
    r = acc.check_word_machinery(_rng(7))
    _report(r, acceptance_log)
    assert r.data["counts"] == {1: 4, 2: 8, 3: 12, 4: 16}


def test_criterion_8_bias_identity(acceptance_log):
    r = acc.check_bias_identity(_rng(8), strategies=100, trials_per_scale=30)
    _report(r, acceptance_log)
    assert np.isfinite(r.data["kappa"])
