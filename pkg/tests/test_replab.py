from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lsgame.gf2core import BinaryLinearSystem, magic_square_system
from lsgame.presentations import (
    J, Presentation, Word, hnn_presentation,
    k_group, k_presentation, presentation_of, solution_group, word,
)
from lsgame.compiler import compile_lpc, lower_ehlpc, nice_embed
from lsgame.replab.core import (
    DIM_CAP, ApproxRep, FeasibilityError, RepError, defect, direct_sum, dist, evaluate, expi,
    hs_norm, perturb, random_hermitian, random_involution, random_unitary, rep_from_json,
    rep_to_json, tensor, trivial_rep,
)
from lsgame.replab.stability import (
    C0, C1, abelian_constant, abelian_constant_as_printed, abelian_presentation,
    nearest_involution, round_commuting, round_to_involution, split_on_j,
)
from lsgame.replab.lifts import (
    COMPILE_CONSTANT, lift_compile, lift_ehlpc, lift_nice, pullback_residual,
)
from lsgame.replab.amplify import amplify, normalized_trace, tensor_power, tensor_power_exponent
from lsgame.replab.homs import compose, enumerate_homs, hom_summary, perm_inverse
from lsgame.replab.models import pauli_magic_rep, random_pauli_lpc, solution_rep

seeds = st.integers(0, 2 ** 32 - 1)


# -- core ----------------------------------------------------------------------

def test_hs_norm_is_normalized():
    assert hs_norm(np.eye(7)) == pytest.approx(1.0)
    assert dist(np.eye(4), -np.eye(4)) == pytest.approx(2.0)


def test_rep_validation():
    with pytest.raises(RepError):
        ApproxRep(2, {"a": np.ones((2, 2))})
    with pytest.raises(RepError):
        ApproxRep(2, {"a": np.eye(3)})
    with pytest.raises(FeasibilityError):
        ApproxRep(DIM_CAP + 1, {})


def test_unassigned_j_is_minus_identity():
    rep = ApproxRep(3, {"a": np.eye(3)})
    assert np.allclose(rep.image(J), -np.eye(3))


def test_evaluate_uses_adjoint_for_inverse(rng):
    U = random_unitary(4, rng)
    rep = ApproxRep(4, {"u": U})
    assert np.allclose(evaluate(rep, word("u u^-1")), np.eye(4))
    assert np.allclose(evaluate(rep, word("u^-1")), U.conj().T)


def test_pauli_magic_rep_is_exact():
    rep = pauli_magic_rep()
    assert defect(rep, solution_group(magic_square_system())).epsilon < 1e-12


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_direct_sum_defect_is_a_weighted_mean(seed):
    rng = np.random.default_rng(seed)
    pres = abelian_presentation(["a", "b"])
    reps = [perturb(ApproxRep(d, {"a": random_involution(d, rng), "b": np.eye(d)}),
                    0.1, rng) for d in (2, 3)]
    e = [defect(r, pres).epsilon for r in reps]
    s = defect(direct_sum(*reps), pres).epsilon
    assert s <= max(e) + 1e-12
    both = defect(direct_sum(reps[0], reps[0]), pres).epsilon
    assert both == pytest.approx(e[0], abs=1e-12)


def test_tensor_with_exact_rep_keeps_defect(rng):
    pres = abelian_presentation(["a", "b"])
    noisy = perturb(ApproxRep(2, {"a": np.diag([1.0, -1.0]), "b": np.eye(2)}), 0.05, rng)
    exact = ApproxRep(3, {"a": np.diag([1.0, -1.0, 1.0]), "b": np.eye(3)})
    assert defect(tensor(noisy, exact), pres).epsilon == pytest.approx(defect(noisy, pres).epsilon)


def test_rep_json_roundtrip(rng):
    rep = perturb(pauli_magic_rep(), 0.1, rng)
    back = rep_from_json(rep_to_json(rep))
    assert all(np.array_equal(back[g], rep[g]) for g in rep.matrices)


def test_solution_rep():
    sys = BinaryLinearSystem.from_supports(2, [[0, 1]], [1])
    rep = solution_rep(sys, [1, 0])
    assert defect(rep, solution_group(sys)).epsilon < 1e-12
    with pytest.raises(ValueError):
        solution_rep(sys, [0, 0])


# -- stability -----------------------------------------------------------------

def test_constants():
    assert C1 == pytest.approx(1 + 1 / np.sqrt(2))
    assert C0 == pytest.approx(1 + 1 / (2 * np.sqrt(2)))
    assert abelian_constant(1) == pytest.approx(C1)
    assert abelian_constant(2) == pytest.approx(C0 * (4 * C1 + 1) + C1)
    assert abelian_constant_as_printed(2) == pytest.approx(C1)
    assert abelian_constant_as_printed(3) == pytest.approx(abelian_constant(2))


def test_round_to_involution_requires_diagonal():
    with pytest.raises(RepError):
        round_to_involution(np.ones((2, 2)))
    D = round_to_involution(np.diag([0.0, -0.2, 0.3 + 1j]))
    assert np.allclose(np.diagonal(D), [1, -1, 1])


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from([2, 4, 8]))
def test_nearest_involution_of_arbitrary_matrix(seed, d):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    D = nearest_involution(X)
    assert dist(D @ D, np.eye(d)) < 1e-9
    assert dist(D, D.conj().T) < 1e-9


def test_nearest_involution_fixes_involutions(rng):
    X = random_involution(6, rng)
    assert np.array_equal(nearest_involution(X), X)


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from([2, 4, 8, 16]), st.floats(0.001, 0.2))
def test_nearest_involution_on_unitaries(seed, d, s):
    rng = np.random.default_rng(seed)
    X = expi(random_hermitian(d, rng), s) @ random_involution(d, rng)
    D = nearest_involution(X)
    assert dist(D, X) <= C1 * dist(X @ X, np.eye(d)) + 1e-12


def test_round_commuting_hypotheses(rng):
    A = np.diag([1.0, -1.0])
    Xn = np.array([[0, 1], [1, 0]], dtype=complex)
    with pytest.raises(RepError):
        round_commuting([A, Xn], A)  # Xs do not commute
    with pytest.raises(RepError):
        round_commuting([Xn, A], Xn)  # Y fails to commute with X1
    with pytest.raises(RepError):
        round_commuting([A], np.eye(2) * 2)


def test_round_commuting_output(rng):
    from lsgame.acceptance import _commuting_instance
    for d in (2, 4, 8, 16):
        Xs, Y = _commuting_instance(rng, d, 0.1, 2)
        Z = round_commuting(Xs, Y)
        assert dist(Z @ Z, np.eye(d)) < 1e-9
        assert all(dist(Z @ X, X @ Z) < 1e-9 for X in Xs)
        assert dist(Z, Y) <= C0 * dist(Xs[-1] @ Y, Y @ Xs[-1]) + 1e-12


def test_stabilize_abelian_output(rng):
    from lsgame.acceptance import _trial_abelian
    for d in (2, 4, 8, 16):
        moved, bound, exact, _ = _trial_abelian(rng, d, 0.05)
        assert exact < 1e-9 and moved <= bound + 1e-12


def test_split_on_j(rng):
    sys = magic_square_system()
    pres = solution_group(sys)
    exact = pauli_magic_rep()
    plus = ApproxRep(4, {**{g: np.eye(4) for g in sys.names}, J: np.eye(4)})
    mixed = direct_sum(exact, plus)
    noisy = perturb(mixed, 0.01, rng)
    res = split_on_j(noisy, pres, delta=1.0)
    assert res.rep.dim == 4
    assert dist(res.rep[J], -np.eye(4)) < 1e-9
    assert res.block_fraction == pytest.approx(0.5)
    assert defect(res.rep, pres).epsilon <= res.certified + 1e-12
    with pytest.raises(RepError):
        split_on_j(perturb(plus, 0.01, rng), pres, delta=1.0)
    same = split_on_j(exact, pres, delta=1.0)
    assert same.rep is exact


# -- lifts ---------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(seeds)
def test_lift_compile_certificate(seed):
    rng = np.random.default_rng(seed)
    g, rep = random_pauli_lpc(rng)
    sys, psi, _ = compile_lpc(g)
    target = solution_group(sys)
    assert defect(lift_compile(rep, g), target).epsilon < 1e-9
    noisy = perturb(rep, 0.05, rng)
    eps = defect(noisy, presentation_of(g)).epsilon
    lifted = lift_compile(noisy, g)
    assert lifted.dim == 4 * rep.dim
    assert defect(lifted, target).epsilon <= COMPILE_CONSTANT * eps + 1e-12
    assert pullback_residual(lifted, psi.images, noisy, 4) == 0.0


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_lift_nice_is_defect_preserving(seed):
    rng = np.random.default_rng(seed)
    g, rep = random_pauli_lpc(rng)
    nice, _ = nice_embed(g)
    noisy = perturb(rep, 0.05, rng)
    eps = defect(noisy, presentation_of(g)).epsilon
    assert defect(lift_nice(noisy, g), presentation_of(nice)).epsilon <= eps + 1e-12


def test_lift_ehlpc_trivial_rep():
    g, _ = k_group()
    h, psi = lower_ehlpc(g)
    rep = trivial_rep(g.names + g.y_names)
    lifted = lift_ehlpc(rep, g)
    assert lifted.dim == 4
    assert defect(lifted, presentation_of(h)).epsilon < 1e-12
    for g in psi.source:
        assert dist(evaluate(lifted, psi[g]), np.eye(4)) < 1e-12


def test_lift_ehlpc_nontrivial_rep():
    # y of order 3 commuting with b, inverted (= squared) by x
    g, _ = k_group()
    h, psi = lower_ehlpc(g)
    Xp = np.array([[0, 1], [1, 0]], dtype=complex)
    y = expi(Xp, 2 * np.pi / 3)
    rep = ApproxRep(2, {"a": np.eye(2), "b": Xp, "c": Xp, "y": y, "x": np.diag([1.0, -1.0])})
    assert defect(rep, presentation_of(g)).epsilon < 1e-12
    lifted = lift_ehlpc(rep, g)
    assert defect(lifted, presentation_of(h)).epsilon < 1e-12


# -- amplification ---------------------------------------------------------------

@pytest.mark.parametrize("delta,eps,k", [(1.0, 0.5, 10), (2.0, 0.1, 1), (1.0, 1.0, 5)])
def test_tensor_power_exponent(delta, eps, k):
    got = tensor_power_exponent(delta, eps)
    assert got == k
    base = 1 - delta ** 2 / 4
    assert base ** got <= eps ** 2 / 4
    if got > 1:
        assert base ** (got - 1) > eps ** 2 / 4


def test_amplify_small():
    pres = Presentation(("a",), (Word.gen("a", 2),), frozenset({"a"}))
    rep = ApproxRep(1, {"a": -np.eye(1)})
    out = amplify(rep, "a", delta=1.0, eps=0.9, pres=pres)
    assert out.rep.dim == 2 ** out.k
    assert dist(out.rep[J], np.eye(out.rep.dim)) == pytest.approx(2.0)
    assert defect(out.rep, hnn_presentation(pres, "a")).epsilon <= out.certified + 1e-9


def test_amplify_rejects_bad_inputs():
    rep = ApproxRep(1, {"a": np.eye(1)})
    with pytest.raises(RepError):
        amplify(rep, "a", delta=1.0, eps=0.5)
    with pytest.raises(FeasibilityError):
        amplify(ApproxRep(4, {"a": -np.eye(4)}), "a", delta=1.0, eps=0.01)


def test_trace_is_multiplicative(rng):
    X = random_unitary(2, rng)
    rep = ApproxRep(2, {"x": X})
    for k in range(1, 8):
        P = tensor_power(rep, k)["x"]
        assert np.trace(P) / P.shape[0] == pytest.approx((np.trace(X) / 2) ** k, abs=1e-12)
    assert normalized_trace(np.diag([1.0, -1.0])) == 0.0


# -- homomorphisms ---------------------------------------------------------------

def test_perm_helpers():
    p, q = (1, 2, 0), (0, 2, 1)
    assert compose(p, perm_inverse(p)) == (0, 1, 2)
    assert compose(p, q) == tuple(p[i] for i in q)


def test_homs_of_klein_group():
    pres = abelian_presentation(["a", "b"])
    # pairs of commuting involutions in S_3: (e,e), (e,t), (t,e), (t,t)
    assert len(enumerate_homs(pres, 3)) == 1 + 3 + 3 + 3


@pytest.mark.parametrize("k", [1, 2, 3])
def test_k_group_kills_a_in_small_symmetric_groups(k):
    homs = enumerate_homs(k_presentation(), k)
    summary = hom_summary(homs, "a")
    assert summary["count"] == len(homs) > 0
    assert summary["all_identity"]


def test_homs_guards():
    with pytest.raises(ValueError):
        enumerate_homs(solution_group(magic_square_system()), 2)
    with pytest.raises(FeasibilityError):
        enumerate_homs(k_presentation(), 9)
