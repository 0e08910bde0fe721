"""Executable acceptance criteria, shared by ``lsgame selftest`` and the tests.

Each check returns a ``CheckResult`` carrying a pass flag, a one-line
detail string and measured numbers.  Tolerances are module constants.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .compiler import build_counterexample, compile_lpc, max_alice_outputs
from .gf2core import BinaryLinearSystem, brute_force_solve, gf2_solve, magic_square_system
from .games import (
    ObservableStrategy, classical_perfect, classical_perfect_search, game_of,
    strategy_from_rep, win_stats,
)
from .presentations import (
    J, Presentation, Word, build_w, build_w_term, commutator, hnn_presentation,
    internalize_word, k_presentation, presentation_of, solution_group,
)
from .replab.amplify import amplify
from .replab.core import (
    ApproxRep, defect, dist, evaluate, expi, perturb, random_hermitian, random_unitary,
)
from .replab.homs import enumerate_homs
from .replab.lifts import (
    COMPILE_CONSTANT, extend_by_internalization, lift_compile, pullback_residual,
)
from .replab.models import pauli_magic_rep, random_pauli_lpc
from .replab.stability import (
    C0, C1, abelian_constant_as_printed, abelian_presentation,
    nearest_involution, round_commuting, round_to_involution, stabilize_abelian,
)

EXACT_TOL = 1e-9
BOUND_SLACK = 1e-12
SCALES = (0.01, 0.05, 0.1)
DIMS = (2, 4, 8, 16)
DEFAULT_SEED = 20240601


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(number: int, name: str, fn: Callable[[], tuple[bool, str, dict]],
           budget: Optional[float] = None) -> CheckResult:
    t = time.perf_counter()
    ok, detail, data = fn()
    dt = time.perf_counter() - t
    if budget is not None and dt > budget:
        ok = False
        detail += f"; runtime {dt:.1f}s over budget {budget:.0f}s"
    return CheckResult(number, name, ok, detail, dt, data)


# -- 1 ------------------------------------------------------------------------

def check_flagship_sizes() -> CheckResult:
    def run():
        sys, psi, rep = build_counterexample()
        problems = []
        if (sys.n, sys.m) != (235, 184):
            problems.append(f"final sizes {(sys.n, sys.m)}")
        hnn = next(p for p in rep.passes if p.name == "hnn_z2")
        if (hnn.after["variables"], hnn.after["equations"], hnn.after["triples"]) != (14, 2, 10):
            problems.append(f"intermediate LPC {hnn.after}")
        for p in rep.passes:
            if p.forecast:
                for key, val in p.forecast.items():
                    if p.after.get(key) != val:
                        problems.append(f"{p.name} {key}: forecast {val} vs {p.after.get(key)}")
        lowered = next(p for p in rep.passes if p.name == "lower_ehlpc")
        if (lowered.after["variables"], lowered.after["triples"]) != (12, 9):
            problems.append(f"lowered HLPC {lowered.after}")
        game = game_of(sys)
        if (game.alice_inputs, game.bob_inputs) != (184, 235):
            problems.append("game input sizes")
        detail = (f"{sys.n} variables, {sys.m} equations; intermediate "
                  f"{hnn.after['variables']}/{hnn.after['equations']}/{hnn.after['triples']}; "
                  f"max Alice outputs {max_alice_outputs(sys)}")
        if problems:
            detail += "; " + "; ".join(problems)
        return not problems, detail, {"variables": sys.n, "equations": sys.m}
    return _timed(1, "flagship size reproduction", run, budget=10)


# -- 2 ------------------------------------------------------------------------

def check_magic_square() -> CheckResult:
    def run():
        sys = magic_square_system()
        inconsistent = gf2_solve(sys) is None and brute_force_solve(sys) is None
        no_classical = not classical_perfect(sys) and not classical_perfect_search(sys)
        s = strategy_from_rep(pauli_magic_rep(), sys)
        stats = win_stats(s, game_of(sys))
        worst = max(abs(st.p - 1) for st in stats)
        ok = inconsistent and no_classical and len(stats) == 18 and worst <= EXACT_TOL
        detail = (f"GF(2) inconsistent={inconsistent}, classical perfect={not no_classical}, "
                  f"{len(stats)} pairs, max |p-1| = {worst:.2e}")
        return ok, detail, {"max_deviation": worst}
    return _timed(2, "magic-square regression", run, budget=5)


# -- 3 ------------------------------------------------------------------------

def _trial_involution(rng, d, s):
    signs = rng.choice([-1.0, 1.0], size=d)
    noise = s * (rng.standard_normal(d) + 1j * rng.standard_normal(d))
    X = np.diag(signs + noise)
    D = round_to_involution(X)
    exact = dist(D @ D, np.eye(d))
    bound = C1 * dist(X @ X, np.eye(d))
    return dist(D, X), bound, exact


def _commuting_instance(rng, d, s, n):
    V = random_unitary(d, rng)
    diag_signs = [rng.choice([-1.0, 1.0], size=d) for _ in range(n)]
    Xs = [(V * sg) @ V.conj().T for sg in diag_signs]
    Yb = np.zeros((d, d), dtype=complex)
    keys = [tuple(sg[i] for sg in diag_signs[:-1]) for i in range(d)]
    for key in set(keys):
        idx = [i for i in range(d) if keys[i] == key]
        k = len(idx)
        U = expi(random_hermitian(k, rng), s) if k > 1 else np.eye(1)
        D = np.diag(rng.choice([-1.0, 1.0], size=k))
        Yb[np.ix_(idx, idx)] = U @ D @ U.conj().T
    Y = V @ Yb @ V.conj().T
    return Xs, (Y + Y.conj().T) / 2


def _trial_commuting(rng, d, s):
    n = int(rng.integers(1, 4))
    Xs, Y = _commuting_instance(rng, d, s, n)
    Z = round_commuting(Xs, Y)
    exact = max([dist(Z @ Z, np.eye(d))] + [dist(Z @ X, X @ Z) for X in Xs])
    bound = C0 * dist(Xs[-1] @ Y, Y @ Xs[-1])
    return dist(Z, Y), bound, exact


def _trial_abelian(rng, d, s):
    k = int(rng.integers(2, 4))
    V = random_unitary(d, rng)
    exact_imgs = [(V * rng.choice([-1.0, 1.0], size=d)) @ V.conj().T for _ in range(k)]
    phi = [expi(random_hermitian(d, rng), s * rng.random()) @ X for X in exact_imgs]
    names = [f"x{i + 1}" for i in range(k)]
    eps = defect(ApproxRep(d, dict(zip(names, phi))), abelian_presentation(names)).epsilon
    res = stabilize_abelian(phi)
    exact = 0.0
    for i, P in enumerate(res.images):
        exact = max(exact, dist(P @ P, np.eye(d)))
        for Q in res.images[i + 1:]:
            exact = max(exact, dist(P @ Q, Q @ P))
    moved = max(dist(P, F) for P, F in zip(res.images, phi))
    return moved, res.constant * eps, exact, (moved / eps if eps > 0 else 0.0,
                                               abelian_constant_as_printed(k) * eps)


def check_stability(rng: np.random.Generator, trials: int = 1000) -> CheckResult:
    def run():
        counts = {}
        worst_exact = 0.0
        printed_violations = 0
        worst_ratio = {}
        for lemma, fn in (("involution", _trial_involution), ("commuting", _trial_commuting),
                          ("abelian", _trial_abelian)):
            bad = 0
            ratio = 0.0
            for s in SCALES:
                for t in range(trials):
                    d = DIMS[t % len(DIMS)]
                    out = fn(rng, d, s)
                    moved, bound, exact = out[:3]
                    if moved > bound + BOUND_SLACK:
                        bad += 1
                    if exact > EXACT_TOL:
                        bad += 1
                    worst_exact = max(worst_exact, exact)
                    if bound > 0:
                        ratio = max(ratio, moved / bound)
                    if lemma == "abelian" and moved > out[3][1] + BOUND_SLACK:
                        printed_violations += 1
            counts[lemma] = bad
            worst_ratio[lemma] = ratio
        ok = all(v == 0 for v in counts.values())
        detail = (f"violations {counts}, worst distance/bound "
                  + ", ".join(f"{k}={v:.3f}" for k, v in worst_ratio.items())
                  + f", worst exactness residual {worst_exact:.1e}"
                  + f"; exponent k-2 constant exceeded in {printed_violations} abelian trials")
        return ok, detail, {"violations": counts, "ratios": worst_ratio,
                            "printed_constant_violations": printed_violations}
    return _timed(3, "stability bounds", run, budget=120)


# -- 4 ------------------------------------------------------------------------

def check_lifts(rng: np.random.Generator, trials: int = 500) -> CheckResult:
    def run():
        worst_ratio = 0.0
        worst_exact = 0.0
        block_mismatch = 0
        violations = 0
        for t in range(trials):
            g, rep = random_pauli_lpc(rng)
            pres = presentation_of(g)
            sys, psi, _ = compile_lpc(g)
            target = solution_group(sys)
            exact = lift_compile(rep, g)
            worst_exact = max(worst_exact, defect(exact, target).epsilon)
            if pullback_residual(exact, psi.images, rep, 4) != 0.0:
                block_mismatch += 1
            noisy = perturb(rep, 0.1 * rng.random() + 1e-4, rng)
            eps = defect(noisy, pres).epsilon
            lifted = lift_compile(noisy, g)
            if pullback_residual(lifted, psi.images, noisy, 4) != 0.0:
                block_mismatch += 1
            e = defect(lifted, target).epsilon
            if e > COMPILE_CONSTANT * eps + BOUND_SLACK:
                violations += 1
            worst_ratio = max(worst_ratio, e / eps)
        ok = violations == 0 and block_mismatch == 0 and worst_exact <= EXACT_TOL
        detail = (f"{trials} trials, bound violations {violations}, worst defect/eps "
                  f"{worst_ratio:.3f} (certified {COMPILE_CONSTANT:.0f}), block mismatches "
                  f"{block_mismatch}, exact-input defect {worst_exact:.1e}")
        return ok, detail, {"worst_ratio": worst_ratio}
    return _timed(4, "lift certification", run)


# -- 5 ------------------------------------------------------------------------

def check_finite_triviality(max_degree: int = 4) -> CheckResult:
    def run():
        pres = k_presentation()
        counts = {}
        ok = True
        for k in range(1, max_degree + 1):
            homs = enumerate_homs(pres, k)
            ident = tuple(range(k))
            counts[k] = len(homs)
            if not homs or any(h["a"] != ident for h in homs):
                ok = False
        detail = "homomorphism counts " + ", ".join(f"S{k}:{c}" for k, c in counts.items()) + \
                 f"; a -> identity in all: {ok}"
        return ok, detail, {"counts": counts}
    return _timed(5, "finite-triviality oracle", run, budget=120)


# -- 6 ------------------------------------------------------------------------

def amplification_input() -> tuple[Presentation, ApproxRep]:
    """``<a, b : a^2, b^2, [a, b]>`` with the 1-dimensional ``a -> -1, b -> 1``."""
    pres = Presentation(("a", "b"), (Word.gen("a", 2), Word.gen("b", 2), commutator("a", "b")),
                        frozenset({"a", "b"}))
    rep = ApproxRep(1, {"a": -np.eye(1), "b": np.eye(1)})
    return pres, rep


def check_amplification(rng: np.random.Generator) -> CheckResult:
    def run():
        pres, rep = amplification_input()
        out = amplify(rep, "a", delta=1.0, eps=0.5, pres=pres)
        hat = hnn_presentation(pres, "a", out.t)
        measured = defect(out.rep, hat).epsilon
        jgap = dist(out.rep[J], np.eye(out.rep.dim))
        mult = 0.0
        for X in (random_unitary(2, rng), np.diag([-1.0, 1.0]), nearest_involution(random_unitary(2, rng))):
            base = np.trace(X) / 2
            P = np.eye(1)
            for k in range(1, 11):
                P = np.kron(P, X)
                mult = max(mult, abs(np.trace(P) / P.shape[0] - base ** k))
        ok = (out.k == 10 and abs(jgap - 2) <= EXACT_TOL and out.certified <= 0.5
              and measured <= out.certified + EXACT_TOL and mult <= EXACT_TOL)
        detail = (f"k = {out.k}, dim {out.rep.dim}, ||psi(J) - I|| = {jgap:.12f}, certified "
                  f"{out.certified:.3g}, measured {measured:.3g}, trace multiplicativity "
                  f"error {mult:.1e}")
        return ok, detail, {"k": out.k}
    return _timed(6, "amplification", run)


# -- 7 ------------------------------------------------------------------------

def _monomial(d, rng):
    P = np.eye(d)[rng.permutation(d)]
    return P * rng.choice([-1.0, 1.0], size=d)


def check_word_machinery(rng: np.random.Generator, d: int = 8) -> CheckResult:
    def run():
        S0, S1 = {"z1"}, {"z1", "a", "a'"}
        counts = {}
        worst = 0.0
        ok = True
        for m in range(1, 5):
            res = internalize_word(build_w_term(m), S0, S1, involutary=S0)
            counts[m] = len(res.ancillas)
            ok &= counts[m] == 4 * m
            base = ApproxRep(d, {"z1": np.diag(rng.choice([-1.0, 1.0], size=d)),
                                 "a": _monomial(d, rng), "a'": _monomial(d, rng)})
            full = extend_by_internalization(base, res)
            rels = res.relations + res.involution_relations()
            worst = max(worst, defect(full, rels).epsilon)
            worst = max(worst, dist(evaluate(full, build_w(m)), full[res.target]))
        ok &= worst <= EXACT_TOL
        detail = ("ancillas " + ", ".join(f"w({m}):{c}" for m, c in counts.items())
                  + f"; max residual {worst:.1e}")
        return ok, detail, {"counts": counts}
    return _timed(7, "word machinery", run)


# -- 8 ------------------------------------------------------------------------

def random_valid_strategy(rng: np.random.Generator, d_max: int = 16
                          ) -> tuple[BinaryLinearSystem, ObservableStrategy]:
    m = int(rng.integers(1, 4))
    n = int(rng.integers(1, 5))
    rows, b = [], []
    for _ in range(m):
        mask = 0
        while not mask:
            mask = int(rng.integers(1, 1 << n))
        rows.append(mask)
        b.append(int(rng.integers(0, 2)))
    sys = BinaryLinearSystem(n, tuple(rows), tuple(b))
    d = int(rng.choice([x for x in (1, 2, 4, 8, 16) if x <= d_max]))
    X = [(lambda U: (U * rng.choice([-1.0, 1.0], size=d)) @ U.conj().T)(random_unitary(d, rng))
         for _ in range(n)]
    Y = []
    for i in range(m):
        k = bin(rows[i]).count("1")
        U = random_unitary(d, rng)
        Ys = [(U * rng.choice([-1.0, 1.0], size=d)) @ U.conj().T for _ in range(k - 1)]
        last = (-1) ** b[i] * np.eye(d, dtype=complex)
        for M in Ys:
            last = last @ M
        Y.append(Ys + [last])
    s = ObservableStrategy(d, X, Y)
    s.validate(sys, tol=1e-8)
    return sys, s


def perturbed_magic_biases(rng: np.random.Generator, scale: float, trials: int):
    """(epsilon, min bias) for strategies from rounded perturbations of the
    Pauli representation."""
    sys = magic_square_system()
    pres = solution_group(sys)
    exact = pauli_magic_rep()
    game = game_of(sys)
    out = []
    for _ in range(trials):
        noisy = perturb(exact, scale, rng, gens=sys.names)
        rounded = ApproxRep(4, {g: (M if g == J else nearest_involution(M))
                                for g, M in noisy.matrices.items()})
        eps = defect(rounded, pres).epsilon
        s = strategy_from_rep(rounded, sys)
        out.append((eps, min(st.bias for st in win_stats(s, game))))
    return out


def check_bias_identity(rng: np.random.Generator, strategies: int = 100,
                        trials_per_scale: int = 30) -> CheckResult:
    def run():
        worst = 0.0
        for _ in range(strategies):
            sys, s = random_valid_strategy(rng)
            for st in win_stats(s, game_of(sys)):
                worst = max(worst, abs(st.bias - st.trace_bias))
        per_scale = {}
        samples = []
        for scale in (0.01, 0.02, 0.05):
            res = perturbed_magic_biases(rng, scale, trials_per_scale)
            samples += res
            per_scale[scale] = (max(e for e, _ in res), max(1 - b for _, b in res),
                                max((1 - b) / e ** 2 for e, b in res))
        kappa = max(k for _, _, k in per_scale.values())
        holds = all(b >= 1 - kappa * e ** 2 - 1e-12 for e, b in samples)
        deficits = [per_scale[s][1] for s in (0.01, 0.02, 0.05)]
        monotone = deficits[0] <= deficits[1] <= deficits[2]
        ok = worst <= EXACT_TOL and holds and monotone
        detail = (f"bias identity max gap {worst:.1e} over {strategies} strategies; "
                  f"kappa = {kappa:.3f}; worst deficits "
                  + ", ".join(f"eps~{s}:{per_scale[s][1]:.2e}" for s in per_scale)
                  + f"; monotone={monotone}")
        return ok, detail, {"kappa": kappa, "per_scale": per_scale}
    return _timed(8, "bias identity", run)


def run_all(seed: int = DEFAULT_SEED, quick: bool = False) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    trials = 100 if quick else 1000
    return [
        check_flagship_sizes(),
        check_magic_square(),
        check_stability(rng, trials),
        check_lifts(rng, 50 if quick else 500),
        check_finite_triviality(3 if quick else 4),
        check_amplification(rng),
        check_word_machinery(rng),
        check_bias_identity(rng, 20 if quick else 100, 5 if quick else 30),
    ]
