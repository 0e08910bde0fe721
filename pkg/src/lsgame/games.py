"""Linear system games, quantum strategies and their correlations.

The shared state is always the maximally entangled state on ``C^d (x) C^d``
and is never materialized: ``<v| A (x) B |v> = tr(A^T B) / d``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import reduce as _fold
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .gf2core import (
    BinaryLinearSystem, gf2_solve, row_support, satisfying_assignments,
)
from .presentations import J
from .replab.core import ApproxRep, RepError, dist
from .replab.stability import stabilize_abelian

TOL = 1e-9


@dataclass(frozen=True)
class Game:
    """Alice gets a row ``i`` and answers a satisfying assignment of it;
    Bob gets a column ``j`` and answers a bit.  They win unless ``j`` is in
    the row and the answers disagree on it."""

    sys: BinaryLinearSystem
    supports: tuple[tuple[int, ...], ...]
    alice_outputs: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def alice_inputs(self) -> int:
        return self.sys.m

    @property
    def bob_inputs(self) -> int:
        return self.sys.n

    def wins(self, i: int, j: int, a: Sequence[int], b: int) -> bool:
        supp = self.supports[i]
        if j not in supp:
            return True
        return a[supp.index(j)] == b

    def to_json(self) -> dict:
        return {
            "alice_inputs": self.alice_inputs,
            "bob_inputs": self.bob_inputs,
            "supports": [list(s) for s in self.supports],
            "alice_outputs": [["".join(map(str, a)) for a in outs] for outs in self.alice_outputs],
            "bob_outputs": [0, 1],
            "predicate": "consistent: j not in V_i, or a_j == b",
        }


def game_of(sys: BinaryLinearSystem) -> Game:
    supports = tuple(tuple(row_support(sys, i)) for i in range(sys.m))
    outs = tuple(tuple(satisfying_assignments(sys, i)) for i in range(sys.m))
    return Game(sys, supports, outs)


# -- strategies --------------------------------------------------------------

@dataclass
class ObservableStrategy:
    """``X[j]`` for Bob; ``Y[i][t]`` for Alice, aligned with row ``i``'s support."""

    dim: int
    X: list[np.ndarray]
    Y: list[list[np.ndarray]]

    def validate(self, sys: BinaryLinearSystem, tol: float = TOL) -> None:
        I = np.eye(self.dim)
        if len(self.X) != sys.n or len(self.Y) != sys.m:
            raise ValueError("strategy shape does not match the system")
        for j, X in enumerate(self.X):
            if dist(X @ X, I) > tol:
                raise ValueError(f"X[{j}] is not an involution")
        for i, Ys in enumerate(self.Y):
            supp = row_support(sys, i)
            if len(Ys) != len(supp):
                raise ValueError(f"row {i} needs {len(supp)} observables")
            for Y in Ys:
                if dist(Y @ Y, I) > tol:
                    raise ValueError(f"an observable of row {i} is not an involution")
            for s, A in enumerate(Ys):
                for B in Ys[s + 1:]:
                    if dist(A @ B, B @ A) > tol:
                        raise ValueError(f"observables of row {i} do not commute")
            prod = _fold(lambda A, B: A @ B, Ys)
            if dist(prod, (-1) ** sys.b[i] * I) > tol:
                raise ValueError(f"row {i} observables multiply to the wrong sign")


@dataclass
class MeasurementStrategy:
    """``M[i][a]`` projectors per satisfying assignment; ``N[j][b]`` per bit."""

    dim: int
    M: list[list[np.ndarray]]
    N: list[list[np.ndarray]]

    def validate(self, tol: float = TOL) -> None:
        I = np.eye(self.dim)
        for fam in list(self.M) + list(self.N):
            if dist(sum(fam), I) > tol:
                raise ValueError("projectors do not sum to the identity")
            for s, P in enumerate(fam):
                if dist(P @ P, P) > tol or dist(P, P.conj().T) > tol:
                    raise ValueError("measurement operator is not a projector")
                for Q in fam[s + 1:]:
                    if hs_max(P @ Q) > tol:
                        raise ValueError("projectors are not orthogonal")


def hs_max(M) -> float:
    return float(np.sqrt(np.vdot(M, M).real / M.shape[0]))


def observables_to_measurements(s: ObservableStrategy, sys: BinaryLinearSystem) -> MeasurementStrategy:
    s.validate(sys)
    I = np.eye(s.dim, dtype=complex)
    N = [[(I + X) / 2, (I - X) / 2] for X in s.X]
    M = []
    for i, Ys in enumerate(s.Y):
        row = []
        for a in satisfying_assignments(sys, i):
            row.append(_fold(lambda A, B: A @ B,
                             [(I + (-1) ** aj * Y) / 2 for aj, Y in zip(a, Ys)]))
        M.append(row)
    return MeasurementStrategy(s.dim, M, N)


def measurements_to_observables(ms: MeasurementStrategy, sys: BinaryLinearSystem) -> ObservableStrategy:
    ms.validate()
    X = [N[0] - N[1] for N in ms.N]
    Y = []
    for i, Ms in enumerate(ms.M):
        outs = satisfying_assignments(sys, i)
        k = len(row_support(sys, i))
        Y.append([sum((-1) ** a[t] * P for a, P in zip(outs, Ms)) for t in range(k)])
    return ObservableStrategy(ms.dim, X, Y)


def strategy_from_rep(rep: ApproxRep, sys: BinaryLinearSystem) -> ObservableStrategy:
    """Observable strategy from a representation with ``J = -I``.

    Bob uses ``X_j = rep(x_j)``.  For row ``i`` with largest variable ``j_i``
    the other variables are rounded to commuting involutions ``psi_i``;
    Alice uses their transposes and fixes ``Y_{i j_i}`` by the row's sign.
    """
    d = rep.dim
    I = np.eye(d)
    if dist(rep.image(J), -I) > TOL:
        raise RepError("strategy_from_rep needs J mapped to -I")
    X = []
    for name in sys.names:
        M = rep.image(name)
        if dist(M @ M, I) > TOL or dist(M, M.conj().T) > TOL:
            raise RepError(f"image of {name} is not an exact involution (round first)")
        X.append(M)
    Y = []
    for i in range(sys.m):
        supp = row_support(sys, i)
        W = supp[:-1]
        psi = stabilize_abelian([X[j] for j in W]).images
        Ys = [P.T for P in psi]
        last = (-1) ** sys.b[i] * _fold(lambda A, B: A @ B, Ys, np.eye(d, dtype=complex))
        Y.append(Ys + [last])
    s = ObservableStrategy(d, X, Y)
    s.validate(sys, tol=1e-8)
    return s


# -- correlations ------------------------------------------------------------

def _pair(A, B) -> float:
    """``tr(A^T B)`` summed elementwise."""
    return float(np.sum(A * B).real)


@dataclass
class CorrelationTable:
    """``p[(i, j)]`` has shape ``(|S_i|, 2)`` indexed like the game outputs."""

    game: Game
    p: dict[tuple[int, int], np.ndarray]

    def rows(self):
        for (i, j), P in sorted(self.p.items()):
            for ai, a in enumerate(self.game.alice_outputs[i]):
                for b in (0, 1):
                    yield i, j, a, b, float(P[ai, b])

    def to_csv(self, digits: int = 12) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "a", "b", "p"])
        for i, j, a, b, p in self.rows():
            w.writerow([i, j, "".join(map(str, a)), b, f"{max(p, 0.0):.{digits}f}"])
        return buf.getvalue()


def _as_measurements(s, sys) -> MeasurementStrategy:
    return observables_to_measurements(s, sys) if isinstance(s, ObservableStrategy) else s


def correlation(s: Union[ObservableStrategy, MeasurementStrategy], game: Game,
                pairs: Optional[Sequence[tuple[int, int]]] = None) -> CorrelationTable:
    ms = _as_measurements(s, game.sys)
    if len(ms.M) != game.alice_inputs or len(ms.N) != game.bob_inputs:
        raise ValueError("strategy does not match the game")
    if pairs is None:
        pairs = [(i, j) for i in range(game.alice_inputs) for j in range(game.bob_inputs)]
    d = ms.dim
    out = {}
    for i, j in pairs:
        P = np.empty((len(ms.M[i]), 2))
        for ai, Ma in enumerate(ms.M[i]):
            if Ma.shape[0] != d or ms.N[j][0].shape[0] != d:
                raise ValueError("dimension mismatch")
            for b in (0, 1):
                P[ai, b] = _pair(Ma, ms.N[j][b]) / d
        out[(i, j)] = P
    return CorrelationTable(game, out)


@dataclass(frozen=True)
class PairStat:
    i: int
    j: int
    p: float
    bias: float
    trace_bias: float


def win_stats(s: ObservableStrategy, game: Game) -> list[PairStat]:
    """Winning probability and bias for every pair with ``j`` in row ``i``."""
    pairs = [(i, j) for i, supp in enumerate(game.supports) for j in supp]
    table = correlation(s, game, pairs)
    d = s.dim
    stats = []
    for i, j in pairs:
        t = game.supports[i].index(j)
        P = table.p[(i, j)]
        p = sum(P[ai, a[t]] for ai, a in enumerate(game.alice_outputs[i]))
        tb = _pair(s.Y[i][t], s.X[j]) / d
        stats.append(PairStat(i, j, float(p), float(2 * p - 1), float(tb)))
    return stats


def row_summary(stats: Sequence[PairStat], m: int) -> list[tuple[int, float, float]]:
    out = []
    for i in range(m):
        mine = [s for s in stats if s.i == i]
        out.append((i, min(s.p for s in mine), min(s.bias for s in mine)))
    return out


# -- classical baseline ------------------------------------------------------

def classical_perfect(sys: BinaryLinearSystem) -> bool:
    return gf2_solve(sys) is not None


def classical_perfect_search(sys: BinaryLinearSystem, limit: int = 10 ** 6) -> bool:
    """Backtracking over Alice's deterministic strategies: a perfect classical
    strategy exists iff her per-row answers agree on shared variables."""
    game = game_of(sys)
    total = 1
    for outs in game.alice_outputs:
        total *= len(outs)
    if total > limit:
        raise ValueError(f"{total} Alice strategies exceed the search limit {limit}")
    assign: dict[int, int] = {}

    def go(i: int) -> bool:
        if i == sys.m:
            return True
        supp = game.supports[i]
        for a in game.alice_outputs[i]:
            if all(assign.get(j, v) == v for j, v in zip(supp, a)):
                added = [j for j in supp if j not in assign]
                for j, v in zip(supp, a):
                    assign.setdefault(j, v)
                if go(i + 1):
                    return True
                for j in added:
                    del assign[j]
        return False

    return go(0)


# -- serialization -----------------------------------------------------------

def _mat(M):
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def _unmat(data, d):
    arr = np.asarray(data, dtype=float)
    if arr.shape != (d, d, 2):
        raise ValueError(f"expected a {d}x{d} matrix of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def strategy_to_json(s: ObservableStrategy) -> dict:
    return {"dim": s.dim, "X": [_mat(X) for X in s.X],
            "Y": [[_mat(Y) for Y in Ys] for Ys in s.Y]}


def strategy_from_json(data: dict) -> ObservableStrategy:
    try:
        d = int(data["dim"])
        X = [_unmat(M, d) for M in data["X"]]
        Y = [[_unmat(M, d) for M in Ys] for Ys in data["Y"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed strategy JSON: {exc}") from None
    return ObservableStrategy(d, X, Y)


def write_strategy(s: ObservableStrategy, path) -> None:
    Path(path).write_text(json.dumps(strategy_to_json(s)) + "\n", encoding="utf-8")


def read_strategy(path) -> ObservableStrategy:
    try:
        return strategy_from_json(json.loads(Path(path).read_text(encoding="utf-8")))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc})") from None
