"""Concrete exact representations used as test beds."""
from __future__ import annotations

from functools import reduce as _fold
from typing import Sequence

import numpy as np

from ..gf2core import BinaryLinearSystem, magic_square_system
from ..presentations import J, LinearPlusConjugacy
from .core import ApproxRep

I2 = np.eye(2, dtype=complex)
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PY = np.array([[0, -1j], [1j, 0]], dtype=complex)
PZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, PX, PY, PZ)


def kron_all(ms: Sequence[np.ndarray]) -> np.ndarray:
    return _fold(np.kron, ms)


def pauli_magic_rep() -> ApproxRep:
    """Two-qubit operator square: rows multiply to I, columns to I except the
    last column (``x3 x6 x9``), which multiplies to ``-I``."""
    sys = magic_square_system()
    ops = [
        np.kron(PX, I2), np.kron(I2, PX), np.kron(PX, PX),
        np.kron(I2, PZ), np.kron(PZ, I2), np.kron(PZ, PZ),
        np.kron(PX, PZ), np.kron(PZ, PX), np.kron(PY, PY),
    ]
    mats = dict(zip(sys.names, ops))
    mats[J] = -np.eye(4, dtype=complex)
    return ApproxRep(4, mats)


def solution_rep(sys: BinaryLinearSystem, x: Sequence[int]) -> ApproxRep:
    """One-dimensional representation ``x_j -> (-1)^{x_j}``, ``J -> -1``."""
    if not sys.is_solution(x):
        raise ValueError("x does not solve the system")
    mats = {name: np.array([[(-1.0) ** v]], dtype=complex) for name, v in zip(sys.names, x)}
    mats[J] = -np.eye(1, dtype=complex)
    return ApproxRep(1, mats)


def _random_pauli(q: int, rng) -> np.ndarray:
    idx = rng.integers(0, 4, size=q)
    if not idx.any():
        idx[rng.integers(0, q)] = rng.integers(1, 4)
    return kron_all([PAULIS[i] for i in idx]) * rng.choice([-1.0, 1.0])


def _commute(A, B) -> bool:
    return np.allclose(A @ B, B @ A)


def random_pauli_lpc(rng: np.random.Generator, max_n: int = 4, max_c: int = 2,
                     max_qubits: int = 2) -> tuple[LinearPlusConjugacy, ApproxRep]:
    """A random small LPC together with an exact Pauli representation (J = -I).

    Variables are signed Pauli strings.  Rows close a commuting set with its
    signed product; conjugacy triples record ``P_i P_j P_i = P_k``.
    """
    q = int(rng.integers(1, max_qubits + 1))
    d = 2 ** q
    imgs: list[np.ndarray] = [_random_pauli(q, rng)]
    rows: list[int] = []
    b: list[int] = []
    C: list[tuple[int, int, int]] = []
    target_n = int(rng.integers(2, max_n + 1))
    while len(imgs) < target_n:
        choice = rng.random()
        if choice < 0.5 or not rows:
            # new row: commuting subset plus its signed product
            k = int(rng.integers(1, min(2, len(imgs)) + 1))
            subset = list(rng.choice(len(imgs), size=k, replace=False))
            if k == 2 and not _commute(imgs[subset[0]], imgs[subset[1]]):
                subset = subset[:1]
            sign = rng.choice([-1.0, 1.0])
            prod = _fold(lambda A, B: A @ B, [imgs[j] for j in sorted(subset)])
            imgs.append(sign * prod)
            rows.append(sum(1 << j for j in subset) | (1 << (len(imgs) - 1)))
            b.append(1 if sign < 0 else 0)
        elif choice < 0.8 and len(C) < max_c:
            i, j = (int(v) for v in rng.integers(0, len(imgs), size=2))
            imgs.append(imgs[i] @ imgs[j] @ imgs[i])
            C.append((i, j, len(imgs) - 1))
        else:
            imgs.append(_random_pauli(q, rng))
    # extra triples among existing variables where the identity holds exactly
    for _ in range(max_c - len(C)):
        i, j, k = (int(v) for v in rng.integers(0, len(imgs), size=3))
        if np.allclose(imgs[i] @ imgs[j] @ imgs[i], imgs[k]) and rng.random() < 0.5:
            C.append((i, j, k))
    n = len(imgs)
    sys = BinaryLinearSystem(n, tuple(rows), tuple(b))
    mats = dict(zip(sys.names, imgs))
    mats[J] = -np.eye(d, dtype=complex)
    return LinearPlusConjugacy(sys, tuple(C)), ApproxRep(d, mats)
