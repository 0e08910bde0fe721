"""Rounding approximate representations to exact ones.

Each routine returns its output together with the constant that certifies
the distance bound, so callers can assert ``distance <= constant * input``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import schur

from ..presentations import J, Presentation
from .core import ApproxRep, RepError, defect, dist, hs_norm

C1 = 1 + 1 / np.sqrt(2)          # involution rounding
C0 = 1 + 1 / (2 * np.sqrt(2))    # commuting rounding
HYP_TOL = 1e-9
CLUSTER_TOL = 1e-8


def abelian_constant(k: int) -> float:
    """Distance constant for rounding an epsilon-representation of Z2^k.

    ``k - 1`` commuting rounds follow the involution rounding, each growing
    the defect by a factor ``4 C0 + 1``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    return 0.25 * ((4 * C0 + 1) ** (k - 1) - 1) * (4 * C1 + 1) + C1


def abelian_constant_as_printed(k: int) -> float:
    """The same closed form with exponent ``k - 2`` (kept for comparison)."""
    return 0.25 * ((4 * C0 + 1) ** (k - 2) - 1) * (4 * C1 + 1) + C1


def _is_diagonal(X: np.ndarray, tol: float = 0.0) -> bool:
    off = X - np.diag(np.diagonal(X))
    return bool(np.max(np.abs(off), initial=0.0) <= tol)


def round_to_involution(X) -> np.ndarray:
    """``D_ii = sgn Re X_ii`` with ``sgn 0 = +1``."""
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or not _is_diagonal(X):
        raise RepError("round_to_involution needs a diagonal matrix")
    signs = np.where(np.diagonal(X).real >= 0, 1.0, -1.0)
    return np.diag(signs).astype(complex)


def nearest_involution(X) -> np.ndarray:
    """Involution rounding of a normal matrix in its Schur basis."""
    X = np.asarray(X, dtype=complex)
    if dist(X, X.conj().T) <= 1e-14 and dist(X @ X, np.eye(len(X))) <= 1e-14:
        return X
    T, Q = schur(X, output="complex")
    D = round_to_involution(np.diag(np.diagonal(T)))
    Z = Q @ D @ Q.conj().T
    return (Z + Z.conj().T) / 2


def _joint_basis(mats: Sequence[np.ndarray]) -> np.ndarray:
    """Unitary simultaneously diagonalizing commuting Hermitian matrices."""
    d = mats[0].shape[0]
    # fixed generic weights keep the result deterministic
    weights = np.sqrt(np.arange(2, len(mats) + 2)) * np.pi / 3
    H = sum(w * M for w, M in zip(weights, mats))
    _, V = np.linalg.eigh((H + H.conj().T) / 2)
    if all(_is_diagonal(V.conj().T @ M @ V, CLUSTER_TOL * max(1.0, hs_norm(M)))
           for M in mats):
        return V
    # sequential refinement: split each block along each matrix's eigenvalues
    blocks = [np.eye(d, dtype=complex)]
    for M in mats:
        refined = []
        for B in blocks:
            sub = B.conj().T @ M @ B
            w, U = np.linalg.eigh((sub + sub.conj().T) / 2)
            start = 0
            for i in range(1, len(w) + 1):
                if i == len(w) or w[i] - w[i - 1] > CLUSTER_TOL:
                    refined.append(B @ U[:, start:i])
                    start = i
        blocks = refined
    return np.hstack(blocks)


def _check_involution(X, name):
    I = np.eye(X.shape[0])
    if dist(X @ X, I) > HYP_TOL or dist(X, X.conj().T) > HYP_TOL:
        raise RepError(f"{name} is not an involution")


def _commutes(A, B) -> float:
    return dist(A @ B, B @ A)


def round_commuting(Xs: Sequence[np.ndarray], Y) -> np.ndarray:
    """Involution ``Z`` commuting with all of ``Xs`` and close to ``Y``.

    Hypotheses: ``Xs`` are commuting involutions, ``Y`` is an involution
    commuting with all but the last of them.
    """
    Xs = [np.asarray(X, dtype=complex) for X in Xs]
    Y = np.asarray(Y, dtype=complex)
    if not Xs:
        raise RepError("round_commuting needs at least one X")
    for i, X in enumerate(Xs):
        _check_involution(X, f"X{i + 1}")
        for X2 in Xs[:i]:
            if _commutes(X, X2) > HYP_TOL:
                raise RepError("the X matrices do not commute")
    _check_involution(Y, "Y")
    for X in Xs[:-1]:
        if _commutes(X, Y) > HYP_TOL:
            raise RepError("Y must commute with every X except the last")
    Xn = Xs[-1]
    if _commutes(Xn, Y) <= 1e-14:
        return Y
    Z0 = (Y + Xn @ Y @ Xn) / 2
    V = _joint_basis(Xs + [Z0])
    D = round_to_involution(np.diag(np.diagonal(V.conj().T @ Z0 @ V)))
    Z = V @ D @ V.conj().T
    return (Z + Z.conj().T) / 2


@dataclass
class Stabilized:
    images: list[np.ndarray]
    constant: float


def stabilize_abelian(mats: Sequence[np.ndarray]) -> Stabilized:
    """Exact representation of Z2^k near an approximate one.

    Returns commuting involutions ``psi_i`` with
    ``||psi_i - phi_i|| <= abelian_constant(k) * eps``.
    """
    mats = [np.asarray(M, dtype=complex) for M in mats]
    k = len(mats)
    if k == 0:
        return Stabilized([], 0.0)
    d = mats[0].shape[0]
    if any(M.shape != (d, d) for M in mats):
        raise RepError("all images must have the same dimension")
    psi = [nearest_involution(M) for M in mats]
    for l in range(1, k):
        fixed = psi[:l]
        for j in range(l, k):
            psi[j] = round_commuting(fixed, psi[j])
    return Stabilized(psi, abelian_constant(k))


def abelian_presentation(names: Sequence[str]) -> Presentation:
    from ..presentations import Word, commutator
    rels = [Word.gen(x, 2) for x in names]
    rels += [commutator(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    return Presentation(tuple(names), tuple(rels), frozenset(names))


@dataclass
class SplitResult:
    rep: ApproxRep
    certified: float
    rounded_defect: float
    block_fraction: float


def split_on_j(rep: ApproxRep, pres: Presentation, delta: float) -> SplitResult:
    """Restrict to the ``-1`` eigenspace of ``J`` after rounding.

    Generators are rounded to involutions and then made to commute with
    ``J``.  The ``-1`` block is an ``4 eps~ / delta`` representation when
    ``||J - I|| > delta / 2`` after rounding (squared-norm bookkeeping).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if J not in rep.matrices:
        raise RepError("split_on_j needs an image for J")
    d = rep.dim
    I = np.eye(d)
    if dist(rep[J], -I) <= 1e-12:
        eps = defect(rep, pres).epsilon
        return SplitResult(rep, eps, eps, 1.0)
    Jr = nearest_involution(rep[J])
    mats = {J: Jr}
    for g, M in rep.matrices.items():
        if g == J:
            continue
        X = nearest_involution(M) if g in pres.involutions else M
        if g in pres.involutions:
            X = round_commuting([Jr], X)
        mats[g] = X
    rounded = ApproxRep(d, mats)
    eps_t = defect(rounded, pres).epsilon
    jdist = dist(Jr, I)
    if jdist <= delta / 2:
        raise RepError(f"||J - I|| = {jdist:.3g} after rounding is not above delta/2")
    w, V = np.linalg.eigh(Jr)
    minus = V[:, w < 0]
    d1 = minus.shape[1]
    if d1 == 0:
        raise RepError("J has no -1 eigenspace")
    block = {}
    for g, M in mats.items():
        block[g] = minus.conj().T @ M @ minus
    block[J] = -np.eye(d1, dtype=complex)
    out = ApproxRep(d1, block)
    return SplitResult(out, 4 * eps_t / delta, eps_t, d1 / d)
