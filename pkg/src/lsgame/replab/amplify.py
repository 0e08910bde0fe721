"""Tensor-power amplification for the Z2-HNN extension ``t a t = J a``."""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log
from typing import Optional

import numpy as np

from ..presentations import J, Presentation, _fresh
from .core import (
    DIM_CAP, ApproxRep, FeasibilityError, RepError, defect, direct_sum, dist,
    tensor, trivial_rep,
)


def normalized_trace(X) -> float:
    X = np.asarray(X)
    return float(np.trace(X).real / X.shape[0])


def tensor_power_exponent(delta: float, eps: float) -> int:
    """Least ``k`` with ``(1 - delta^2/4)^k <= eps^2/4``."""
    if delta <= 0 or eps <= 0:
        raise ValueError("delta and eps must be positive")
    base = 1 - delta ** 2 / 4
    if base <= 0:
        return 1
    k = max(1, ceil(log(eps ** 2 / 4) / log(base)))
    # guard against rounding in the logarithms
    while base ** k > eps ** 2 / 4:
        k += 1
    while k > 1 and base ** (k - 1) <= eps ** 2 / 4:
        k -= 1
    return k


def tensor_power(rep: ApproxRep, k: int) -> ApproxRep:
    if rep.dim ** k > DIM_CAP:
        raise FeasibilityError(f"tensor power dimension {rep.dim}^{k} exceeds cap {DIM_CAP}")
    out = rep
    for _ in range(k - 1):
        out = tensor(out, rep)
    return out


@dataclass
class Amplified:
    rep: ApproxRep
    k: int
    t: str
    input_defect: float
    trace: float
    certified: float


def amplify(rep: ApproxRep, a: str, delta: float, eps: float,
            pres: Optional[Presentation] = None, t_name: str = "t") -> Amplified:
    """Representation of ``<G, t : t^2, t a t = J a>_{Z2}`` with ``J = -I``.

    ``rep(a)`` must be an exact involution with ``||rep(a) - I|| > delta``.
    The certified defect is ``max(k * input_defect, 2 sqrt(tr~ a))``.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if a not in rep.matrices:
        raise RepError(f"no image for {a!r}")
    A = rep[a]
    I = np.eye(rep.dim)
    if dist(A @ A, I) > 1e-9 or dist(A, A.conj().T) > 1e-9:
        raise RepError(f"the image of {a} must be an exact involution (round first)")
    if dist(A, I) <= delta:
        raise RepError(f"||{a} - I|| = {dist(A, I):.6g} is not above delta = {delta}")
    base = {g: M for g, M in rep.matrices.items() if g != J}
    eps_in = defect(ApproxRep(rep.dim, base), pres).epsilon if pres is not None else 0.0
    k = tensor_power_exponent(delta, eps)
    padded = direct_sum(ApproxRep(rep.dim, base), trivial_rep(base, rep.dim))
    if padded.dim ** k > DIM_CAP:
        raise FeasibilityError(f"tensor power dimension {padded.dim}^{k} exceeds cap {DIM_CAP}")
    big = tensor_power(padded, k)
    Ak = big[a]
    w, V = np.linalg.eigh((Ak + Ak.conj().T) / 2)
    plus, minus = V[:, w > 0], V[:, w < 0]
    d0 = minus.shape[1]
    # basis with a = I_d0 + (-I_d0) + I_d1
    U = np.hstack([plus[:, :d0], minus, plus[:, d0:]])
    D = big.dim
    mats = {g: U.conj().T @ M @ U for g, M in big.matrices.items()}
    mats[a] = np.diag(np.concatenate([np.ones(d0), -np.ones(d0), np.ones(D - 2 * d0)])).astype(complex)
    T = np.zeros((D, D), dtype=complex)
    T[:d0, d0:2 * d0] = np.eye(d0)
    T[d0:2 * d0, :d0] = np.eye(d0)
    T[2 * d0:, 2 * d0:] = np.eye(D - 2 * d0)
    t = _fresh(t_name, set(mats) | {J})
    mats[t] = T
    mats[J] = -np.eye(D, dtype=complex)
    tr = normalized_trace(Ak)
    cert = max(k * eps_in, 2 * np.sqrt(max(tr, 0.0)))
    return Amplified(ApproxRep(D, mats), k, t, eps_in, tr, float(cert))
