"""Explicit block-matrix lifts along the compiler's passes.

For each pass ``G -> G'`` with generator map ``Psi``, a d-dimensional
approximate representation of ``G`` is carried to one of ``G'`` whose
composite with ``Psi`` is a direct sum of copies of the input.
"""
from __future__ import annotations

from typing import Mapping

import numpy as np

from ..compiler import (
    gadgetize, lower_ehlpc_steps, nice_embed,
)
from ..presentations import (
    J, ExtendedHomogeneous, Internalization, LinearPlusConjugacy, Word,
)
from .core import ApproxRep, RepError, evaluate

NICE_CONSTANT = 1.0
GADGET_CONSTANT = 15.0
COMPILE_CONSTANT = 75.0
EHLPC_CONSTANT = 1.0


def _need(rep: ApproxRep, gens):
    missing = [g for g in gens if g not in rep.matrices]
    if missing:
        raise RepError(f"representation lacks images for {missing}")


def _diag(A, B):
    d1, d2 = A.shape[0], B.shape[0]
    M = np.zeros((d1 + d2, d1 + d2), dtype=complex)
    M[:d1, :d1] = A
    M[d1:, d1:] = B
    return M


def _anti(upper, lower):
    """``[[0, upper], [lower, 0]]``."""
    d = upper.shape[0]
    M = np.zeros((2 * d, 2 * d), dtype=complex)
    M[:d, d:] = upper
    M[d:, :d] = lower
    return M


def lift_nice(rep: ApproxRep, g: LinearPlusConjugacy) -> ApproxRep:
    """Lift to the nice embedding: doubled x and J, ``y = x + 1``,
    ``z = 1 + x``, ``w`` antidiagonal, ``f`` the swap, ``g.t = y_j z_k``."""
    _need(rep, g.names + (J,))
    nice, _ = nice_embed(g)
    n = g.n
    d = rep.dim
    I = np.eye(d, dtype=complex)
    P = [rep[x] for x in g.names]
    mats = {x: _diag(rep[x], rep[x]) for x in g.names}
    mats[J] = _diag(rep[J], rep[J])
    nm = nice.names
    for j in range(n):
        mats[nm[n + j]] = _anti(P[j], P[j])
        mats[nm[2 * n + j]] = _diag(P[j], I)
        mats[nm[3 * n + j]] = _diag(I, P[j])
    mats[nm[4 * n]] = _anti(I, I)
    for t, (_, j, k) in enumerate(g.C):
        mats[nm[4 * n + 1 + t]] = _diag(P[j], P[k])
    return ApproxRep(2 * d, mats)


def lift_gadget(rep: ApproxRep, g: LinearPlusConjugacy) -> ApproxRep:
    """Lift a representation of a nice LPC to the gadgetized solution group."""
    if not g.is_nice():
        raise RepError("lift_gadget needs a nice linear-plus-conjugacy group")
    _need(rep, g.names + (J,))
    sys, _ = gadgetize(g)
    d = rep.dim
    I = np.eye(d, dtype=complex)
    P = {x: rep[x] for x in g.names}
    mats = {x: _diag(P[x], P[x]) for x in g.names}
    mats[J] = _diag(rep[J], rep[J])
    extra = sys.names[g.n:]
    for t, (i, j, k) in enumerate(g.C):
        xi, xj, xk = (P[g.names[s]] for s in (i, j, k))
        ys = extra[7 * t:7 * t + 7]
        imgs = [
            _anti(xi, xi),
            _anti(I, I),
            _anti(xj, xj),
            _anti(xj @ xi, xi @ xj),
            _diag(xj @ xi @ xj, xi),
            _diag(xj @ xk, I),
            _diag(xj, xk),
        ]
        mats.update(zip(ys, imgs))
    return ApproxRep(2 * d, mats)


def lift_compile(rep: ApproxRep, g: LinearPlusConjugacy) -> ApproxRep:
    nice, _ = nice_embed(g)
    return lift_gadget(lift_nice(rep, g), nice)


def lift_ehlpc(rep: ApproxRep, g: ExtendedHomogeneous) -> ApproxRep:
    """Lift through every elimination step: involutions become ``x + 1``,
    ``z`` the swap, ``w = [[0, y0*], [y0, 0]]``, the remaining ``y``
    doubled, and each ancilla the conjugate it names."""
    _need(rep, g.names + g.y_names)
    _, _, steps = lower_ehlpc_steps(g)
    cur = dict(rep.matrices)
    invol = list(g.names)
    ys = list(g.y_names)
    d = rep.dim
    for st in steps:
        I = np.eye(d, dtype=complex)
        Y0 = cur[st.removed]
        nxt = {x: _diag(cur[x], I) for x in invol}
        nxt[st.z] = _anti(I, I)
        nxt[st.w] = _anti(Y0.conj().T, Y0)
        ys.remove(st.removed)
        for y in ys:
            nxt[y] = _diag(cur[y], cur[y])
        for name, a, b in st.ancillas:
            nxt[name] = nxt[a] @ nxt[b] @ nxt[a]
        invol += [st.z, st.w] + [name for name, _, _ in st.ancillas]
        cur = nxt
        d *= 2
    return ApproxRep(d, {x: cur[x] for x in invol})


def extend_by_internalization(rep: ApproxRep, res: Internalization) -> ApproxRep:
    """Assign ancilla images by solving each defining relation for its ancilla."""
    mats = dict(rep.matrices)
    tmp = ApproxRep(rep.dim, mats, check=False)
    for W, rel in zip(res.ancillas, res.defining):
        letters = rel.letters
        if res.kinds[W] == "product":
            rest = Word(letters[1:])
            M = evaluate(tmp, rest).conj().T
        else:
            (z, _), (mid, _), _, (last, _) = letters
            if last == W:
                M = evaluate(tmp, Word(letters[:3]))
            else:
                # z W z^-1 = X
                Z = tmp.image(z)
                M = Z.conj().T @ tmp.image(last) @ Z
        mats[W] = M
        tmp = ApproxRep(rep.dim, mats, check=False)
    return ApproxRep(rep.dim, mats)


def pullback_residual(lifted: ApproxRep, psi_images: Mapping[str, Word],
                      base: ApproxRep, copies: int) -> float:
    """Largest entry of ``gamma(Psi(g)) - base(g)^{+copies}`` (0 for exact copies)."""
    worst = 0.0
    for g, w in psi_images.items():
        if g not in base.matrices:
            continue
        target = np.kron(np.eye(copies), base[g])
        worst = max(worst, float(np.max(np.abs(evaluate(lifted, w) - target))))
    return worst
