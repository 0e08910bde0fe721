"""Brute-force homomorphisms from a finitely presented group into S_k."""
from __future__ import annotations

from itertools import permutations
from math import factorial

import numpy as np

from ..presentations import J, Presentation
from .core import FeasibilityError

ENUM_LIMIT = 10 ** 9

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """``(p q)(i) = p(q(i))``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def enumerate_homs(pres: Presentation, k: int, limit: int = ENUM_LIMIT) -> list[dict[str, Perm]]:
    """All assignments of permutations of ``{0..k-1}`` satisfying every relation.

    Generators are assigned in declaration order; each relation is checked
    as soon as all its generators have images.
    """
    if pres.over_z2 or J in pres.generators:
        raise ValueError("enumerate_homs works on presentations without J")
    if k < 1:
        raise ValueError("degree must be positive")
    gens = list(pres.generators)
    if factorial(k) ** len(gens) > limit:
        raise FeasibilityError(f"(k!)^{len(gens)} = {factorial(k) ** len(gens)} exceeds {limit}")
    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    mul = np.array([[index[compose(p, q)] for q in perms] for p in perms], dtype=np.int64)
    inv = [index[perm_inverse(p)] for p in perms]
    ident = index[tuple(range(k))]
    pos = {g: i for i, g in enumerate(gens)}
    ready: list[list] = [[] for _ in gens]
    for r in pres.relations:
        if not r.letters:
            continue
        last = max(pos[g] for g in r.generators())
        ready[last].append([(pos[g], e) for g, e in r.letters])
    assign = [0] * len(gens)
    out: list[dict[str, Perm]] = []

    def holds(rel) -> bool:
        cur = ident
        for gi, e in rel:
            p = assign[gi] if e == 1 else inv[assign[gi]]
            cur = mul[cur, p]
        return cur == ident

    def go(level: int):
        if level == len(gens):
            out.append({g: perms[assign[i]] for i, g in enumerate(gens)})
            return
        for p in range(len(perms)):
            assign[level] = p
            if all(holds(rel) for rel in ready[level]):
                go(level + 1)

    go(0)
    return out


def hom_summary(homs: list[dict[str, Perm]], gen: str) -> dict:
    images = sorted({h[gen] for h in homs})
    ident = None if not homs else tuple(range(len(next(iter(homs[0].values())))))
    return {
        "count": len(homs),
        "generator": gen,
        "images": [list(p) for p in images],
        "all_identity": all(h[gen] == ident for h in homs),
    }
