"""Lowering passes from typed groups down to binary linear systems.

Every pass returns the lowered object together with a ``GeneratorMap``
sending each source generator to a word in the target.  Size formulas are
treated as executable: a mismatch between forecast and output raises
``CompilerError``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Optional, Union

from .gf2core import BinaryLinearSystem, _bits
from .presentations import (
    J, ExtendedHomogeneous, GeneratorMap, Homogeneous, LinearPlusConjugacy,
    Presentation, Word, _fresh, ehlpc_lowered_sizes, hnn_z2, k_group,
)


class CompilerError(RuntimeError):
    pass


@dataclass(frozen=True)
class SizeReport:
    """Sizes of a pass output: variables, linear rows, conjugacy triples."""

    variables: int
    equations: int
    triples: int = 0

    def as_tuple(self) -> tuple[int, int]:
        return self.variables, self.equations


def _names_with(base: tuple[str, ...], extra: list[str]) -> tuple[str, ...]:
    return base + tuple(extra)


# -- nice embedding ----------------------------------------------------------

def nice_embed(g: LinearPlusConjugacy) -> tuple[LinearPlusConjugacy, GeneratorMap]:
    """Embed an LPC into a nice one.

    Adds ``w.x, y.x, z.x`` per variable, one ``f`` and an ancilla ``g.<t>``
    per triple.  Rows: ``x y.x z.x``, ``x f w.x``, ``g y.x_j z.x_k``;
    conjugacies ``f y.x f = z.x`` and ``w.x_i y.x_j w.x_i = z.x_k``.
    """
    n, c = g.n, len(g.C)
    taken = set(g.names) | {J}
    nm = g.names
    ws = [_fresh(f"w.{x}", taken) for x in nm]
    ys = [_fresh(f"y.{x}", taken) for x in nm]
    zs = [_fresh(f"z.{x}", taken) for x in nm]
    f = _fresh("f", taken)
    gs = [_fresh(f"g.{t + 1}", taken) for t in range(c)]
    names = nm + tuple(ws) + tuple(ys) + tuple(zs) + (f,) + tuple(gs)
    W, Y, Z = (lambda j: n + j), (lambda j: 2 * n + j), (lambda j: 3 * n + j)
    F = 4 * n
    G = lambda t: 4 * n + 1 + t
    rows = list(g.sys.rows)
    b = list(g.sys.b)
    for j in range(n):
        rows.append((1 << j) | (1 << Y(j)) | (1 << Z(j)))
        b.append(0)
    for j in range(n):
        rows.append((1 << j) | (1 << F) | (1 << W(j)))
        b.append(0)
    for t, (_, j, k) in enumerate(g.C):
        rows.append((1 << G(t)) | (1 << Y(j)) | (1 << Z(k)))
        b.append(0)
    C = [(F, Y(j), Z(j)) for j in range(n)]
    C += [(W(i), Y(j), Z(k)) for i, j, k in g.C]
    sys = BinaryLinearSystem(len(names), tuple(rows), tuple(b), names)
    out = LinearPlusConjugacy(sys, tuple(C))
    psi = GeneratorMap({x: Word.gen(x) for x in nm + (J,)}, frozenset(names) | {J})
    return out, psi


# -- gadgets -----------------------------------------------------------------

GADGET_ROWS = (("i", 1, 2), ("j", 2, 3), (3, 4, 5), ("i", 5, 6), ("k", 6, 7), (1, 4, 7))


def gadget_names(t: int) -> list[str]:
    return [f"q{t + 1}.{s}" for s in range(1, 8)]


def gadgetize(g: LinearPlusConjugacy) -> tuple[BinaryLinearSystem, GeneratorMap]:
    """Replace every conjugacy triple of a nice LPC by a 7-variable,
    6-row gadget, returning a plain linear system."""
    if not g.is_nice():
        raise CompilerError("gadgetize needs a nice linear-plus-conjugacy group")
    n = g.n
    taken = set(g.names) | {J}
    extra: list[str] = []
    rows = list(g.sys.rows)
    b = list(g.sys.b)
    for t, (i, j, k) in enumerate(g.C):
        base = n + len(extra)
        extra.extend(_fresh(s, taken) for s in gadget_names(t))
        where = {"i": i, "j": j, "k": k}
        for row in GADGET_ROWS:
            mask = 0
            for slot in row:
                col = where[slot] if isinstance(slot, str) else base + slot - 1
                mask ^= 1 << col
            if bin(mask).count("1") != 3:
                raise CompilerError(f"gadget row for triple {(i, j, k)} degenerated")
            rows.append(mask)
            b.append(0)
    names = _names_with(g.names, extra)
    sys = BinaryLinearSystem(len(names), tuple(rows), tuple(b), names)
    psi = GeneratorMap({x: Word.gen(x) for x in g.names + (J,)}, frozenset(names) | {J})
    return sys, psi


# -- forecasting -------------------------------------------------------------

def size_forecast(g: Union[LinearPlusConjugacy, ExtendedHomogeneous, Homogeneous]) -> SizeReport:
    """Closed-form sizes of the lowered object, without running passes.

    LPC: variables and equations of the compiled system.  EHLPC/HLPC:
    variables, rows and conjugacy triples of the lowered HLPC.
    """
    if isinstance(g, LinearPlusConjugacy):
        n, m, c = g.n, g.m, len(g.C)
        return SizeReport(11 * n + 8 * c + 1, 8 * n + m + 7 * c, 0)
    if isinstance(g, ExtendedHomogeneous):
        nv, nc = ehlpc_lowered_sizes(g.n, g.ell, len(g.C0), len(g.C1), g.sum_L, g.nnz_L)
        return SizeReport(nv, g.m, nc)
    if isinstance(g, Homogeneous):
        return SizeReport(g.n, g.m, len(g.C))
    raise TypeError(f"cannot forecast {type(g).__name__}")


def compile_lpc(g: LinearPlusConjugacy) -> tuple[BinaryLinearSystem, GeneratorMap, SizeReport]:
    nice, psi1 = nice_embed(g)
    sys, psi2 = gadgetize(nice)
    report = SizeReport(sys.n, sys.m, 0)
    expected = size_forecast(g)
    if report != expected:
        raise CompilerError(f"compiled sizes {report.as_tuple()} differ from forecast "
                            f"{expected.as_tuple()}")
    return sys, psi1.then(psi2), report


# -- eliminating non-involutary generators -----------------------------------

@dataclass
class PeelStep:
    """Record of one elimination step: which generator went, the two new
    involutions, and each ancilla as ``(name, conjugator, conjugated)``."""

    removed: str
    z: str
    w: str
    ancillas: list[tuple[str, str, str]] = field(default_factory=list)


def peel_one(g: ExtendedHomogeneous, step: int = 1,
             taken: Optional[set[str]] = None) -> tuple[ExtendedHomogeneous, GeneratorMap, PeelStep]:
    """Eliminate the first non-involutary generator ``y0`` via ``y0 = z w``."""
    if g.ell == 0:
        raise ValueError("no non-involutary generator to eliminate")
    taken = set(g.names) | set(g.y_names) | {J} if taken is None else taken
    names = list(g.names)
    y0 = g.y_names[0]

    def new(base: str) -> int:
        names.append(_fresh(base, taken))
        return len(names) - 1

    z = new(f"z{step}")
    w = new(f"w{step}")
    rec = PeelStep(y0, names[z], names[w])
    C0 = list(g.C0)
    C1: list[tuple[int, int, int]] = []
    for t, (i, j, k) in enumerate(g.C1):
        if i == 0:
            Z = new(f"Z{step}.{t + 1}")
            C0 += [(w, j, Z), (z, Z, k)]
            rec.ancillas.append((names[Z], names[w], names[j]))
        else:
            C1.append((i - 1, j, k))
    for i in range(1, g.ell):
        v = g.L[i][0]
        if v <= 0:
            continue
        # y_i w y_i^-1 = w (z w)^(v-1), a palindrome built from its center out
        prev = w if (v - 1) % 2 == 0 else z
        for r in range(v - 1):
            wrap = w if (v - 2 - r) % 2 == 0 else z
            W = new(f"W{step}.{g.y_names[i]}.{r}")
            C0.append((wrap, prev, W))
            rec.ancillas.append((names[W], names[wrap], names[prev]))
            prev = W
        C1.append((i - 1, w, prev))
    for i in range(1, g.ell):
        C1.append((i - 1, z, z))
    L = tuple(tuple(row[1:]) for row in g.L[1:])
    out = ExtendedHomogeneous(tuple(names), g.rows, tuple(C0), g.y_names[1:],
                              tuple(C1), L)
    images = {x: Word.gen(x) for x in g.names}
    images.update({y: Word.gen(y) for y in g.y_names[1:]})
    images[y0] = Word.gen(names[z]) * Word.gen(names[w])
    psi = GeneratorMap(images, frozenset(out.names + out.y_names))
    return out, psi, rec


def lower_ehlpc_steps(g: ExtendedHomogeneous) -> tuple[Homogeneous, GeneratorMap, list[PeelStep]]:
    taken = set(g.names) | set(g.y_names) | {J}
    cur = g
    psi = GeneratorMap.identity(g.names + g.y_names)
    steps = []
    for s in range(g.ell):
        cur, p, rec = peel_one(cur, s + 1, taken)
        psi = psi.then(p)
        steps.append(rec)
    h = Homogeneous(cur.names, cur.rows, cur.C0)
    expected = size_forecast(g)
    got = SizeReport(h.n, h.m, len(h.C))
    if got != expected:
        raise CompilerError(f"lowered sizes {got} differ from forecast {expected}")
    return h, psi, steps


def lower_ehlpc(g: ExtendedHomogeneous) -> tuple[Homogeneous, GeneratorMap]:
    h, psi, _ = lower_ehlpc_steps(g)
    return h, psi


# -- the end-to-end pipeline -------------------------------------------------

@dataclass
class PassRecord:
    name: str
    before: dict
    after: dict
    forecast: Optional[dict] = None


@dataclass
class ProvenanceReport:
    passes: list[PassRecord] = field(default_factory=list)
    designated: dict[str, str] = field(default_factory=dict)
    generator_map: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"passes": [asdict(p) for p in self.passes],
                "designated": self.designated,
                "generator_map": self.generator_map}


def _sizes(g) -> dict:
    if isinstance(g, BinaryLinearSystem):
        return {"variables": g.n, "equations": g.m}
    if isinstance(g, LinearPlusConjugacy):
        return {"variables": g.n, "equations": g.m, "triples": len(g.C)}
    if isinstance(g, Homogeneous):
        return {"variables": g.n, "equations": g.m, "triples": len(g.C)}
    if isinstance(g, ExtendedHomogeneous):
        return {"variables": g.n, "equations": g.m, "triples": len(g.C0),
                "non_involutary": g.ell, "C1": len(g.C1), "sum_L": g.sum_L,
                "nnz_L": g.nnz_L}
    raise TypeError(type(g).__name__)


def compile_lpc_with_report(g: LinearPlusConjugacy, report: ProvenanceReport
                            ) -> tuple[BinaryLinearSystem, GeneratorMap]:
    nice, p1 = nice_embed(g)
    report.passes.append(PassRecord("nice_embed", _sizes(g), _sizes(nice)))
    sys, p2 = gadgetize(nice)
    fc = size_forecast(g)
    report.passes.append(PassRecord("gadgetize", _sizes(nice), _sizes(sys),
                                    {"variables": fc.variables, "equations": fc.equations}))
    if (sys.n, sys.m) != fc.as_tuple():
        raise CompilerError(f"compiled sizes {(sys.n, sys.m)} differ from forecast {fc.as_tuple()}")
    return sys, p1.then(p2)


def lower_and_compile(g: Union[ExtendedHomogeneous, Homogeneous, LinearPlusConjugacy],
                      hnn_target: Optional[str] = None
                      ) -> tuple[BinaryLinearSystem, GeneratorMap, ProvenanceReport]:
    """Run the lowering chain appropriate to ``g``.

    EHLPC is lowered to an HLPC first.  An HLPC is then either HNN-extended
    at ``hnn_target`` or, without a target, read as ``Gamma(A, 0, C)``.
    """
    report = ProvenanceReport()
    if isinstance(g, LinearPlusConjugacy):
        lpc, psi = g, GeneratorMap.identity(g.names + (J,))
    else:
        if isinstance(g, ExtendedHomogeneous):
            h, psi, _ = lower_ehlpc_steps(g)
            fc = size_forecast(g)
            report.passes.append(PassRecord("lower_ehlpc", _sizes(g), _sizes(h),
                                            {"variables": fc.variables, "triples": fc.triples}))
        else:
            h, psi = g, GeneratorMap.identity(g.names)
        if hnn_target is not None:
            if hnn_target not in h.names:
                raise CompilerError(f"{hnn_target!r} is not an involutary generator")
            lpc, p = hnn_z2(h, hnn_target)
            report.passes.append(PassRecord("hnn_z2", _sizes(h), _sizes(lpc)))
            t, Z = lpc.names[-2], lpc.names[-1]
            report.designated.update({"target": hnn_target, "t": t, "Z": Z})
        else:
            lpc = LinearPlusConjugacy(
                BinaryLinearSystem(h.n, h.rows, (0,) * h.m, h.names), h.C)
            p = GeneratorMap({x: Word.gen(x) for x in h.names}, frozenset(lpc.names) | {J})
        psi = psi.then(p)
    sys, p = compile_lpc_with_report(lpc, report)
    psi = psi.then(p)
    report.designated["J"] = J
    if hnn_target is not None:
        report.designated["target_image"] = str(psi[hnn_target])
    report.generator_map = psi.table()
    return sys, psi, report


def build_counterexample() -> tuple[BinaryLinearSystem, GeneratorMap, ProvenanceReport]:
    """The group with ``a`` trivial in finite-dimensional but not in
    approximate representations, HNN-extended at ``a`` and compiled."""
    g, a = k_group()
    sys, psi, report = lower_and_compile(g, hnn_target=a)
    report.passes.insert(0, PassRecord("k_group", {}, _sizes(g)))
    return sys, psi, report


# -- reading typed groups from presentations ---------------------------------

def classify(pres: Presentation) -> Union[LinearPlusConjugacy, Homogeneous, ExtendedHomogeneous]:
    """Recognise a presentation written in one of the typed shapes.

    Accepted relation forms: ``x x`` (involution), products of distinct
    involutions optionally followed by ``J^-1`` (rows), commutators ``x y x^-1
    y^-1`` of involutions, conjugacies ``x y x z^-1``, and for non-involutary
    ``y``: ``y x y^-1 z^-1`` and ``y u y^-1 u^-v``.  Commutators that are not
    implied by a shared row become triples ``(x, y, y)``.
    """
    over_z2 = pres.over_z2
    plain = [g for g in pres.generators if g != J]
    inv = set(pres.involutions) - {J}
    rels = list(pres.relations)
    closure = set()
    if over_z2:
        closure = {Word.gen(J, 2).letters} | {
            Word(((J, 1), (s, 1), (J, -1), (s, -1))).letters for s in plain}
    for r in rels:
        ls = r.letters
        if len(ls) == 2 and ls[0] == ls[1] and ls[0][1] == 1 and ls[0][0] != J:
            inv.add(ls[0][0])
    xs = [g for g in plain if g in inv]
    ys = [g for g in plain if g not in inv]
    xi = {g: i for i, g in enumerate(xs)}
    yi = {g: i for i, g in enumerate(ys)}
    rows: list[int] = []
    b: list[int] = []
    commutes: list[tuple[int, int]] = []
    C0: list[tuple[int, int, int]] = []
    C1: list[tuple[int, int, int]] = []
    L = [[0] * len(ys) for _ in ys]

    def bad(r):
        return ValueError(f"relation {r} does not fit any recognised shape")

    for r in rels:
        ls = r.letters
        if ls in closure:
            continue
        if len(ls) == 2 and ls[0] == ls[1] and ls[0][0] in xi:
            continue
        gens = [g for g, _ in ls]
        if ls and all(e == 1 and g in xi for g, e in ls) and len(set(gens)) == len(gens):
            rows.append(sum(1 << xi[g] for g in gens))
            b.append(0)
            continue
        if (over_z2 and len(ls) >= 2 and ls[-1][0] == J and all(
                e == 1 and g in xi for g, e in ls[:-1]) and len(set(gens[:-1])) == len(gens) - 1):
            rows.append(sum(1 << xi[g] for g in gens[:-1]))
            b.append(1)
            continue
        if len(ls) == 4:
            (p, e1), (q, e2), (p2, e3), (s, e4) = ls
            if (p == p2 and q == s and (e1, e2, e3, e4) == (1, 1, -1, -1)
                    and p in xi and q in xi):
                commutes.append((xi[p], xi[q]))
                continue
            if p == p2 and p in xi and (e1, e2, e3, e4) == (1, 1, 1, -1) and q in xi and s in xi:
                C0.append((xi[p], xi[q], xi[s]))
                continue
            if p == p2 and p in yi and (e1, e2, e3, e4) == (1, 1, -1, -1) and q in xi and s in xi:
                C1.append((yi[p], xi[q], xi[s]))
                continue
        if len(ls) >= 4 and ls[0][0] in yi and ls[2] == (ls[0][0], -1) and ls[0][1] == 1:
            u, eu = ls[1]
            tail = ls[3:]
            if u in yi and eu == 1 and tail and all(l == (u, -1) for l in tail):
                i, j = yi[ls[0][0]], yi[u]
                if i <= j:
                    raise ValueError(f"relation {r}: power relations need y_i after y_j")
                L[i][j] = len(tail)
                continue
        raise bad(r)
    if not rows and over_z2:
        raise ValueError("a group over Z2 needs at least one linear row")
    for p, q in commutes:
        if not any((r >> p) & 1 and (r >> q) & 1 for r in rows):
            C0.append((p, q, q))
    if over_z2:
        if ys:
            raise ValueError("non-involutary generators are not allowed over Z2")
        sys = BinaryLinearSystem(len(xs), tuple(rows), tuple(b), tuple(xs))
        return LinearPlusConjugacy(sys, tuple(C0))
    if not ys:
        return Homogeneous(tuple(xs), tuple(rows), tuple(C0))
    return ExtendedHomogeneous(tuple(xs), tuple(rows), tuple(C0), tuple(ys), tuple(C1),
                               tuple(tuple(r) for r in L))


def max_alice_outputs(sys: BinaryLinearSystem) -> int:
    return max(1 << (len(_bits(r)) - 1) for r in sys.rows)
