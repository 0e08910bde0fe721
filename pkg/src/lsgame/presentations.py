"""Free-group words, presentations, and the typed group hierarchy.

Conventions: ``[x, y] = x y x^-1 y^-1`` and ``x^y = y x y^-1``.  The
distinguished central involution of a group over Z2 is the generator
named ``J``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from .gf2core import BinaryLinearSystem, _bits

J = "J"
Letter = tuple[str, int]

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.'@#\[\]]*$")


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    """A word in a free group, as a tuple of ``(generator, +1 | -1)``."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for g, e in self.letters:
            if e not in (1, -1):
                raise WordError(f"exponent of {g!r} must be +1 or -1, got {e}")

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "Word":
        e = 1 if power > 0 else -1
        return cls(((name, e),) * abs(power))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse whitespace-separated tokens ``name``, ``name^-1`` or ``name^k``."""
        letters: list[Letter] = []
        for tok in text.split():
            if tok in ("e", "1"):
                continue
            name, _, pw = tok.partition("^")
            if not _NAME.match(name):
                raise WordError(f"bad generator token {tok!r}")
            try:
                k = int(pw) if pw else 1
            except ValueError:
                raise WordError(f"bad exponent in {tok!r}") from None
            letters.extend(cls.gen(name, k).letters)
        return cls(tuple(letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def word(text: str) -> Word:
    return Word.parse(text)


def reduce(w: Word) -> Word:
    """Freely reduce ``w`` (cancel adjacent ``g g^-1`` pairs)."""
    stack: list[Letter] = []
    for g, e in w.letters:
        if stack and stack[-1] == (g, -e):
            stack.pop()
        else:
            stack.append((g, e))
    return Word(tuple(stack))


def product_of(names: Iterable[str]) -> Word:
    return Word(tuple((g, 1) for g in names))


def commutator(x: str, y: str) -> Word:
    return Word(((x, 1), (y, 1), (x, -1), (y, -1)))


def conjugacy(i: str, j: str, k: str) -> Word:
    """Relator for ``x_i x_j x_i = x_k`` (involutary conjugator)."""
    return Word(((i, 1), (j, 1), (i, 1), (k, -1)))


def conj(x: Word, y: Word) -> Word:
    """``x^y = y x y^-1``."""
    return y * x * y.inverse()


# -- generator maps ----------------------------------------------------------

@dataclass(frozen=True)
class GeneratorMap:
    """A lift of a homomorphism: every source generator goes to a target word."""

    images: Mapping[str, Word]
    target: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.target:
            for g, w in self.images.items():
                extra = w.generators() - self.target
                if extra:
                    raise WordError(f"image of {g} uses unknown generators {sorted(extra)}")

    @classmethod
    def identity(cls, gens: Iterable[str]) -> "GeneratorMap":
        gens = list(gens)
        return cls({g: Word.gen(g) for g in gens}, frozenset(gens))

    @property
    def source(self) -> frozenset[str]:
        return frozenset(self.images)

    def __getitem__(self, g: str) -> Word:
        return self.images[g]

    def then(self, other: "GeneratorMap") -> "GeneratorMap":
        """Composite ``other . self`` (apply ``self`` first)."""
        return GeneratorMap({g: apply_map(other, w) for g, w in self.images.items()},
                            other.target)

    def table(self) -> dict[str, str]:
        return {g: str(w) for g, w in self.images.items()}


def apply_map(psi: GeneratorMap, w: Word) -> Word:
    letters: list[Letter] = []
    for g, e in w.letters:
        try:
            img = psi.images[g]
        except KeyError:
            raise WordError(f"generator {g!r} is not in the map's domain") from None
        letters.extend((img if e == 1 else img.inverse()).letters)
    return reduce(Word(tuple(letters)))


# -- presentations -----------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """``<generators : relations>``; ``J`` among the generators marks a
    presentation over Z2 (then the closure relations are always present)."""

    generators: tuple[str, ...]
    relations: tuple[Word, ...]
    involutions: frozenset[str] = frozenset()

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise WordError("duplicate generator names")
        gens = set(self.generators)
        for g in self.generators:
            if not _NAME.match(g):
                raise WordError(f"bad generator name {g!r}")
        for r in self.relations:
            extra = r.generators() - gens
            if extra:
                raise WordError(f"relation {r} mentions undeclared {sorted(extra)}")
        if not self.involutions <= gens:
            raise WordError("involutions must be declared generators")

    @property
    def over_z2(self) -> bool:
        return J in self.generators

    @property
    def max_relation_length(self) -> int:
        return max((len(r) for r in self.relations), default=0)

    def plain_generators(self) -> tuple[str, ...]:
        return tuple(g for g in self.generators if g != J)


def z2_presentation(gens: Sequence[str], relations: Iterable[Word],
                    involutions: Iterable[str] = ()) -> Presentation:
    """``<gens : relations>_{Z2}``: adds ``J``, ``J^2 = e`` and ``[J, s] = e``."""
    gens = [g for g in gens if g != J]
    rels = list(relations)
    closure = [Word.gen(J, 2)] + [commutator(J, s) for s in gens]
    seen = {r.letters for r in rels}
    rels.extend(r for r in closure if r.letters not in seen)
    return Presentation(tuple(gens) + (J,), tuple(rels), frozenset(involutions) | {J})


def _row_relations(sys_rows: Sequence[int], names: Sequence[str],
                   rhs: Optional[Sequence[int]]) -> list[Word]:
    rels = []
    for i, r in enumerate(sys_rows):
        w = product_of(names[j] for j in _bits(r))
        if rhs is not None and rhs[i]:
            w = w * Word.gen(J, -1)
        rels.append(w)
    return rels


def _commutation_relations(sys_rows: Sequence[int], names: Sequence[str]) -> list[Word]:
    pairs: dict[tuple[int, int], None] = {}
    for r in sys_rows:
        for p in combinations(_bits(r), 2):
            pairs.setdefault(p, None)
    return [commutator(names[j], names[k]) for j, k in pairs]


def solution_group(sys: BinaryLinearSystem) -> Presentation:
    """The solution group of ``Ax = b`` as a presentation over Z2.

    Relation order: involutions, row products ``prod x_j = J^{b_i}``,
    commutations of variables sharing a row (each pair once), Z2 closure.
    """
    names = sys.names
    rels = [Word.gen(x, 2) for x in names]
    rels += _row_relations(sys.rows, names, sys.b)
    rels += _commutation_relations(sys.rows, names)
    return z2_presentation(names, rels, names)


# -- the typed hierarchy -----------------------------------------------------

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class LinearPlusConjugacy:
    """``Gamma(A, b, C)``: a solution group plus ``x_i x_j x_i = x_k`` for
    every ``(i, j, k)`` in ``C`` (0-based)."""

    sys: BinaryLinearSystem
    C: tuple[Triple, ...] = ()

    def __post_init__(self):
        _check_triples(self.C, self.sys.n, self.sys.n)

    @property
    def n(self) -> int:
        return self.sys.n

    @property
    def m(self) -> int:
        return self.sys.m

    @property
    def names(self) -> tuple[str, ...]:
        return self.sys.names

    def is_nice(self) -> bool:
        return all(any((r >> j) & 1 and (r >> k) & 1 for r in self.sys.rows)
                   for _, j, k in self.C)


@dataclass(frozen=True)
class Homogeneous:
    """``HLPC(A, C)``: like an LPC but with ``b = 0`` and no ``J``.

    Rows are bit masks over ``names``; ``m = 0`` is allowed.
    """

    names: tuple[str, ...]
    rows: tuple[int, ...]
    C: tuple[Triple, ...] = ()

    def __post_init__(self):
        _check_rows(self.rows, len(self.names))
        _check_triples(self.C, len(self.names), len(self.names))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class ExtendedHomogeneous:
    """``EHLPC(A, C0, C1, L)`` with non-involutary generators ``y_names``.

    ``C1`` holds ``(i, j, k)`` for ``y_i x_j y_i^-1 = x_k``; ``L[i][j] > 0``
    (only for ``i > j``) encodes ``y_i y_j y_i^-1 = y_j^{L_ij}``.
    """

    names: tuple[str, ...]
    rows: tuple[int, ...]
    C0: tuple[Triple, ...]
    y_names: tuple[str, ...]
    C1: tuple[Triple, ...]
    L: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n, ell = len(self.names), len(self.y_names)
        _check_rows(self.rows, n)
        _check_triples(self.C0, n, n)
        for i, j, k in self.C1:
            if not (0 <= i < ell and 0 <= j < n and 0 <= k < n):
                raise ValueError(f"C1 triple {(i, j, k)} out of range")
        if len(self.L) != ell or any(len(r) != ell for r in self.L):
            raise ValueError("L must be ell x ell")
        for i in range(ell):
            for j in range(ell):
                v = self.L[i][j]
                if v < 0 or (v and i <= j):
                    raise ValueError("L must be strictly lower-triangular and non-negative")
        if set(self.names) & set(self.y_names):
            raise ValueError("involutary and non-involutary names overlap")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def ell(self) -> int:
        return len(self.y_names)

    @property
    def sum_L(self) -> int:
        return sum(map(sum, self.L))

    @property
    def nnz_L(self) -> int:
        return sum(1 for row in self.L for v in row if v)


def _check_rows(rows, n):
    for r in rows:
        if r == 0 or r >> n:
            raise ValueError("rows must be nonempty masks over the declared variables")


def _check_triples(C, n_conj, n):
    for i, j, k in C:
        if not (0 <= i < n_conj and 0 <= j < n and 0 <= k < n):
            raise ValueError(f"triple {(i, j, k)} out of range")


def presentation_of(g) -> Presentation:
    """Expand a typed group into an explicit presentation.

    LPCs become presentations over Z2; HLPC/EHLPC become plain ones.
    """
    if isinstance(g, LinearPlusConjugacy):
        nm = g.names
        rels = [Word.gen(x, 2) for x in nm]
        rels += _row_relations(g.sys.rows, nm, g.sys.b)
        rels += _commutation_relations(g.sys.rows, nm)
        rels += [conjugacy(nm[i], nm[j], nm[k]) for i, j, k in g.C]
        return z2_presentation(nm, rels, nm)
    if isinstance(g, Homogeneous):
        nm = g.names
        rels = [Word.gen(x, 2) for x in nm]
        rels += _row_relations(g.rows, nm, None)
        rels += _commutation_relations(g.rows, nm)
        rels += [conjugacy(nm[i], nm[j], nm[k]) for i, j, k in g.C]
        return Presentation(nm, tuple(rels), frozenset(nm))
    if isinstance(g, ExtendedHomogeneous):
        base = presentation_of(Homogeneous(g.names, g.rows, g.C0))
        nm, ys = g.names, g.y_names
        rels = list(base.relations)
        for i, j, k in g.C1:
            rels.append(Word(((ys[i], 1), (nm[j], 1), (ys[i], -1), (nm[k], -1))))
        for i in range(g.ell):
            for j in range(i):
                v = g.L[i][j]
                if v:
                    rels.append(Word(((ys[i], 1), (ys[j], 1), (ys[i], -1))) * Word.gen(ys[j], -v))
        return Presentation(nm + ys, tuple(rels), frozenset(nm))
    raise TypeError(f"no presentation for {type(g).__name__}")


def k_group() -> tuple[ExtendedHomogeneous, str]:
    """The group with ``a^2 = b^2 = e``, ``ab = ba``, ``y a y^-1 = a``,
    ``y b y^-1 = ab`` and ``x y x^-1 = y^2``, written as an EHLPC with the
    extra involution ``c = ab``.  Returns the group and the designated
    generator ``"a"``."""
    g = ExtendedHomogeneous(
        names=("a", "b", "c"),
        rows=(0b111,),
        C0=(),
        y_names=("y", "x"),
        C1=((0, 0, 0), (0, 1, 2)),
        L=((0, 0), (2, 0)),
    )
    return g, "a"


def k_presentation() -> Presentation:
    """Four-generator presentation of the same group (no ``c``)."""
    rels = [word("a a"), word("b b"), commutator("a", "b"), word("y a y^-1 a^-1"),
            word("y b y^-1 b^-1 a^-1"), word("x y x^-1 y^-2")]
    return Presentation(("a", "b", "y", "x"), tuple(rels), frozenset({"a", "b"}))


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def hnn_z2(h: Homogeneous, target: str | int, t_name: str = "t",
           z_name: str = "Z") -> tuple[LinearPlusConjugacy, GeneratorMap]:
    """``<h, t : t^2 = e, t x t = J x>_{Z2}`` as an LPC.

    ``t x t = J x`` is split into ``t x t = Z`` and the linear row ``Z x = J``.
    """
    i = h.names.index(target) if isinstance(target, str) else int(target)
    if not 0 <= i < h.n:
        raise ValueError(f"{target!r} is not an involutary generator of the group")
    taken = set(h.names) | {J}
    t = _fresh(t_name, taken)
    z = _fresh(z_name, taken)
    names = h.names + (t, z)
    n = h.n
    rows = h.rows + ((1 << i) | (1 << (n + 1)),)
    b = (0,) * h.m + (1,)
    sys = BinaryLinearSystem(n + 2, rows, b, names)
    lpc = LinearPlusConjugacy(sys, h.C + ((n, i, n + 1),))
    psi = GeneratorMap({x: Word.gen(x) for x in h.names}, frozenset(names) | {J})
    return lpc, psi


def hnn_presentation(pres: Presentation, a: str, t_name: str = "t") -> Presentation:
    """``<pres, t : t^2 = e, t a t = J a>_{Z2}`` for a plain presentation."""
    if a not in pres.generators:
        raise WordError(f"{a!r} is not a generator")
    t = _fresh(t_name, set(pres.generators) | {J})
    rels = list(pres.relations) + [Word.gen(t, 2),
                                   Word(((t, 1), (a, 1), (t, 1), (a, -1), (J, -1)))]
    return z2_presentation(pres.generators + (t,), rels, set(pres.involutions) | {t})


# -- word internalization ----------------------------------------------------

@dataclass(frozen=True)
class NormalTerm:
    """A word of ``N(S0, S1)`` written as the induction builds it.

    ``kind`` is ``"gen"`` (an ``S0`` letter), ``"conj"`` (``z^e inner z^-e``)
    or ``"prod"`` (concatenation of ``parts``).
    """

    kind: str
    name: str = ""
    sign: int = 1
    parts: tuple["NormalTerm", ...] = ()

    @classmethod
    def gen(cls, s: str) -> "NormalTerm":
        return cls("gen", s)

    @classmethod
    def conj(cls, z: str, sign: int, inner: "NormalTerm") -> "NormalTerm":
        return cls("conj", z, sign, (inner,))

    @classmethod
    def prod(cls, parts: Sequence["NormalTerm"]) -> "NormalTerm":
        if len(parts) < 2:
            raise ValueError("a product term needs at least two factors")
        return cls("prod", parts=tuple(parts))

    def word(self) -> Word:
        if self.kind == "gen":
            return Word.gen(self.name)
        if self.kind == "conj":
            z = Word(((self.name, self.sign),))
            return reduce(z * self.parts[0].word() * z.inverse())
        return reduce(Word(sum((p.word().letters for p in self.parts), ())))


def build_w_term(m: int, z1: str = "z1", a: str = "a", a2: str = "a'") -> NormalTerm:
    """Structured form of ``w(m)``: ``u . u^{a^-1} . u^{a} . u^{a'}``, ``u = w(m-1)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    u = NormalTerm.gen(z1)
    for _ in range(m):
        u = NormalTerm.prod([u, NormalTerm.conj(a, -1, u), NormalTerm.conj(a, 1, u),
                             NormalTerm.conj(a2, 1, u)])
    return u


def build_w(m: int, z1: str = "z1", a: str = "a", a2: str = "a'") -> Word:
    """``w(0) = z1``, ``w(m) = w . w^{a^-1} . w^{a} . w^{a'}`` with ``w = w(m-1)``."""
    return build_w_term(m, z1, a, a2).word()


class DecompositionError(WordError):
    pass


def _split_normal(w: Word, S0: frozenset[str]) -> list[Word]:
    """Split a reduced word into minimal factors lying in ``N(S0, S1)``.

    A word lies in the normal closure of ``S0`` iff deleting ``S0`` letters
    leaves a word that freely reduces to the identity.
    """
    pieces, start, stack = [], 0, []
    for pos, (g, e) in enumerate(w.letters):
        if g not in S0:
            if stack and stack[-1] == (g, -e):
                stack.pop()
            else:
                stack.append((g, e))
        if not stack:
            pieces.append(Word(w.letters[start:pos + 1]))
            start = pos + 1
    if stack or start != len(w):
        raise DecompositionError(f"{w} is not in the normal closure of {sorted(S0)}")
    return pieces


def decompose(w: Word, S0: Iterable[str]) -> NormalTerm:
    """Canonical term for a reduced word: a bracketing ``z x z^-1`` is read as
    a conjugation, anything else is split into its minimal factors.

    Words have many decompositions and the ancilla count depends on the one
    chosen; pass an explicit term to ``internalize_word`` to fix it.
    """
    S0 = frozenset(S0)
    w = reduce(w)
    if not w.letters:
        raise DecompositionError("the empty word has no decomposition")
    if len(w) == 1:
        g, _ = w.letters[0]
        if g in S0:
            return NormalTerm.gen(g)
        raise DecompositionError(f"{w} is not in the normal closure of {sorted(S0)}")
    pieces = _split_normal(w, S0)
    if len(pieces) == 1:
        (z, e) = w.letters[0]
        return NormalTerm.conj(z, e, decompose(Word(w.letters[1:-1]), S0))
    return NormalTerm.prod([decompose(p, S0) for p in pieces])


@dataclass
class Internalization:
    """Ancillas and relations forcing a word to equal a single generator.

    ``defining`` has one relation per ancilla (a conjugacy or the product
    relation); ``commutations`` are the pairwise relations of product steps.
    """

    target: str
    ancillas: list[str] = field(default_factory=list)
    defining: list[Word] = field(default_factory=list)
    commutations: list[Word] = field(default_factory=list)
    kinds: dict[str, str] = field(default_factory=dict)
    values: dict[str, Word] = field(default_factory=dict)

    @property
    def relations(self) -> list[Word]:
        return self.defining + self.commutations

    def involution_relations(self) -> list[Word]:
        return [Word.gen(s, 2) for s in self.ancillas]


def internalize_word(w: Union[Word, NormalTerm], S0: Iterable[str], S1: Iterable[str],
                     involutary: Iterable[str], prefix: str = "W",
                     taken: Iterable[str] = ()) -> Internalization:
    """Add ancillas and linear/conjugacy relations making ``w`` a generator.

    ``S0 <= S1`` and ``w`` must lie in ``N(S0, S1)``; the caller vouches that
    its image is abelian.  Subterms with equal words share one ancilla.
    Conjugators in ``involutary`` give ``W = z X z``, others ``W = z X z^-1``
    (or ``z W z^-1 = X`` when ``w = z^-1 x z``).  ``values[W]`` is the word
    each ancilla stands for.
    """
    S0, S1 = frozenset(S0), frozenset(S1)
    inv = frozenset(involutary)
    if not S0 <= S1:
        raise ValueError("S0 must be a subset of S1")
    if not S0 <= inv:
        raise ValueError("S0 must consist of involutary generators")
    term = w if isinstance(w, NormalTerm) else decompose(w, S0)
    if not term.word().generators() <= S1:
        raise DecompositionError(f"{term.word()} uses generators outside S1")
    names = set(taken) | S1 | {J}
    memo: dict[tuple[Letter, ...], str] = {}
    out = Internalization(target="")

    def new_ancilla(kind: str, value: Word) -> str:
        name = _fresh(f"{prefix}{len(out.ancillas) + 1}", names)
        out.ancillas.append(name)
        out.kinds[name] = kind
        out.values[name] = value
        return name

    def go(t: NormalTerm) -> str:
        if t.kind == "gen":
            if t.name not in S0:
                raise DecompositionError(f"{t.name} is not in S0")
            return t.name
        key = t.word().letters
        if key in memo:
            return memo[key]
        if t.kind == "conj":
            z, e = t.name, t.sign
            X = go(t.parts[0])
            W = new_ancilla("conjugacy", t.word())
            if z in inv:
                rel = Word(((z, 1), (X, 1), (z, 1), (W, -1)))
            elif e == 1:
                rel = Word(((z, 1), (X, 1), (z, -1), (W, -1)))
            else:
                rel = Word(((z, 1), (W, 1), (z, -1), (X, -1)))
            out.defining.append(rel)
        elif t.kind == "prod":
            factors = [go(p) for p in t.parts]
            W = new_ancilla("product", t.word())
            out.defining.append(product_of([W] + factors))
            distinct = list(dict.fromkeys([W] + factors))
            out.commutations.extend(commutator(p, q) for p, q in combinations(distinct, 2))
        else:
            raise DecompositionError(f"unknown term kind {t.kind!r}")
        memo[key] = W
        return W

    out.target = go(term)
    return out


# -- size bookkeeping helpers ------------------------------------------------

def ehlpc_lowered_sizes(n: int, ell: int, c0: int, c1: int, sum_L: int,
                        nnz_L: int) -> tuple[int, int]:
    """Closed-form ``(n', |C'|)`` after eliminating all non-involutary generators."""
    return (n + 2 * ell + comb(ell, 2) + c1 + sum_L,
            c0 + 2 * c1 + 2 * comb(ell, 2) + sum_L + nnz_L)


# -- .grp text format and JSON ----------------------------------------------

def dumps_grp(pres: Presentation) -> str:
    lines = []
    for g in pres.generators:
        lines.append(f"gen {g} inv" if g in pres.involutions else f"gen {g}")
    for r in pres.relations:
        lines.append(f"rel {r}")
    return "\n".join(lines) + "\n"


def loads_grp(text: str) -> Presentation:
    gens: list[str] = []
    inv: set[str] = set()
    rels: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, _, rest = line.partition(" ")
        if kind == "gen":
            parts = rest.split()
            if not parts or len(parts) > 2 or (len(parts) == 2 and parts[1] != "inv"):
                raise WordError(f"line {lineno}: expected 'gen <name> [inv]'")
            gens.append(parts[0])
            if len(parts) == 2:
                inv.add(parts[0])
        elif kind == "rel":
            rels.append(Word.parse(rest))
        else:
            raise WordError(f"line {lineno}: unknown directive {kind!r}")
    if J in gens or any(J in r.generators() for r in rels):
        return z2_presentation(gens, rels, inv)
    return Presentation(tuple(gens), tuple(rels), frozenset(inv))


def read_grp(path) -> Presentation:
    return loads_grp(Path(path).read_text(encoding="utf-8"))


def write_grp(pres: Presentation, path) -> None:
    Path(path).write_text(dumps_grp(pres), encoding="utf-8")


def presentation_to_json(pres: Presentation) -> dict:
    return {
        "generators": [{"name": g, "involution": g in pres.involutions}
                       for g in pres.generators],
        "relations": [str(r) for r in pres.relations],
        "over_z2": pres.over_z2,
    }


def presentation_from_json(data: dict) -> Presentation:
    gens = [g["name"] for g in data["generators"]]
    inv = {g["name"] for g in data["generators"] if g.get("involution")}
    rels = [Word.parse(r) for r in data["relations"]]
    if data.get("over_z2") or J in gens:
        return z2_presentation(gens, rels, inv)
    return Presentation(tuple(gens), tuple(rels), frozenset(inv))


def dumps_presentation_json(pres: Presentation) -> str:
    return json.dumps(presentation_to_json(pres), indent=2) + "\n"
