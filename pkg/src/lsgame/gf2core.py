"""Linear systems over GF(2).

Rows are stored bit-packed as Python integers (bit ``j`` is the coefficient
of variable ``j``), so the width of a system is bounded only by memory.
Indices are 0-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np


def _bits(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


@dataclass(frozen=True)
class BinaryLinearSystem:
    """An ``m x n`` system ``Ax = b`` over GF(2).

    ``names`` labels the variables; it defaults to ``x1 .. xn`` and is what
    the solution group uses for its generators.
    """

    n: int
    rows: tuple[int, ...]
    b: tuple[int, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.n < 1 or len(self.rows) < 1:
            raise ValueError("a linear system needs m, n >= 1")
        if len(self.b) != len(self.rows):
            raise ValueError("right-hand side length does not match row count")
        for i, r in enumerate(self.rows):
            if r == 0:
                raise ValueError(f"row {i} is empty")
            if r >> self.n:
                raise ValueError(f"row {i} references a column >= n={self.n}")
        if any(v not in (0, 1) for v in self.b):
            raise ValueError("right-hand side must be 0/1")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{j + 1}" for j in range(self.n)))
        if len(self.names) != self.n or len(set(self.names)) != self.n:
            raise ValueError("names must be n distinct labels")

    @classmethod
    def from_matrix(cls, A, b=None, names: Sequence[str] = ()) -> "BinaryLinearSystem":
        A = np.asarray(A, dtype=np.int64) % 2
        if A.ndim != 2:
            raise ValueError("A must be two-dimensional")
        m, n = A.shape
        if b is None:
            b = np.zeros(m, dtype=np.int64)
        b = tuple(int(v) % 2 for v in b)
        rows = tuple(sum(1 << j for j in range(n) if A[i, j]) for i in range(m))
        return cls(n, rows, b, tuple(names))

    @classmethod
    def from_supports(cls, n: int, supports: Iterable[Iterable[int]], b=None,
                      names: Sequence[str] = ()) -> "BinaryLinearSystem":
        rows = []
        for supp in supports:
            mask = 0
            for j in supp:
                mask ^= 1 << j
            rows.append(mask)
        if b is None:
            b = [0] * len(rows)
        return cls(n, tuple(rows), tuple(int(v) for v in b), tuple(names))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def A(self) -> np.ndarray:
        out = np.zeros((self.m, self.n), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            out[i, _bits(r)] = 1
        return out

    def index(self, name: str) -> int:
        return self.names.index(name)

    def is_solution(self, x: Sequence[int]) -> bool:
        mask = sum(1 << j for j, v in enumerate(x) if v % 2)
        return all(bin(r & mask).count("1") % 2 == bi for r, bi in zip(self.rows, self.b))


def row_support(sys: BinaryLinearSystem, i: int) -> list[int]:
    """Columns with a nonzero coefficient in row ``i``, ascending."""
    if not 0 <= i < sys.m:
        raise IndexError(f"row index {i} out of range for m={sys.m}")
    return _bits(sys.rows[i])


def satisfying_assignments(sys: BinaryLinearSystem, i: int) -> list[tuple[int, ...]]:
    """All assignments to the variables of row ``i`` that satisfy it.

    Tuples are aligned with ``row_support(sys, i)`` and listed in
    lexicographic order (first variable most significant).
    """
    k = len(row_support(sys, i))
    bi = sys.b[i]
    return [a for a in product((0, 1), repeat=k) if sum(a) % 2 == bi]


def gf2_solve(sys: BinaryLinearSystem) -> Optional[list[int]]:
    """Solve ``Ax = b`` by elimination, or return None if inconsistent.

    Pivots are taken at the lowest available column and the lowest row
    carrying it; free variables are set to 0.
    """
    # augmented rows: bit n holds b
    rows = [r | (bi << sys.n) for r, bi in zip(sys.rows, sys.b)]
    pivots: list[tuple[int, int]] = []
    top = 0
    for col in range(sys.n):
        bit = 1 << col
        piv = next((r for r in range(top, len(rows)) if rows[r] & bit), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        for r in range(len(rows)):
            if r != top and rows[r] & bit:
                rows[r] ^= rows[top]
        pivots.append((top, col))
        top += 1
    full = (1 << sys.n) - 1
    for r in rows[top:]:
        if not r & full and r >> sys.n:
            return None
    x = [0] * sys.n
    for r, col in pivots:
        x[col] = rows[r] >> sys.n
    return x


def brute_force_solve(sys: BinaryLinearSystem, limit: int = 20) -> Optional[list[int]]:
    """Exhaustive search over all ``2^n`` assignments (oracle for small n)."""
    if sys.n > limit:
        raise ValueError(f"n={sys.n} exceeds brute-force limit {limit}")
    for mask in range(1 << sys.n):
        if all(bin(r & mask).count("1") % 2 == bi for r, bi in zip(sys.rows, sys.b)):
            return [(mask >> j) & 1 for j in range(sys.n)]
    return None


def magic_square_system() -> BinaryLinearSystem:
    """The 3x3 parity square: variables row-major, three row equations with
    even parity and three column equations, the last one odd."""
    supports = [(0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6), (1, 4, 7), (2, 5, 8)]
    return BinaryLinearSystem.from_supports(9, supports, [0, 0, 0, 0, 0, 1])


# -- .lsys text format -------------------------------------------------------

def dumps_lsys(sys: BinaryLinearSystem) -> str:
    lines = [f"{sys.m} {sys.n}"]
    for r in sys.rows:
        lines.append("".join("1" if (r >> j) & 1 else "0" for j in range(sys.n)))
    lines.append("".join(str(v) for v in sys.b))
    return "\n".join(lines) + "\n"


def loads_lsys(text: str) -> BinaryLinearSystem:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty .lsys input")
    try:
        m, n = (int(t) for t in lines[0].split())
    except ValueError:
        raise ValueError("first line of .lsys must be 'm n'") from None
    if len(lines) != m + 2:
        raise ValueError(f"expected {m + 2} non-empty lines, found {len(lines)}")
    rows = []
    for i, ln in enumerate(lines[1:m + 1]):
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise ValueError(f"row {i} must be {n} characters of 0/1")
        rows.append(sum(1 << j for j, ch in enumerate(ln) if ch == "1"))
    bline = lines[m + 1]
    if len(bline) != m or set(bline) - {"0", "1"}:
        raise ValueError(f"right-hand side must be {m} characters of 0/1")
    return BinaryLinearSystem(n, tuple(rows), tuple(int(ch) for ch in bline))


def read_lsys(path) -> BinaryLinearSystem:
    return loads_lsys(Path(path).read_text(encoding="utf-8"))


def write_lsys(sys: BinaryLinearSystem, path) -> None:
    Path(path).write_text(dumps_lsys(sys), encoding="utf-8")
