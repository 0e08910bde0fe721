"""Approximate representations and their defects.

All norms are the normalized Hilbert-Schmidt norm ``sqrt(tr(M* M) / d)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from ..presentations import J, Presentation, Word

UNITARY_TOL = 1e-9
DIM_CAP = 4096


class RepError(ValueError):
    pass


class FeasibilityError(RuntimeError):
    """A configured size guard (dimension cap, enumeration bound) was exceeded."""


def hs_norm(M) -> float:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise RepError(f"hs_norm needs a square matrix, got shape {M.shape}")
    d = M.shape[0]
    return float(np.sqrt(np.vdot(M, M).real / d))


def dist(A, B) -> float:
    return hs_norm(np.asarray(A) - np.asarray(B))


def unitarity_defect(U) -> float:
    U = np.asarray(U)
    return dist(U.conj().T @ U, np.eye(U.shape[0]))


@dataclass
class ApproxRep:
    """A dimension and a unitary matrix for each generator.

    When ``J`` has no assigned image, words are evaluated with ``J = -I``.
    """

    dim: int
    matrices: dict[str, np.ndarray]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise RepError("dimension must be positive")
        if self.dim > DIM_CAP:
            raise FeasibilityError(f"dimension {self.dim} exceeds cap {DIM_CAP}")
        mats = {}
        for g, M in self.matrices.items():
            M = np.asarray(M, dtype=complex)
            if M.shape != (self.dim, self.dim):
                raise RepError(f"image of {g} has shape {M.shape}, expected {self.dim}")
            if self.check and unitarity_defect(M) > UNITARY_TOL:
                raise RepError(f"image of {g} is not unitary")
            mats[g] = M
        self.matrices = mats

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(self.matrices)

    def __getitem__(self, g: str) -> np.ndarray:
        return self.matrices[g]

    def image(self, g: str) -> np.ndarray:
        if g in self.matrices:
            return self.matrices[g]
        if g == J:
            return -np.eye(self.dim, dtype=complex)
        raise RepError(f"generator {g!r} has no assigned image")

    def with_images(self, extra: Mapping[str, np.ndarray]) -> "ApproxRep":
        mats = dict(self.matrices)
        mats.update(extra)
        return ApproxRep(self.dim, mats, self.check)

    def restrict(self, gens: Iterable[str]) -> "ApproxRep":
        return ApproxRep(self.dim, {g: self.image(g) for g in gens}, False)


def evaluate(rep: ApproxRep, w: Word) -> np.ndarray:
    """Matrix of a word: images multiplied in word order, inverses as adjoints."""
    out = np.eye(rep.dim, dtype=complex)
    for g, e in w.letters:
        M = rep.image(g)
        out = out @ (M if e == 1 else M.conj().T)
    return out


@dataclass
class DefectReport:
    defects: list[tuple[str, float]]
    epsilon: float

    def worst(self) -> tuple[str, float]:
        return max(self.defects, key=lambda p: p[1]) if self.defects else ("", 0.0)

    def to_json(self) -> dict:
        return {"epsilon": self.epsilon,
                "defects": [{"relation": r, "defect": d} for r, d in self.defects]}


def defect(rep: ApproxRep, pres: Presentation | Sequence[Word]) -> DefectReport:
    rels = pres.relations if isinstance(pres, Presentation) else tuple(pres)
    gens = set().union(*(r.generators() for r in rels)) if rels else set()
    missing = sorted(g for g in gens if g not in rep.matrices and g != J)
    if missing:
        raise RepError(f"no image for generators {missing}")
    I = np.eye(rep.dim)
    ds = [(str(r), hs_norm(evaluate(rep, r) - I)) for r in rels]
    return DefectReport(ds, max((d for _, d in ds), default=0.0))


def epsilon(rep: ApproxRep, pres) -> float:
    return defect(rep, pres).epsilon


# -- constructions -----------------------------------------------------------

def trivial_rep(gens: Iterable[str], dim: int = 1, j_image: Optional[float] = None) -> ApproxRep:
    mats = {g: np.eye(dim, dtype=complex) for g in gens if g != J}
    if j_image is not None:
        mats[J] = j_image * np.eye(dim, dtype=complex)
    return ApproxRep(dim, mats)


def _same_generators(a: ApproxRep, b: ApproxRep):
    if set(a.matrices) != set(b.matrices):
        raise RepError("representations assign different generator sets")


def direct_sum(a: ApproxRep, b: ApproxRep) -> ApproxRep:
    _same_generators(a, b)
    d = a.dim + b.dim
    mats = {}
    for g in a.matrices:
        M = np.zeros((d, d), dtype=complex)
        M[:a.dim, :a.dim] = a[g]
        M[a.dim:, a.dim:] = b[g]
        mats[g] = M
    return ApproxRep(d, mats)


def direct_sum_many(reps: Sequence[ApproxRep]) -> ApproxRep:
    out = reps[0]
    for r in reps[1:]:
        out = direct_sum(out, r)
    return out


def tensor(a: ApproxRep, b: ApproxRep) -> ApproxRep:
    _same_generators(a, b)
    if a.dim * b.dim > DIM_CAP:
        raise FeasibilityError(f"tensor dimension {a.dim * b.dim} exceeds cap {DIM_CAP}")
    return ApproxRep(a.dim * b.dim, {g: np.kron(a[g], b[g]) for g in a.matrices})


def conjugate_rep(rep: ApproxRep, U: np.ndarray) -> ApproxRep:
    """Change of basis ``M -> U* M U``."""
    Uh = U.conj().T
    return ApproxRep(rep.dim, {g: Uh @ M @ U for g, M in rep.matrices.items()})


def rep_from_words(rep: ApproxRep, images: Mapping[str, Word]) -> ApproxRep:
    """Pull back along a generator map: ``g -> evaluate(rep, images[g])``."""
    return ApproxRep(rep.dim, {g: evaluate(rep, w) for g, w in images.items()})


# -- randomness --------------------------------------------------------------

def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a complex Gaussian."""
    Z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    ph = np.diagonal(R) / np.abs(np.diagonal(R))
    return Q * ph


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    """Hermitian matrix of unit normalized Hilbert-Schmidt norm."""
    A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    H = (A + A.conj().T) / 2
    return H / hs_norm(H)


def expi(H: np.ndarray, s: float = 1.0) -> np.ndarray:
    """``exp(i s H)`` for Hermitian ``H``."""
    w, V = np.linalg.eigh(H)
    return (V * np.exp(1j * s * w)) @ V.conj().T


def perturb(rep: ApproxRep, scale: float, rng: np.random.Generator,
            gens: Optional[Iterable[str]] = None) -> ApproxRep:
    """Multiply each image by ``exp(i s H)`` with ``H`` a random unit Hermitian."""
    gens = set(rep.matrices if gens is None else gens)
    mats = {}
    for g, M in rep.matrices.items():
        if g in gens and g != J:
            mats[g] = expi(random_hermitian(rep.dim, rng), scale) @ M
        else:
            mats[g] = M
    return ApproxRep(rep.dim, mats)


def random_involution(d: int, rng: np.random.Generator, basis: Optional[np.ndarray] = None,
                      signs: Optional[np.ndarray] = None) -> np.ndarray:
    U = random_unitary(d, rng) if basis is None else basis
    if signs is None:
        signs = rng.choice([-1.0, 1.0], size=d)
    return (U * signs) @ U.conj().T


# -- JSON --------------------------------------------------------------------

def rep_to_json(rep: ApproxRep) -> dict:
    return {
        "dim": rep.dim,
        "generators": list(rep.matrices),
        "matrices": {g: [[[float(z.real), float(z.imag)] for z in row] for row in M]
                     for g, M in rep.matrices.items()},
    }


def rep_from_json(data: dict) -> ApproxRep:
    try:
        d = int(data["dim"])
        mats = {}
        for g in data["generators"]:
            arr = np.asarray(data["matrices"][g], dtype=float)
            if arr.shape != (d, d, 2):
                raise RepError(f"matrix for {g} must be {d}x{d} [re, im] pairs")
            mats[g] = arr[..., 0] + 1j * arr[..., 1]
    except (KeyError, TypeError) as exc:
        raise RepError(f"malformed representation JSON: {exc}") from None
    return ApproxRep(d, mats)


def dumps_rep(rep: ApproxRep) -> str:
    return json.dumps(rep_to_json(rep)) + "\n"


def read_rep(path) -> ApproxRep:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise RepError(f"{path}: invalid JSON ({exc})") from None
    return rep_from_json(data)


def write_rep(rep: ApproxRep, path) -> None:
    Path(path).write_text(dumps_rep(rep), encoding="utf-8")
