"""The Drinfeld center of a modular category in its A x A model, with the reduced tensor product."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .category import PremodularData, require_modular
from .diagram import DOWN, UP, MorphismMatrix, Strand, evaluate, omega_ring


@dataclass(frozen=True)
class CenterObject:
    """Multiplicity matrix: ``mult[i][j]`` copies of ``X_i [x] X_j^*``."""

    mult: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(tuple(int(x) for x in row) for row in self.mult))
        n = len(self.mult)
        if any(len(r) != n for r in self.mult) or any(x < 0 for r in self.mult for x in r):
            raise ValueError("multiplicities must form a square non-negative integer matrix")

    @classmethod
    def simple(cls, i: int, j: int, n: int) -> "CenterObject":
        return cls(tuple(tuple(int(a == i and b == j) for b in range(n)) for a in range(n)))

    @classmethod
    def zero(cls, n: int) -> "CenterObject":
        return cls(tuple(tuple(0 for _ in range(n)) for _ in range(n)))

    @property
    def rank(self) -> int:
        return len(self.mult)

    def is_zero(self) -> bool:
        return not any(x for r in self.mult for x in r)

    def __add__(self, other: "CenterObject") -> "CenterObject":
        return CenterObject(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.mult, other.mult)))

    def terms(self) -> list[tuple[int, int, int]]:
        return [(i, j, m) for i, r in enumerate(self.mult) for j, m in enumerate(r) if m]

    def describe(self, labels: Sequence[str]) -> str:
        parts = []
        for i, j, m in self.terms():
            t = f"X_{labels[i]}[x]X_{labels[j]}*"
            parts.append(t if m == 1 else f"{m} {t}")
        return " + ".join(parts) if parts else "0"


def reduced_tensor(a: CenterObject, b: CenterObject, C: PremodularData | None = None) -> CenterObject:
    """(X_i [x] X_j^*) (x) (X_k [x] X_l^*) = delta_jk X_i [x] X_l^*, extended bilinearly."""
    if C is not None:
        require_modular(C)
    n = a.rank
    if b.rank != n:
        raise ValueError("objects over different label sets")
    out = [[0] * n for _ in range(n)]
    for i, j, m in a.terms():
        for l in range(n):
            if b.mult[j][l]:
                out[i][l] += m * b.mult[j][l]
    return CenterObject(tuple(map(tuple, out)))


def reduced_unit(C: PremodularData) -> CenterObject:
    require_modular(C)
    n = C.rank
    return CenterObject(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def center_dims(i, j, C: PremodularData):
    """Left and right dimensions (d_j/d_i, d_i/d_j) of X_i [x] X_j^*."""
    require_modular(C)
    i, j = C.index(i), C.index(j)
    di, dj = C.qdim[i], C.qdim[j]
    return dj / di, di / dj


def q_strands(i, j, k, l, C: PremodularData) -> list[Strand]:
    lab = C.labels
    i, j, k, l = (C.index(x) for x in (i, j, k, l))
    return [Strand(lab[i], UP), Strand(lab[j], DOWN), Strand(lab[k], UP), Strand(lab[l], DOWN)]


def q_projector(i, j, k, l, C: PremodularData) -> MorphismMatrix:
    """D^{-1} times an Omega circle around the middle pair of (X_i, X_j^*, X_k, X_l^*)."""
    require_modular(C)
    strands = q_strands(i, j, k, l, C)
    return evaluate(omega_ring(strands, 1, 2), C).scale(C.global_dim.inverse())


def algebraic_q_rank(i, j, k, l, C: PremodularData) -> int:
    """delta_jk * sum_m N_{i l*}^m: the rank predicted by the reduced tensor rule."""
    i, j, k, l = (C.index(x) for x in (i, j, k, l))
    if j != k:
        return 0
    return len(C.products[i][C.dual[l]])


def fusion_table(C: PremodularData) -> list[tuple[tuple[int, int], tuple[int, int], CenterObject]]:
    n = C.rank
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    out.append(((i, j), (k, l), reduced_tensor(CenterObject.simple(i, j, n), CenterObject.simple(k, l, n), C)))
    return out
