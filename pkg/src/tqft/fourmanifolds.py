"""Kirby presentations of closed 4-manifolds, the handle-based CY invariant and Wall's index."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .category import PremodularData, require_modular
from .errors import InvalidLagrangian, MalformedLink, RequireConnected
from .links import (
    FramedLink,
    disjoint_union,
    empty_link,
    hopf,
    link_signature,
    linking_matrix,
    mirror,
    omega_evaluate,
    sqrtD_power,
    unknot_link,
    unlink,
)


@dataclass
class KirbyPresentation:
    link: FramedLink = field(default_factory=empty_link)
    dotted: frozenset = frozenset()
    n0: int = 1
    n3: int = 0
    n4: int = 1

    def __post_init__(self):
        self.dotted = frozenset(self.dotted)
        unknown = [c for c in self.dotted if c not in self.link.components]
        if unknown:
            raise MalformedLink(f"dotted components {unknown} are not in the link")
        if self.dotted:
            lk = linking_matrix(self.link)
            idx = {c: i for i, c in enumerate(self.link.components)}
            for c in self.dotted:
                if lk[idx[c]][idx[c]] != 0:
                    raise MalformedLink(f"dotted circle {c!r} must be 0-framed")
                for c2 in self.dotted:
                    if c2 != c and lk[idx[c]][idx[c2]] != 0:
                        raise MalformedLink(f"dotted circles {c!r} and {c2!r} are linked")

    @property
    def two_handles(self) -> list:
        return [c for c in self.link.components if c not in self.dotted]

    def to_json(self) -> dict:
        return {"n0": self.n0, "dotted": sorted(self.dotted), "link": self.link.to_json(), "n3": self.n3, "n4": self.n4}

    @classmethod
    def from_json(cls, doc: Mapping) -> "KirbyPresentation":
        return cls(
            link=FramedLink.from_json(doc.get("link", {"top": [], "slices": []})),
            dotted=frozenset(doc.get("dotted", [])),
            n0=int(doc.get("n0", 1)),
            n3=int(doc.get("n3", 0)),
            n4=int(doc.get("n4", 1)),
        )

    @classmethod
    def load(cls, path) -> "KirbyPresentation":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def euler_char(K: KirbyPresentation) -> int:
    return K.n0 - len(K.dotted) + len(K.two_handles) - K.n3 + K.n4


def sigma4(K: KirbyPresentation) -> int:
    """Signature of the linking matrix, dotted circles read as 0-framed components."""
    return link_signature(K.link)


def zcy_closed(K: KirbyPresentation, C: PremodularData):
    """Handle-by-handle CY invariant: D^{n4-n3-|dotted|} times the Omega-evaluation of the mirrored link."""
    if K.n0 != 1:
        raise RequireConnected(f"presentation has n0 = {K.n0}; only connected presentations are supported")
    require_modular(C)
    val = omega_evaluate(mirror(K.link), C)
    return C.global_dim ** (K.n4 - K.n3 - len(K.dotted)) * val


def zcy_formula(K: KirbyPresentation, C: PremodularData):
    """kappa^sigma * D^{chi/2}."""
    require_modular(C)
    return C.kappa ** sigma4(K) * sqrtD_power(C, euler_char(K))


def connected_sum(K1: KirbyPresentation, K2: KirbyPresentation) -> KirbyPresentation:
    if K1.n0 != 1 or K2.n0 != 1:
        raise RequireConnected("connected sum needs connected summands")
    L = disjoint_union(K1.link, K2.link)
    dotted = {f"1.{c}" for c in K1.dotted} | {f"2.{c}" for c in K2.dotted}
    return KirbyPresentation(L, frozenset(dotted), 1, K1.n3 + K2.n3, K1.n4 + K2.n4 - 1)


def standard_presentations() -> dict[str, KirbyPresentation]:
    S1S3_link = unknot_link(0, component="d")
    return {
        "S4": KirbyPresentation(),
        "CP2": KirbyPresentation(unknot_link(1)),
        "CP2bar": KirbyPresentation(unknot_link(-1)),
        "S2xS2": KirbyPresentation(hopf(0, 0)),
        "S1xS3": KirbyPresentation(S1S3_link, frozenset({"d"}), n3=1),
        "CP2#CP2bar": KirbyPresentation(unlink(1, -1)),
    }


# ---------------------------------------------------------------------------
# Wall's index of a Lagrangian triple


@dataclass
class LagrangianTriple:
    omega: list[list[int]]
    L1: list[list[int]]
    L2: list[list[int]]
    L3: list[list[int]]

    def __post_init__(self):
        n = len(self.omega)
        if n % 2 or any(len(r) != n for r in self.omega):
            raise InvalidLagrangian("omega must be a square matrix of even size")
        for i in range(n):
            for j in range(n):
                if self.omega[i][j] != -self.omega[j][i]:
                    raise InvalidLagrangian("omega is not skew-symmetric")
        if linalg.rank_rational(self.omega) != n:
            raise InvalidLagrangian("omega is degenerate")
        g = n // 2
        for name in ("L1", "L2", "L3"):
            L = getattr(self, name)
            if len(L) != g or any(len(r) != n for r in L):
                raise InvalidLagrangian(f"{name} must be a {g}x{n} matrix")
            if linalg.rank_rational(L) != g:
                raise InvalidLagrangian(f"{name} does not have rank {g}")
            for u in L:
                for v in L:
                    if _form(self.omega, u, v) != 0:
                        raise InvalidLagrangian(f"{name} is not isotropic")

    @classmethod
    def from_json(cls, doc: Mapping) -> "LagrangianTriple":
        return cls(doc["omega"], doc["L1"], doc["L2"], doc["L3"])

    @classmethod
    def load(cls, path) -> "LagrangianTriple":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _form(omega, u, v):
    return sum(Fraction(u[i]) * omega[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if omega[i][j])


def wall_index(t: LagrangianTriple) -> int:
    """Signature of Psi(x1, x1') = omega(x1, x2') on L1 cap (L2 + L3).

    Triples (x1, x2, x3) in L1 x L2 x L3 with x1 + x2 + x3 = 0 are parametrised by
    the nullspace of the stacked row matrix; the form is assembled on that space
    (its kernel does not affect the signature).
    """
    rows = [list(r) for r in t.L1] + [list(r) for r in t.L2] + [list(r) for r in t.L3]
    g = len(t.L1)
    n = len(t.omega)
    # solve sum_k a_k rows[k] = 0, i.e. rows^T a = 0
    mat = [[Fraction(rows[k][i]) for k in range(3 * g)] for i in range(n)]
    basis = linalg.nullspace_rational(mat, 3 * g)
    if not basis:
        return 0

    def part(a, block):
        L = (t.L1, t.L2)[block]
        off = block * g
        return [sum(a[off + k] * L[k][i] for k in range(g)) for i in range(n)]

    x1 = [part(a, 0) for a in basis]
    x2 = [part(a, 1) for a in basis]
    gram = [[_form(t.omega, x1[p], x2[q]) for q in range(len(basis))] for p in range(len(basis))]
    return linalg.signature(gram)
