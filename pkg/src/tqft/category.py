"""Premodular category data, coherence validation and derived constants.

Conventions (skeletal, multiplicity free):

* ``F[a, b, c, d, e, f]`` is the change of basis of splitting trees
  ``((a b)_e c)_d = sum_f F[e, f] (a (b c)_f)_d``.
* ``R[a, b, c]`` is the braiding eigenvalue ``c_{a,b} psi^{ab}_c = R^{ab}_c psi^{ba}_c``.
* Entries with ``a``, ``b`` or ``c`` equal to the unit are identically 1 and
  never stored; ``R`` entries with a unit argument are likewise 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

from . import linalg
from .errors import CategoryDataError, DegenerateCategory, ModularityRequired
from .scalars import CycloField, FloatField, FloatScalar, Scalar, parse_scalar


@dataclass
class FBlock:
    rows: list[int]  # intermediate labels e of ((ab)_e c)_d
    cols: list[int]  # intermediate labels f of (a(bc)_f)_d
    mat: list[list[Scalar]]
    inv: list[list[Scalar]] | None

    def entry(self, e: int, f: int):
        return self.mat[self.rows.index(e)][self.cols.index(f)]

    def inv_entry(self, f: int, e: int):
        return self.inv[self.cols.index(f)][self.rows.index(e)]


class PremodularData:
    """The data of a multiplicity-free premodular category.

    Label 0 is the unit.  Scalars live in ``field`` (exact ``CycloField`` or
    inexact ``FloatField``).
    """

    def __init__(
        self,
        name: str,
        field: CycloField | FloatField,
        labels: Sequence[str],
        dual: Sequence[int],
        fusion: Iterable[tuple[int, int, int]],
        qdim: Sequence[Scalar],
        twist: Sequence[Scalar],
        F: Mapping[tuple[int, ...], Scalar],
        R: Mapping[tuple[int, int, int], Scalar],
        sqrt_qdim: Sequence[Scalar | None] | None = None,
        sqrtD: Scalar | None = None,
        kappa: Scalar | None = None,
    ):
        self.name = name
        self.field = field
        self.labels = list(labels)
        self.dual = list(dual)
        self.fusion = frozenset(tuple(t) for t in fusion)
        self.qdim = [field(x) for x in qdim]
        self.twist = [field(x) for x in twist]
        self.F = {tuple(k): field(v) for k, v in F.items()}
        self.R = {tuple(k): field(v) for k, v in R.items()}
        self.sqrt_qdim = list(sqrt_qdim) if sqrt_qdim is not None else [None] * len(self.labels)
        self.sqrt_qdim = [None if x is None else field(x) for x in self.sqrt_qdim]
        self.sqrtD = None if sqrtD is None else field(sqrtD)
        self.kappa = None if kappa is None else field(kappa)
        self._blocks: dict[tuple[int, int, int, int], FBlock] = {}
        n = len(self.labels)
        self.products = [[sorted(k for k in range(n) if (i, j, k) in self.fusion) for j in range(n)] for i in range(n)]

    # -- basic accessors ----------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def one(self):
        return self.field.one

    @property
    def zero(self):
        return self.field.zero

    @property
    def exact(self) -> bool:
        return self.field.exact

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.rank:
                raise KeyError(f"label index {label} out of range for {self.name}")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r} in category {self.name}") from None

    def Nabc(self, a: int, b: int, c: int) -> int:
        return 1 if (a, b, c) in self.fusion else 0

    def Fval(self, a, b, c, d, e, f):
        if not (self.Nabc(a, b, e) and self.Nabc(e, c, d) and self.Nabc(b, c, f) and self.Nabc(a, f, d)):
            return self.zero
        if a == 0 or b == 0 or c == 0:
            return self.one
        return self.F.get((a, b, c, d, e, f), self.zero)

    def Rval(self, a, b, c):
        if not self.Nabc(a, b, c):
            return self.zero
        if a == 0 or b == 0:
            return self.one
        return self.R.get((a, b, c), self.zero)

    def block(self, a: int, b: int, c: int, d: int) -> FBlock:
        key = (a, b, c, d)
        blk = self._blocks.get(key)
        if blk is None:
            rows = [e for e in self.products[a][b] if self.Nabc(e, c, d)]
            cols = [f for f in self.products[b][c] if self.Nabc(a, f, d)]
            mat = [[self.Fval(a, b, c, d, e, f) for f in cols] for e in rows]
            inv = None
            if len(rows) == len(cols):
                try:
                    inv = linalg.inverse(mat, self.one, self.zero) if rows else []
                except ZeroDivisionError:
                    inv = None
            blk = FBlock(rows, cols, mat, inv)
            self._blocks[key] = blk
        return blk

    def Finv(self, a, b, c, d, f, e):
        """Entry of the inverse block: (a(bc)_f)_d = sum_e Finv[f, e] ((ab)_e c)_d."""
        blk = self.block(a, b, c, d)
        if blk.inv is None:
            raise CategoryDataError(f"F block {(a, b, c, d)} is not invertible")
        if f not in blk.cols or e not in blk.rows:
            return self.zero
        return blk.inv_entry(f, e)

    # -- rigid structure used by the diagram calculus --------------------
    @cached_property
    def cup_down_coeff(self) -> list:
        """Coefficient of the cup emitting (l down, l up) on the tree vertex (l*, l)->1."""
        out = []
        for l in range(self.rank):
            lb = self.dual[l]
            out.append((self.qdim[l] * self.Finv(l, lb, l, l, 0, 0)).inverse())
        return out

    @cached_property
    def cap_down_coeff(self) -> list:
        """Coefficient of the cap consuming (l down, l up)."""
        return [self.Fval(l, self.dual[l], l, l, 0, 0).inverse() for l in range(self.rank)]

    # -- derived constants ------------------------------------------------
    @cached_property
    def global_dim(self):
        total = self.zero
        for d in self.qdim:
            total = total + d * d
        return total

    @cached_property
    def gauss_sums(self):
        pp = pm = self.zero
        for d, t in zip(self.qdim, self.twist):
            pp = pp + t * d * d
            pm = pm + t.inverse() * d * d
        return pp, pm

    def __repr__(self):
        return f"PremodularData({self.name!r}, labels={self.labels})"

    # -- serialisation ------------------------------------------------
    def to_json(self) -> dict:
        def s(x):
            return None if x is None else x.to_json()

        lab = self.labels
        return {
            "name": self.name,
            "root_order": self.field.N,
            "labels": lab,
            "dual": [lab[self.dual[i]] for i in range(self.rank)],
            "fusion": sorted([lab[i], lab[j], lab[k]] for i, j, k in self.fusion),
            "qdim": [s(x) for x in self.qdim],
            "twist": [s(x) for x in self.twist],
            "F": [[[lab[i] for i in key], s(v)] for key, v in sorted(self.F.items())],
            "R": [[[lab[i] for i in key], s(v)] for key, v in sorted(self.R.items())],
            "sqrt_qdim": [s(x) for x in self.sqrt_qdim],
            "sqrtD": s(self.sqrtD),
            "kappa": s(self.kappa),
        }

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> "PremodularData":
        try:
            N = doc.get("root_order")
            fld = CycloField(int(N)) if N is not None else FloatField(float(doc.get("tolerance", FloatScalar.default_tol)))
            labels = [str(x) for x in doc["labels"]]

            def idx(x):
                if isinstance(x, int) and not isinstance(x, bool):
                    return x
                return labels.index(str(x))

            def sc(x):
                return None if x is None else parse_scalar(x, fld)

            fusion = []
            for entry in doc["fusion"]:
                if len(entry) == 4 and int(entry[3]) > 1:
                    raise CategoryDataError(
                        f"fusion multiplicity {entry[3]} > 1 for {entry[:3]}: only multiplicity-free categories are supported"
                    )
                if len(entry) == 4 and int(entry[3]) == 0:
                    continue
                fusion.append(tuple(idx(x) for x in entry[:3]))
            F = {tuple(idx(x) for x in key): sc(v) for key, v in doc.get("F", [])}
            R = {tuple(idx(x) for x in key): sc(v) for key, v in doc.get("R", [])}
            sq = doc.get("sqrt_qdim")
            return cls(
                name=str(doc.get("name", "unnamed")),
                field=fld,
                labels=labels,
                dual=[idx(x) for x in doc["dual"]],
                fusion=fusion,
                qdim=[sc(x) for x in doc["qdim"]],
                twist=[sc(x) for x in doc["twist"]],
                F=F,
                R=R,
                sqrt_qdim=None if sq is None else [sc(x) for x in sq],
                sqrtD=sc(doc.get("sqrtD")),
                kappa=sc(doc.get("kappa")),
            )
        except (KeyError, ValueError, TypeError, IndexError) as exc:
            raise CategoryDataError(f"malformed category document: {exc}") from exc

    @classmethod
    def load(cls, path) -> "PremodularData":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def replace(self, **changes) -> "PremodularData":
        kw = dict(
            name=self.name, field=self.field, labels=self.labels, dual=self.dual, fusion=self.fusion,
            qdim=self.qdim, twist=self.twist, F=self.F, R=self.R, sqrt_qdim=self.sqrt_qdim,
            sqrtD=self.sqrtD, kappa=self.kappa,
        )
        kw.update(changes)
        return PremodularData(**kw)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    failures: list[tuple[str, tuple, Any, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def axioms_failed(self) -> set[str]:
        return {f[0] for f in self.failures}

    def summary(self, limit: int = 10) -> str:
        if self.passed:
            return "passed"
        lines = [f"FAILED ({len(self.failures)} failures)"]
        for axiom, witness, lhs, rhs in self.failures[:limit]:
            lines.append(f"  {axiom} at {witness}: lhs={lhs!s} rhs={rhs!s}")
        return "\n".join(lines)


class _Stop(Exception):
    pass


def validate(C: PremodularData, *, stop_at_first: bool = False) -> ValidationReport:
    """Exhaustively check the coherence data of ``C``.

    Axiom ids: ``dual``, ``unit``, ``fusion``, ``fusion-dims``, ``F-invertible``,
    ``pentagon``, ``hexagon``, ``hexagon-inverse``, ``ribbon``, ``twist``,
    ``pivotal``, ``sqrt``.
    """
    rep = ValidationReport()

    def fail(axiom, witness, lhs, rhs):
        rep.failures.append((axiom, tuple(witness), lhs, rhs))
        if stop_at_first:
            raise _Stop

    try:
        _validate(C, fail)
    except _Stop:
        pass
    return rep


def _validate(C: PremodularData, fail) -> None:
    n = C.rank
    one, zero = C.one, C.zero
    L = range(n)
    dual = C.dual

    # duality and unit
    if n == 0 or dual[0] != 0:
        fail("dual", (0,), dual[0] if n else None, 0)
    for i in L:
        if not 0 <= dual[i] < n or dual[dual[i]] != i:
            fail("dual", (i,), dual[i], "involution")
    if C.qdim[0] != one:
        fail("unit", ("d", 0), C.qdim[0], one)
    if C.twist[0] != one:
        fail("unit", ("theta", 0), C.twist[0], one)
    for i in L:
        for j in L:
            for k in L:
                N = C.Nabc(i, j, k)
                if i == 0 and N != (j == k):
                    fail("unit", ("N", i, j, k), N, int(j == k))
                if j == 0 and N != (i == k):
                    fail("unit", ("N", i, j, k), N, int(i == k))
                if k == 0 and N != (j == dual[i]):
                    fail("dual", ("N", i, j, k), N, int(j == dual[i]))
                if N != C.Nabc(j, i, k):
                    fail("fusion", ("commutative", i, j, k), N, C.Nabc(j, i, k))
                if N != C.Nabc(dual[j], dual[i], dual[k]):
                    fail("fusion", ("dual", i, j, k), N, C.Nabc(dual[j], dual[i], dual[k]))
    for key, v in C.F.items():
        a, b, c = key[:3]
        if (a == 0 or b == 0 or c == 0) and v != one:
            fail("unit", ("F",) + key, v, one)
    for key, v in C.R.items():
        if (key[0] == 0 or key[1] == 0) and v != one:
            fail("unit", ("R",) + key, v, one)

    # fusion ring: associativity and dimensions
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    lhs = sum(C.Nabc(a, b, e) * C.Nabc(e, c, d) for e in L)
                    rhs = sum(C.Nabc(b, c, f) * C.Nabc(a, f, d) for f in L)
                    if lhs != rhs:
                        fail("fusion", ("associative", a, b, c, d), lhs, rhs)
    for i in L:
        for j in L:
            lhs = C.qdim[i] * C.qdim[j]
            rhs = zero
            for k in C.products[i][j]:
                rhs = rhs + C.qdim[k]
            if lhs != rhs:
                fail("fusion-dims", (i, j), lhs, rhs)

    # F blocks invertible
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    blk = C.block(a, b, c, d)
                    if blk.rows and blk.inv is None:
                        fail("F-invertible", (a, b, c, d), len(blk.rows), len(blk.cols))
                        return

    # pentagon: F^{fcd}_e[g,l] F^{abl}_e[f,k] = sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]
    nz = [x for x in L if x != 0]
    Fv = C.Fval
    for a in nz:
        for b in nz:
            for c in nz:
                for d in nz:
                    for e in L:
                        for f in C.products[a][b]:
                            for g in C.products[f][c]:
                                if not C.Nabc(g, d, e):
                                    continue
                                for l in C.products[c][d]:
                                    if not C.Nabc(f, l, e):
                                        continue
                                    for k in C.products[b][l]:
                                        if not C.Nabc(a, k, e):
                                            continue
                                        lhs = Fv(f, c, d, e, g, l) * Fv(a, b, l, e, f, k)
                                        rhs = zero
                                        for h in C.products[b][c]:
                                            if C.Nabc(a, h, g) and C.Nabc(h, d, k):
                                                rhs = rhs + Fv(a, b, c, g, f, h) * Fv(a, h, d, e, g, k) * Fv(b, c, d, k, h, l)
                                        if lhs != rhs:
                                            fail("pentagon", (a, b, c, d, e, f, g, k, l), lhs, rhs)

    # hexagons (derived from c_{c,ab} and c_{ab,c} acting on splitting trees)
    Rv = C.Rval
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    fs = [f for f in C.products[a][b] if C.Nabc(f, c, d)]
                    es = [e for e in C.products[c][a] if C.Nabc(e, b, d)]
                    gs_acb = [g for g in C.products[c][b] if C.Nabc(a, g, d)]
                    for e in es:
                        for f in fs:
                            lhs = zero
                            for g in gs_acb:
                                lhs = lhs + Rv(c, a, e) * Fv(a, c, b, d, e, g) * Rv(c, b, g) * C.Finv(a, b, c, d, g, f)
                            rhs = Fv(c, a, b, d, e, f) * Rv(c, f, d)
                            if lhs != rhs:
                                fail("hexagon", (a, b, c, d, e, f), lhs, rhs)
                    gs_bc = [g for g in C.products[b][c] if C.Nabc(a, g, d)]
                    for f in fs:
                        for e in es:
                            lhs = zero
                            for g in gs_bc:
                                lhs = lhs + Fv(a, b, c, d, f, g) * Rv(b, c, g) * C.Finv(a, c, b, d, g, e) * Rv(a, c, e)
                            rhs = Rv(f, c, d) * C.Finv(c, a, b, d, f, e)
                            if lhs != rhs:
                                fail("hexagon-inverse", (a, b, c, d, e, f), lhs, rhs)

    # ribbon: theta self-dual, and the curl of c_{a,a} equals theta_a
    for a in L:
        if C.twist[a] != C.twist[dual[a]]:
            fail("ribbon", (a,), C.twist[a], C.twist[dual[a]])
        ab = dual[a]
        curl = zero
        for x in C.products[a][a]:
            curl = curl + C.Finv(a, a, ab, a, 0, x) * Rv(a, a, x) * Fv(a, a, ab, a, x, 0)
        curl = curl * C.qdim[a]
        if curl != C.twist[a]:
            fail("twist", (a,), curl, C.twist[a])

    # pivotal/spherical compatibility of the cups and caps with F and d
    for l in L:
        lb = dual[l]
        if C.qdim[l] != C.qdim[lb]:
            fail("pivotal", ("d-dual", l), C.qdim[l], C.qdim[lb])
        lhs = Fv(l, lb, l, l, 0, 0) * C.Finv(l, lb, l, l, 0, 0) * C.qdim[l] * C.qdim[l]
        if lhs != one:
            fail("pivotal", ("loop", l), lhs, one)
        if Fv(lb, l, lb, lb, 0, 0) != C.Finv(l, lb, l, l, 0, 0):
            fail("pivotal", ("zigzag", l), Fv(lb, l, lb, lb, 0, 0), C.Finv(l, lb, l, l, 0, 0))

    # square roots and kappa
    for i in L:
        s = C.sqrt_qdim[i]
        if s is not None and s * s != C.qdim[i]:
            fail("sqrt", ("sqrt_qdim", i), s * s, C.qdim[i])
    D = C.global_dim
    if C.sqrtD is not None and C.sqrtD * C.sqrtD != D:
        fail("sqrt", ("sqrtD",), C.sqrtD * C.sqrtD, D)
    pp, pm = C.gauss_sums
    if C.kappa is not None and C.kappa * C.kappa * pm != pp:
        fail("sqrt", ("kappa",), C.kappa * C.kappa * pm, pp)


# ---------------------------------------------------------------------------
# derived data


def derived_constants(C: PremodularData) -> dict:
    D = C.global_dim
    pp, pm = C.gauss_sums
    if pm.is_zero():
        raise DegenerateCategory(f"{C.name}: p_- = 0")
    out = {"D": D, "p_plus": pp, "p_minus": pm, "kappa_check": None, "modular_pp_pm": None}
    if C.kappa is not None:
        out["kappa_check"] = C.kappa * C.kappa * pm == pp
    if is_modular(C):
        ok = pp * pm == D
        out["modular_pp_pm"] = ok
        if not ok:
            raise DegenerateCategory(f"{C.name}: p_+ p_- != D for a modular category")
    return out


def s_matrix(C: PremodularData) -> list[list[Scalar]]:
    """s_ij = sum_k N_ij^k theta_k / (theta_i theta_j) d_k."""
    n = C.rank
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = C.zero
            for k in C.products[i][j]:
                acc = acc + C.twist[k] * C.qdim[k]
            row.append(acc / (C.twist[i] * C.twist[j]))
        out.append(row)
    return out


def is_modular(C: PremodularData) -> bool:
    return not linalg.det(s_matrix(C), C.one).is_zero()


def muger_center(C: PremodularData) -> list[int]:
    s = s_matrix(C)
    d = C.qdim
    return [i for i in range(C.rank) if all(s[i][j] == d[i] * d[j] for j in range(C.rank))]


def require_modular(C: PremodularData) -> None:
    if not is_modular(C):
        raise ModularityRequired(f"category {C.name!r} is not modular")


def torus_matrices(C: PremodularData) -> tuple[list, list]:
    """tau(S), tau(T) on k^Irr, with tau(S) evaluated from colored Hopf links."""
    require_modular(C)
    if C.sqrtD is None:
        raise CategoryDataError(f"{C.name}: sqrtD is required")
    from .diagram import hopf_link, evaluate_closed

    n = C.rank
    inv_sqrtD = C.sqrtD.inverse()
    S = [[evaluate_closed(hopf_link(C.labels[i], C.labels[j]), C) * inv_sqrtD for j in range(n)] for i in range(n)]
    T = [[C.twist[i] if i == j else C.zero for j in range(n)] for i in range(n)]
    return S, T


def verify_torus_rep(C: PremodularData) -> bool:
    """Check tau(S)^4 = 1 and (tau(S) tau(T))^3 = kappa tau(S)^2 exactly."""
    S, T = torus_matrices(C)
    if C.kappa is None:
        raise CategoryDataError(f"{C.name}: kappa is required")
    one, zero = C.one, C.zero
    S2 = linalg.matmul(S, S, zero)
    S4 = linalg.matmul(S2, S2, zero)
    ST = linalg.matmul(S, T, zero)
    ST3 = linalg.matpow(ST, 3, one, zero)
    return linalg.mat_equal(S4, linalg.identity(C.rank, one, zero)) and linalg.mat_equal(
        ST3, linalg.scale(S2, C.kappa)
    )
