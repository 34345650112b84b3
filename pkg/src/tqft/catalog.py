"""Built-in premodular categories.

Every entry is constructed from explicit formulas and pushed through
:func:`tqft.category.validate` before it is handed out.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .category import PremodularData, validate
from .errors import CatalogMiss, CategoryDataError
from .scalars import CycloField, CycloScalar

NAMES = ("trivial", "semion", "repZ2", "fibonacci", "ising", "su2_1", "su2_2", "su2_3", "su2_4")


def list_builtins() -> list[str]:
    return list(NAMES)


def builtin(name: str, *, check: bool = True) -> PremodularData:
    """Return the named built-in category (validated once, then cached)."""
    C = _build(name)
    if check:
        _check(name)
    return C


@lru_cache(maxsize=None)
def _check(name: str) -> None:
    rep = validate(_build(name))
    if not rep.passed:
        raise CategoryDataError(f"built-in {name} failed validation: {rep.summary(3)}")


@lru_cache(maxsize=None)
def _build(name: str) -> PremodularData:
    if name == "trivial":
        return _pointed_z2(None)
    if name == "semion":
        return _pointed_z2("semion")
    if name == "repZ2":
        return _pointed_z2("repZ2")
    if name == "ising":
        return _ising()
    if name == "fibonacci":
        return _su2(3, integer_only=True, name="fibonacci", labels=["1", "tau"])
    if name.startswith("su2_"):
        try:
            k = int(name[4:])
        except ValueError:
            k = 0
        if 1 <= k <= 4:
            return _su2(k)
    raise CatalogMiss(f"unknown built-in category {name!r}; known: {', '.join(NAMES)}")


# ---------------------------------------------------------------------------
# helpers


def _fusion_from_rule(n: int, rule) -> list[tuple[int, int, int]]:
    return [(i, j, k) for i in range(n) for j in range(n) for k in range(n) if rule(i, j, k)]


def _finish(name, fld, labels, dual, fusion, qdim, twist, F, R) -> PremodularData:
    """Attach kappa, sqrtD and rational square roots of dimensions."""
    C = PremodularData(name, fld, labels, dual, fusion, qdim, twist, F, R)
    pp, pm = C.gauss_sums
    kappa = sqrtD = None
    if not pm.is_zero():
        ratio = pp / pm
        for m in range(fld.N):
            z = fld.zeta(m)
            if z * z == ratio:
                cand = pp / z
                val = complex(cand)
                if abs(val.imag) < 1e-9 and val.real > 0 and cand * cand == C.global_dim:
                    kappa, sqrtD = z, cand
                    break
    sq = []
    for d in C.qdim:
        r = None
        if d.is_rational():
            q = d.to_fraction()
            num, den = _isqrt(q.numerator), _isqrt(q.denominator)
            if num is not None and den is not None:
                r = fld(Fraction(num, den))
        sq.append(r)
    if kappa is None and not pm.is_zero():
        # non-modular: kappa is still a root of unity, sqrtD found separately
        for m in range(fld.N):
            z = fld.zeta(m)
            if z * z * pm == pp and complex(z).real > 0:
                kappa = z
                break
    if sqrtD is None:
        sqrtD = _known_sqrt(C.global_dim, fld)
    return C.replace(sqrt_qdim=sq, sqrtD=sqrtD, kappa=kappa)


def _known_sqrt(x, fld):
    if x.is_rational():
        q = x.to_fraction()
        num, den = _isqrt(q.numerator), _isqrt(q.denominator)
        if num is not None and den is not None:
            return fld(Fraction(num, den))
        if fld.N % 8 == 0:
            # sqrt(2) = zeta_8 + zeta_8^{-1}
            s2 = fld.zeta(1, 8) + fld.zeta(-1, 8)
            half = q / 2
            num, den = _isqrt(half.numerator), _isqrt(half.denominator)
            if num is not None and den is not None:
                return s2 * Fraction(num, den)
    return None


def _isqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = int(n**0.5)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == n:
            return c
    return None


def _pointed_z2(kind: str | None) -> PremodularData:
    fld = CycloField(8)
    if kind is None:
        return _finish("trivial", fld, ["1"], [0], [(0, 0, 0)], [1], [1], {}, {})
    fusion = _fusion_from_rule(2, lambda i, j, k: (i + j) % 2 == k)
    if kind == "semion":
        f, r, t = -1, fld.zeta(1, 4), fld.zeta(1, 4)
        labels = ["1", "s"]
    else:
        f, r, t = 1, 1, 1
        labels = ["1", "x"]
    return _finish(kind, fld, labels, [0, 1], fusion, [1, 1], [1, t], {(1, 1, 1, 1, 0, 0): f}, {(1, 1, 0): r})


def _ising() -> PremodularData:
    fld = CycloField(16)
    z = fld.zeta
    one, s, p = 0, 1, 2
    rules = {(0, 0): [0], (0, 1): [1], (0, 2): [2], (1, 1): [0, 2], (1, 2): [1], (2, 2): [0]}

    def N(a, b, c):
        key = (min(a, b), max(a, b))
        return c in rules[key]

    fusion = _fusion_from_rule(3, N)
    sqrt2 = z(2) + z(-2)
    qdim = [1, sqrt2, 1]
    twist = [1, z(1), -1]
    F = {}
    for a in (1, 2):
        for b in (1, 2):
            for c in (1, 2):
                for d in range(3):
                    for e in range(3):
                        if not (N(a, b, e) and N(e, c, d)):
                            continue
                        for f in range(3):
                            if N(b, c, f) and N(a, f, d):
                                F[(a, b, c, d, e, f)] = fld(1)
    inv = sqrt2.inverse()
    for e in (one, p):
        for f in (one, p):
            F[(s, s, s, s, e, f)] = -inv if (e == p and f == p) else inv
    F[(s, p, s, p, s, s)] = fld(-1)
    F[(p, s, p, s, s, s)] = fld(-1)
    R = {
        (s, s, one): z(-1),
        (s, s, p): z(3),
        (s, p, s): -z(4),
        (p, s, s): -z(4),
        (p, p, one): fld(-1),
    }
    return _finish("ising", fld, ["1", "sigma", "psi"], [0, 1, 2], fusion, qdim, twist, F, R)


# -- quantum sl2 at level k -------------------------------------------------


class _QInt:
    """Quantum integers [n] at q = zeta_{2(k+2)} inside Q(zeta_N)."""

    def __init__(self, fld: CycloField, k: int):
        self.fld = fld
        self.order = 2 * (k + 2)
        q = fld.zeta(1, self.order)
        self.qq = q - q.inverse()
        self._fact = {0: fld.one}

    def q(self, n) -> CycloScalar:
        m = Fraction(n) * self.fld.N / self.order
        if m.denominator != 1:
            raise ValueError(f"q^{n} is not in Q(zeta_{self.fld.N})")
        return self.fld.zeta(int(m))

    def qint(self, n: int) -> CycloScalar:
        return (self.q(n) - self.q(-n)) / self.qq

    def fact(self, n: int) -> CycloScalar:
        if n < 0:
            raise ValueError("negative quantum factorial")
        if n not in self._fact:
            self._fact[n] = self.fact(n - 1) * self.qint(n)
        return self._fact[n]


def _su2(k: int, *, integer_only: bool = False, name: str | None = None, labels=None) -> PremodularData:
    fld = CycloField(8 * (k + 2)) if not integer_only else CycloField(4 * (k + 2))
    Q = _QInt(fld, k)
    spins2 = [j for j in range(k + 1) if not integer_only or j % 2 == 0]
    n = len(spins2)
    if labels is None:
        labels = [str(Fraction(j, 2)) for j in spins2]

    def adm(A, B, C):
        return (A + B + C) % 2 == 0 and abs(A - B) <= C <= A + B and A + B + C <= 2 * k

    fusion = _fusion_from_rule(n, lambda i, j, l: adm(spins2[i], spins2[j], spins2[l]))
    qdim = [Q.qint(J + 1) for J in spins2]
    twist = [Q.q(Fraction(J * (J + 2), 2)) for J in spins2]  # q^{2j(j+1)}

    def delta2(A, B, C):
        f = Q.fact
        return f((A + B - C) // 2) * f((A - B + C) // 2) * f((-A + B + C) // 2) / f((A + B + C) // 2 + 1)

    def racah(a, b, c, d, e, f):
        # {a b c; d e f} without triangle coefficients, all spins doubled
        lo = max(a + b + c, a + e + f, d + b + f, d + e + c) // 2
        hi = min(a + b + d + e, a + c + d + f, b + c + e + f) // 2
        tot = fld.zero
        for z in range(lo, hi + 1):
            den = (
                Q.fact(z - (a + b + c) // 2)
                * Q.fact(z - (a + e + f) // 2)
                * Q.fact(z - (d + b + f) // 2)
                * Q.fact(z - (d + e + c) // 2)
                * Q.fact((a + b + d + e) // 2 - z)
                * Q.fact((a + c + d + f) // 2 - z)
                * Q.fact((b + c + e + f) // 2 - z)
            )
            term = Q.fact(z + 1) / den
            tot = tot - term if z % 2 else tot + term
        return tot

    F = {}
    for ia in range(1, n):
        for ib in range(1, n):
            for ic in range(1, n):
                a, b, c = spins2[ia], spins2[ib], spins2[ic]
                for id_ in range(n):
                    d = spins2[id_]
                    for ie in range(n):
                        e = spins2[ie]
                        if not (adm(a, b, e) and adm(e, c, d)):
                            continue
                        for if_ in range(n):
                            f = spins2[if_]
                            if not (adm(b, c, f) and adm(a, f, d)):
                                continue
                            sign = -1 if ((a + b + c + d) // 2) % 2 else 1
                            val = Q.qint(f + 1) * delta2(b, c, f) * delta2(a, f, d) * racah(a, b, e, c, d, f)
                            F[(ia, ib, ic, id_, ie, if_)] = val if sign > 0 else -val
    R = {}
    for ia in range(1, n):
        for ib in range(1, n):
            for ic in range(n):
                a, b, c = spins2[ia], spins2[ib], spins2[ic]
                if adm(a, b, c):
                    ex = Fraction(c * (c + 2) - a * (a + 2) - b * (b + 2), 4)
                    sign = -1 if ((a + b - c) // 2) % 2 else 1
                    R[(ia, ib, ic)] = Q.q(ex) if sign > 0 else -Q.q(ex)
    return _finish(name or f"su2_{k}", fld, labels, list(range(n)), fusion, qdim, twist, F, R)
