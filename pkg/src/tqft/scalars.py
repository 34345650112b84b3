"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) reduced modulo the
N-th cyclotomic polynomial, as an integer numerator vector over a single positive
denominator.  All operations are exact.  A floating-point twin, :class:`FloatScalar`,
implements the same interface for categories supplied with inexact data.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

from .errors import DivByZero, InvalidRootOrder

RationalLike = Union[int, Fraction, str]


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), ``den`` monic."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert not any(num), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise InvalidRootOrder(f"root order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _reduce(poly: list[int], n: int) -> list[int]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    p = list(poly) + [0] * max(0, deg - len(poly))
    for i in range(len(p) - 1, deg - 1, -1):
        c = p[i]
        if c:
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    p[base + j] -= c * phi[j]
            p[i] = 0
    return p[:deg]


def _as_fraction(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class CycloScalar:
    """An element of Q(zeta_N) in canonical reduced form.  Immutable."""

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, num: Sequence[int], den: int = 1, *, _canonical: bool = False):
        if N < 1:
            raise InvalidRootOrder(f"root order must be positive, got {N}")
        if not _canonical:
            num = _reduce(list(num), N)
            if den < 0:
                num, den = [-c for c in num], -den
            g = math.gcd(den, *num)
            if g > 1:
                num = [c // g for c in num]
                den //= g
            if not any(num):
                den = 1
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CycloScalar is immutable")

    # -- construction ---------------------------------------------------
    @classmethod
    def normalize(cls, raw_coeffs: Iterable[RationalLike], N: int) -> "CycloScalar":
        """Canonical representative of sum_k raw_coeffs[k] * zeta_N^k."""
        if N < 1:
            raise InvalidRootOrder(f"root order must be positive, got {N}")
        fr = [_as_fraction(c) for c in raw_coeffs]
        if len(fr) > N:
            raise ValueError(f"at most N={N} raw coefficients allowed, got {len(fr)}")
        den = 1
        for f in fr:
            den = _lcm(den, f.denominator)
        return cls(N, [int(f * den) for f in fr], den)

    @classmethod
    def rational(cls, value: RationalLike, N: int = 1) -> "CycloScalar":
        f = _as_fraction(value)
        return cls(N, [f.numerator], f.denominator)

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "CycloScalar":
        k %= N
        return cls(N, [0] * k + [1])

    # -- properties -----------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar is not rational")
        return Fraction(self.num[0], self.den)

    # -- field embedding ------------------------------------------------
    def promote(self, M: int) -> "CycloScalar":
        """View this element inside Q(zeta_M); M must be a multiple of N."""
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"cannot promote Q(zeta_{self.N}) into Q(zeta_{M})")
        k = M // self.N
        poly = [0] * (k * (len(self.num) - 1) + 1)
        for i, c in enumerate(self.num):
            poly[i * k] = c
        return CycloScalar(M, poly, self.den)

    def _coerce(self, other) -> tuple["CycloScalar", "CycloScalar"] | None:
        if isinstance(other, CycloScalar):
            if other.N == self.N:
                return self, other
            M = _lcm(self.N, other.N)
            return self.promote(M), other.promote(M)
        if isinstance(other, (int, Fraction)):
            return self, CycloScalar.rational(other, self.N)
        return None

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if b.is_zero():
            return a
        if a.is_zero():
            return b
        g = math.gcd(a.den, b.den)
        fa, fb = b.den // g, a.den // g
        return CycloScalar(a.N, [x * fa + y * fb for x, y in zip(a.num, b.num)], a.den * fa)

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.N, [-c for c in self.num], self.den, _canonical=True)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[1] + (-pair[0])

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.is_zero() or b.is_zero():
            return CycloScalar(a.N, [0] * len(a.num), 1, _canonical=True)
        an = [(i, c) for i, c in enumerate(a.num) if c]
        bn = [(j, c) for j, c in enumerate(b.num) if c]
        prod = [0] * (len(a.num) + len(b.num) - 1)
        for i, x in an:
            for j, y in bn:
                prod[i + j] += x * y
        return CycloScalar(a.N, prod, a.den * b.den)

    __rmul__ = __mul__

    def _mul_matrix(self) -> list[list[Fraction]]:
        n = len(self.num)
        cols = []
        for j in range(n):
            cols.append(_reduce([0] * j + list(self.num), self.N))
        return [[Fraction(cols[j][i], self.den) for j in range(n)] for i in range(n)]

    def galois(self, k: int) -> "CycloScalar":
        """Image under the automorphism zeta -> zeta^k (k a unit mod N)."""
        poly = [0] * self.N
        for i, c in enumerate(self.num):
            if c:
                poly[(i * k) % self.N] += c
        return CycloScalar(self.N, poly, self.den)

    def inverse(self) -> "CycloScalar":
        """Inverse via the norm: a^-1 = prod_{sigma != 1} sigma(a) / N(a)."""
        if self.is_zero():
            raise DivByZero("division by zero in Q(zeta_%d)" % self.N)
        if self.is_rational():
            return CycloScalar.rational(Fraction(self.den, self.num[0]), self.N)
        N = self.N
        cof = [1]
        for k in range(2, N):
            if math.gcd(k, N) != 1:
                continue
            conj = [0] * N
            for i, c in enumerate(self.num):
                if c:
                    conj[(i * k) % N] += c
            conj = _reduce(conj, N)
            prod = [0] * (len(cof) + len(conj) - 1)
            for i, x in enumerate(cof):
                if x:
                    for j, y in enumerate(conj):
                        if y:
                            prod[i + j] += x * y
            cof = _reduce(prod, N)
            g = math.gcd(*cof)
            if g > 1:
                cof = [c // g for c in cof]
        full = [0] * (len(cof) + len(self.num) - 1)
        for i, x in enumerate(cof):
            if x:
                for j, y in enumerate(self.num):
                    if y:
                        full[i + j] += x * y
        norm = _reduce(full, N)
        assert not any(norm[1:]), "norm is not rational"
        return CycloScalar(N, [c * self.den for c in cof], norm[0])

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] * pair[1].inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[1] * pair[0].inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycloScalar.rational(1, self.N)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CycloScalar":
        """Complex conjugate (the Galois automorphism zeta -> zeta^-1)."""
        poly = [0] * self.N
        for i, c in enumerate(self.num):
            poly[(-i) % self.N] += c
        return CycloScalar(self.N, poly, self.den)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.N, self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # -- numerics -------------------------------------------------------
    def __complex__(self):
        return complex(sum(c * cmath.exp(2j * math.pi * k / self.N) for k, c in enumerate(self.num) if c) / self.den)

    def embed_complex(self, digits: int = 15) -> "ComplexInterval":
        return embed_complex(self, digits)

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: dict) -> "CycloScalar":
        return cls.normalize([Fraction(c) for c in doc["coeffs"]], int(doc["N"]))

    def __repr__(self):
        return f"CycloScalar(N={self.N}, coeffs={[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return body if self.N <= 2 or not any(self.num[1:]) else f"{body}  [z = zeta_{self.N}]"


@dataclass(frozen=True)
class ComplexInterval:
    """A complex value with a guaranteed absolute error radius."""

    center: mpmath.mpc
    radius: mpmath.mpf

    def contains(self, value: complex, slack: float = 0.0) -> bool:
        return abs(mpmath.mpc(value) - self.center) <= self.radius + slack

    def __mul__(self, other: "ComplexInterval") -> "ComplexInterval":
        c = self.center * other.center
        r = abs(self.center) * other.radius + abs(other.center) * self.radius + self.radius * other.radius
        return ComplexInterval(c, r)

    def overlaps(self, other: "ComplexInterval") -> bool:
        return abs(self.center - other.center) <= self.radius + other.radius

    def format(self, digits: int) -> str:
        return format_complex(self.center, digits)


def format_complex(z, digits: int) -> str:
    z = mpmath.chop(mpmath.mpc(z), tol=mpmath.mpf(10) ** (-digits))
    re = mpmath.nstr(mpmath.re(z), digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    im_val = mpmath.im(z)
    sign = "-" if im_val < 0 else "+"
    im = mpmath.nstr(abs(im_val), digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    return f"{re}{sign}{im}i"


def embed_complex(a: "CycloScalar | FloatScalar", digits: int = 15) -> ComplexInterval:
    """Value of ``a`` under zeta_N -> exp(2 pi i / N), to ``digits`` decimal digits.

    Evaluated with guard digits; the returned radius bounds the rounding error.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if isinstance(a, FloatScalar):
        return ComplexInterval(mpmath.mpc(a.value), mpmath.mpf(a.tol))
    guard = digits + 10 + len(str(max([abs(c) for c in a.num] + [a.den])))
    with mpmath.workdps(guard):
        total = mpmath.mpc(0)
        for k, c in enumerate(a.num):
            if c:
                total += c * mpmath.expjpi(mpmath.mpf(2 * k) / a.N)
        total /= a.den
        radius = mpmath.mpf(10) ** (-(digits + 5)) * (1 + abs(total))
    return ComplexInterval(total, radius)


class FloatScalar:
    """Inexact complex scalar with absolute-tolerance equality."""

    __slots__ = ("value", "tol")
    default_tol = 1e-9

    def __init__(self, value: complex, tol: float | None = None):
        object.__setattr__(self, "value", complex(value))
        object.__setattr__(self, "tol", FloatScalar.default_tol if tol is None else tol)

    def __setattr__(self, name, value):
        raise AttributeError("FloatScalar is immutable")

    def _v(self, other):
        if isinstance(other, FloatScalar):
            return other.value
        if isinstance(other, CycloScalar):
            return complex(other)
        if isinstance(other, (int, float, complex, Fraction)):
            return complex(other)
        return None

    def _wrap(self, v):
        return FloatScalar(v, self.tol)

    def __add__(self, o):
        v = self._v(o)
        return NotImplemented if v is None else self._wrap(self.value + v)

    __radd__ = __add__

    def __sub__(self, o):
        v = self._v(o)
        return NotImplemented if v is None else self._wrap(self.value - v)

    def __rsub__(self, o):
        v = self._v(o)
        return NotImplemented if v is None else self._wrap(v - self.value)

    def __mul__(self, o):
        v = self._v(o)
        return NotImplemented if v is None else self._wrap(self.value * v)

    __rmul__ = __mul__

    def __truediv__(self, o):
        v = self._v(o)
        if v is None:
            return NotImplemented
        if abs(v) <= self.tol:
            raise DivByZero("division by (numerically) zero scalar")
        return self._wrap(self.value / v)

    def __rtruediv__(self, o):
        v = self._v(o)
        if v is None:
            return NotImplemented
        return self._wrap(v) / self

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, k: int):
        if self.is_zero() and k < 0:
            raise DivByZero("division by (numerically) zero scalar")
        return self._wrap(self.value ** k)

    def inverse(self):
        return self._wrap(1) / self

    def conjugate(self):
        return self._wrap(self.value.conjugate())

    def is_zero(self) -> bool:
        return abs(self.value) <= self.tol

    def is_rational(self) -> bool:
        return False

    def __eq__(self, o):
        v = self._v(o)
        return NotImplemented if v is None else abs(self.value - v) <= self.tol

    def __hash__(self):
        return 0

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return self.value

    def embed_complex(self, digits: int = 15) -> ComplexInterval:
        return embed_complex(self, digits)

    def to_json(self):
        return [self.value.real, self.value.imag]

    def __repr__(self):
        return f"FloatScalar({self.value!r})"

    __str__ = __repr__


Scalar = Union[CycloScalar, FloatScalar]


class CycloField:
    """Scalar factory for Q(zeta_N)."""

    exact = True

    def __init__(self, N: int):
        if N < 1:
            raise InvalidRootOrder(f"root order must be positive, got {N}")
        self.N = N
        self.zero = CycloScalar.rational(0, N)
        self.one = CycloScalar.rational(1, N)

    def __call__(self, x) -> CycloScalar:
        if isinstance(x, CycloScalar):
            return x.promote(_lcm(x.N, self.N)) if self.N % x.N == 0 else x
        return CycloScalar.rational(x, self.N)

    def zeta(self, k: int = 1, order: int | None = None) -> CycloScalar:
        """zeta_order^k expressed in Q(zeta_N); ``order`` must divide N."""
        order = self.N if order is None else order
        if self.N % order:
            raise ValueError(f"zeta_{order} is not in Q(zeta_{self.N})")
        return CycloScalar.zeta(self.N, k * (self.N // order))

    def parse(self, doc) -> CycloScalar:
        return parse_scalar(doc, self)

    def __repr__(self):
        return f"CycloField({self.N})"


class FloatField:
    exact = False

    def __init__(self, tol: float = FloatScalar.default_tol):
        self.tol = tol
        self.N = None
        self.zero = FloatScalar(0, tol)
        self.one = FloatScalar(1, tol)

    def __call__(self, x) -> FloatScalar:
        if isinstance(x, FloatScalar):
            return x
        return FloatScalar(complex(x), self.tol)

    def zeta(self, k: int = 1, order: int = 1) -> FloatScalar:
        return FloatScalar(cmath.exp(2j * math.pi * k / order), self.tol)

    def parse(self, doc) -> FloatScalar:
        return parse_scalar(doc, self)


def parse_scalar(doc, field: "CycloField | FloatField | None" = None) -> Scalar:
    """Parse the textual scalar forms used in files.

    Accepted: ``{"N": n, "coeffs": [...]}`` (exact), an integer or rational string
    (exact, in ``field``), a float, or a ``[re, im]`` pair (inexact).
    """
    if isinstance(doc, dict):
        s = CycloScalar.from_json(doc)
        if isinstance(field, CycloField):
            if field.N % s.N:
                raise ValueError(f"scalar in Q(zeta_{s.N}) does not fit the category field Q(zeta_{field.N})")
            return s.promote(field.N)
        return s
    if isinstance(doc, bool):
        raise ValueError("boolean is not a scalar")
    if isinstance(doc, (int, str)) and not (isinstance(doc, str) and any(ch in doc for ch in "ej.")):
        val = Fraction(doc)
        if isinstance(field, FloatField):
            return field(float(val))
        return CycloScalar.rational(val, field.N if isinstance(field, CycloField) else 1)
    if isinstance(doc, float):
        return FloatScalar(doc, field.tol if isinstance(field, FloatField) else None)
    if isinstance(doc, (list, tuple)) and len(doc) == 2:
        return FloatScalar(complex(float(doc[0]), float(doc[1])), field.tol if isinstance(field, FloatField) else None)
    raise ValueError(f"unrecognised scalar literal: {doc!r}")
