"""Exact dense linear algebra over field scalars (lists of lists)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list


def identity(n: int, one, zero) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, zero) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if not _is_zero(x)]
        new = []
        for j in range(cols):
            acc = zero
            for k, x in nz:
                y = b[k][j]
                if not _is_zero(y):
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    assert all(len(r) == inner for r in a)
    return out


def matpow(a: Matrix, k: int, one, zero) -> Matrix:
    result = identity(len(a), one, zero)
    base = a
    while k:
        if k & 1:
            result = matmul(result, base, zero)
        base = matmul(base, base, zero)
        k >>= 1
    return result


def scale(a: Matrix, s) -> Matrix:
    return [[s * x for x in row] for row in a]


def mat_equal(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b):
        return False
    return all(len(r) == len(s) and all(x == y for x, y in zip(r, s)) for r, s in zip(a, b))


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def _row_reduce(a: Matrix):
    """Forward elimination; returns (echelon copy, pivot count, sign/det factor)."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    swaps = 0
    pivots = []
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            swaps += 1
        pv = m[r][c]
        pivots.append(pv)
        inv = 1 / pv if not hasattr(pv, "inverse") else pv.inverse()
        for i in range(r + 1, rows):
            if not _is_zero(m[i][c]):
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return m, r, pivots, swaps


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return _row_reduce(a)[1]


def det(a: Matrix, one):
    n = len(a)
    if n == 0:
        return one
    _, r, pivots, swaps = _row_reduce(a)
    if r < n:
        return one * 0
    d = one
    for p in pivots:
        d = d * p
    return -d if swaps % 2 else d


def inverse(a: Matrix, one, zero) -> Matrix:
    n = len(a)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(aug[i][c])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        inv = pv.inverse() if hasattr(pv, "inverse") else 1 / pv
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and not _is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def nullspace_rational(a: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : a x = 0} over Q."""
    m = [[Fraction(x) for x in row] for row in a]
    pivcols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivcols]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivcols):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def rank_rational(a: Sequence[Sequence[Fraction]]) -> int:
    if not a:
        return 0
    return len(a[0]) - len(nullspace_rational(a, len(a[0]))) if a[0] else 0


def signature(sym: Sequence[Sequence]) -> int:
    """Signature n_+ - n_- of a symmetric rational matrix.

    Symmetric Gaussian elimination with exact pivots: a nonzero diagonal pivot is
    used when available (first one), otherwise the first nonzero off-diagonal pair
    (i, j) is combined into the diagonal via e_i <- e_i + e_j.
    """
    m = [[Fraction(x) for x in row] for row in sym]
    n = len(m)
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # congruence e_i <- e_i + e_j makes m[i][i] = 2 m[i][j] != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        p = m[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            if m[i][piv] != 0:
                f = m[i][piv] / p
                for k in range(n):
                    m[i][k] -= f * m[piv][k]
                for k in range(n):
                    m[k][i] -= f * m[k][piv]
        for k in range(n):
            m[piv][k] = m[k][piv] = Fraction(0)
    return pos - neg
