from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tqft.errors import DivByZero, InvalidRootOrder
from tqft.scalars import CycloField, CycloScalar, FloatScalar, cyclotomic_poly, embed_complex, parse_scalar

ORDERS = [1, 3, 4, 5, 8, 12, 20]


def scalars(N):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    return st.lists(coeff, min_size=1, max_size=N).map(lambda cs: CycloScalar.normalize(cs, N))


@st.composite
def triple(draw):
    N = draw(st.sampled_from(ORDERS))
    return N, draw(scalars(N)), draw(scalars(N)), draw(scalars(N))


def test_rational_one_in_trivial_field():
    assert CycloScalar.normalize([1], 1) == CycloScalar.rational(1)


def test_i_squared():
    assert CycloScalar.normalize([0, 0, 1], 4).coeffs == (Fraction(-1), Fraction(0))


def test_zeta5_fourth_power_reduction():
    # independent oracle: zeta^4 = -(1 + zeta + zeta^2 + zeta^3) because Phi_5 = 1 + x + ... + x^4
    assert cyclotomic_poly(5) == (1, 1, 1, 1, 1)
    assert CycloScalar.zeta(5, 4).coeffs == (-1, -1, -1, -1)


def test_zero_order_rejected():
    with pytest.raises(InvalidRootOrder):
        CycloScalar.normalize([1], 0)


def test_division_by_zero():
    with pytest.raises(DivByZero):
        CycloScalar.rational(1, 5) / CycloScalar.rational(0, 5)


def test_zeta8_squared_is_i():
    z = CycloScalar.zeta(8)
    assert z * z == CycloScalar.zeta(4).promote(8)


def test_golden_inverse():
    phi = CycloScalar.normalize([1, 1, 0, 0, 1], 5)
    assert phi.inverse() * phi == CycloScalar.rational(1, 5)
    # oracle: 1 + 2 cos(2 pi / 5) is the golden ratio
    assert abs(complex(embed_complex(phi, 20).center) - (1 + 5 ** 0.5) / 2) < 1e-12


def test_mixed_orders_promote_to_lcm():
    a = CycloScalar.zeta(4) + CycloScalar.zeta(3)
    assert a.N == 12
    assert abs(complex(a) - (1j + cmath.exp(2j * cmath.pi / 3))) < 1e-12


def test_embedding_of_i():
    iv = embed_complex(CycloScalar.zeta(4), 30)
    assert iv.contains(1j)
    assert iv.format(5) == "0.0+1.0i"


def test_json_round_trip():
    a = CycloScalar.normalize([Fraction(1, 2), 0, -3, 7], 20)
    assert CycloScalar.from_json(a.to_json()) == a
    assert parse_scalar(a.to_json(), CycloField(40)) == a.promote(40)


def test_float_mode_tolerance():
    x = FloatScalar(1.0) + FloatScalar(1e-12)
    assert x == FloatScalar(1.0)
    assert x != FloatScalar(1.1)


@given(triple())
@settings(max_examples=60, deadline=None)
def test_field_axioms(t):
    N, a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == CycloScalar.rational(1, N)


@given(triple(), st.sampled_from([2, 3]))
@settings(max_examples=40, deadline=None)
def test_promotion_commutes_with_arithmetic(t, k):
    N, a, b, _ = t
    M = k * N
    assert (a * b + a).promote(M) == a.promote(M) * b.promote(M) + a.promote(M)


@given(triple())
@settings(max_examples=40, deadline=None)
def test_embedding_is_multiplicative(t):
    _, a, b, _ = t
    ea, eb, eab = embed_complex(a, 25), embed_complex(b, 25), embed_complex(a * b, 25)
    assert abs(ea.center * eb.center - eab.center) < 1e-15 * (1 + abs(eab.center))


@given(triple())
@settings(max_examples=40, deadline=None)
def test_conjugation_is_a_field_automorphism(t):
    _, a, b, _ = t
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-9
