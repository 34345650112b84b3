from __future__ import annotations

import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from tqft import catalog
from tqft import fourmanifolds as fm
from tqft import links as lk
from tqft.errors import InvalidLagrangian, MalformedLink, ModularityRequired, RequireConnected

P = fm.standard_presentations()


def test_euler_and_signature():
    assert fm.euler_char(P["S4"]) == 2 and fm.sigma4(P["S4"]) == 0
    assert fm.euler_char(P["CP2"]) == 3 and fm.sigma4(P["CP2"]) == 1
    assert fm.euler_char(P["S1xS3"]) == 0
    assert fm.euler_char(P["S2xS2"]) == 4 and fm.sigma4(P["S2xS2"]) == 0
    assert fm.sigma4(P["CP2bar"]) == -1
    assert fm.sigma4(P["CP2#CP2bar"]) == 0


def test_direct_values(modular_builtin):
    C = modular_builtin
    D = C.global_dim
    assert fm.zcy_closed(P["S4"], C) == D
    assert fm.zcy_closed(P["CP2"], C) == C.kappa * C.sqrtD ** 3
    assert fm.zcy_closed(P["S1xS3"], C) == C.one
    assert fm.zcy_formula(P["CP2bar"], C) == C.kappa.inverse() * C.sqrtD ** 3
    assert fm.zcy_formula(P["S2xS2"], C) == D * D


def test_signature_formula(modular_builtin):
    C = modular_builtin
    for name, K in P.items():
        assert fm.zcy_closed(K, C) == fm.zcy_formula(K, C), name


def test_connected_sum_law(modular_builtin):
    C = modular_builtin
    for a, b in (("CP2", "CP2bar"), ("S2xS2", "S1xS3")):
        K = fm.connected_sum(P[a], P[b])
        assert fm.zcy_closed(K, C) == C.global_dim.inverse() * fm.zcy_closed(P[a], C) * fm.zcy_closed(P[b], C)


def test_more_manifolds_match_formula():
    C = catalog.builtin("su2_3")
    extra = [
        fm.KirbyPresentation(lk.unlink(1, 1, -1)),
        fm.KirbyPresentation(lk.hopf(1, 0)),
        fm.KirbyPresentation(lk.hopf(2, 0)),
    ]
    for K in extra:
        assert fm.zcy_closed(K, C) == fm.zcy_formula(K, C)


def test_requires_connected_and_modular():
    with pytest.raises(RequireConnected):
        fm.zcy_closed(fm.KirbyPresentation(n0=2), catalog.builtin("semion"))
    with pytest.raises(ModularityRequired):
        fm.zcy_closed(P["S4"], catalog.builtin("repZ2"))


def test_dotted_circle_must_be_zero_framed():
    with pytest.raises(MalformedLink):
        fm.KirbyPresentation(lk.unknot_link(1, component="d"), frozenset({"d"}))


def test_kirby_json_round_trip(tmp_path):
    C = catalog.builtin("fibonacci")
    for name, K in P.items():
        p = tmp_path / "k.kirby"
        p.write_text(json.dumps(K.to_json()))
        assert fm.zcy_closed(fm.KirbyPresentation.load(p), C) == fm.zcy_closed(K, C)


# ---------------------------------------------------------------------------
# Wall index

OMEGA1 = [[0, 1], [-1, 0]]


def std_omega(g):
    n = 2 * g
    return [[(1 if j == i + g else -1 if i == j + g else 0) for j in range(n)] for i in range(n)]


def form(omega, u, v):
    return sum(u[i] * omega[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def random_lagrangian(g, rng):
    """Image of span(e_1..e_g) under a product of random integral transvections."""
    omega = std_omega(g)
    rows = [[int(i == j) for j in range(2 * g)] for i in range(g)]
    for _ in range(rng.randint(1, 4)):
        v = [rng.randint(-2, 2) for _ in range(2 * g)]
        k = rng.choice([-1, 1])
        rows = [[x + k * form(omega, r, v) * vi for x, vi in zip(r, v)] for r in rows]
    return rows


def sigma(omega, a, b, c):
    return fm.wall_index(fm.LagrangianTriple(omega, a, b, c))


def test_genus_one_value():
    m_plus_l, l, m = [[1, 1]], [[0, 1]], [[1, 0]]
    assert sigma(OMEGA1, m_plus_l, l, m) == -1


def test_repeated_lagrangian_vanishes():
    rng = random.Random(5)
    for g in (1, 2):
        for _ in range(5):
            a, b = random_lagrangian(g, rng), random_lagrangian(g, rng)
            om = std_omega(g)
            assert sigma(om, a, a, b) == sigma(om, a, b, b) == sigma(om, a, b, a) == 0


def _perm_sign(p):
    return -1 if sum(1 for i, j in itertools.combinations(range(3), 2) if p[i] > p[j]) % 2 else 1


def test_antisymmetry():
    rng = random.Random(11)
    for g in (1, 2):
        om = std_omega(g)
        for _ in range(6):
            Ls = [random_lagrangian(g, rng) for _ in range(3)]
            base = sigma(om, *Ls)
            for p in itertools.permutations(range(3)):
                assert sigma(om, *(Ls[i] for i in p)) == _perm_sign(p) * base


@given(st.integers(0, 10**6), st.sampled_from([1, 2]))
@settings(max_examples=25, deadline=None)
def test_cocycle(seed, g):
    rng = random.Random(seed)
    om = std_omega(g)
    L1, L2, L3, L4 = (random_lagrangian(g, rng) for _ in range(4))
    assert sigma(om, L1, L2, L3) + sigma(om, L1, L3, L4) == sigma(om, L1, L2, L4) + sigma(om, L2, L3, L4)


def test_triple_validation():
    with pytest.raises(InvalidLagrangian):
        fm.LagrangianTriple(OMEGA1, [[1, 0]], [[0, 1]], [[0, 0]])
    with pytest.raises(InvalidLagrangian):
        fm.LagrangianTriple([[0, 1], [1, 0]], [[1, 0]], [[0, 1]], [[1, 1]])
    with pytest.raises(InvalidLagrangian):
        fm.LagrangianTriple(std_omega(2), [[1, 0, 0, 0], [0, 0, 1, 0]], [[0, 0, 1, 0], [0, 0, 0, 1]],
                            [[1, 0, 0, 0], [0, 1, 0, 0]])
