from __future__ import annotations

import json
import random

import pytest

from tqft import catalog, category
from tqft.category import PremodularData
from tqft.diagram import evaluate_closed, hopf_link
from tqft.errors import CatalogMiss, ModularityRequired
from tqft.scalars import CycloScalar, embed_complex

from conftest import BUILTINS


def _phi(C):
    return C.qdim[C.index("tau")]


def test_all_builtins_validate(any_builtin):
    rep = category.validate(any_builtin)
    assert rep.passed, rep.summary()


def test_unknown_builtin():
    with pytest.raises(CatalogMiss):
        catalog.builtin("su2_9")


def test_trivial_constants():
    C = catalog.builtin("trivial")
    assert C.rank == 1 and C.global_dim == C.one and C.kappa == C.one
    consts = category.derived_constants(C)
    assert consts["p_plus"] == consts["p_minus"] == C.one


def test_fibonacci_fusion_and_dimension():
    C = catalog.builtin("fibonacci")
    t = C.index("tau")
    assert C.products[t][t] == [0, t]
    phi = _phi(C)
    assert phi * phi == C.one + phi
    assert complex(phi).real > 0
    assert C.global_dim == 2 + phi


def test_semion_data():
    C = catalog.builtin("semion")
    s = C.index("s")
    assert C.products[s][s] == [0]
    assert C.qdim[s] == C.one
    assert C.twist[s] == CycloScalar.zeta(4)
    assert C.global_dim == 2 * C.one
    assert C.kappa == CycloScalar.zeta(8)
    consts = category.derived_constants(C)
    assert consts["p_plus"] == C.one + CycloScalar.zeta(4)
    assert consts["p_minus"] == C.one - CycloScalar.zeta(4)


def test_s_matrices_closed_form():
    C = catalog.builtin("fibonacci")
    phi = _phi(C)
    assert category.s_matrix(C) == [[C.one, phi], [phi, -C.one]]
    S = catalog.builtin("semion")
    assert category.s_matrix(S) == [[S.one, S.one], [S.one, -S.one]]


def test_s_matrix_shape_properties(any_builtin):
    C = any_builtin
    s = category.s_matrix(C)
    n = C.rank
    assert all(s[i][j] == s[j][i] for i in range(n) for j in range(n))
    assert s[0] == C.qdim


def test_s_matrix_matches_hopf_link(any_builtin):
    C = any_builtin
    s = category.s_matrix(C)
    for i in range(C.rank):
        for j in range(C.rank):
            assert evaluate_closed(hopf_link(C.labels[i], C.labels[j]), C) == s[i][j]


def test_modular_gauss_sums(modular_builtin):
    C = modular_builtin
    consts = category.derived_constants(C)
    assert consts["p_plus"] * consts["p_minus"] == C.global_dim
    assert consts["kappa_check"]
    k = embed_complex(C.kappa, 30)
    assert abs(abs(k.center) - 1) <= k.radius


def test_modularity_flags():
    assert category.is_modular(catalog.builtin("fibonacci"))
    assert category.is_modular(catalog.builtin("trivial"))
    assert not category.is_modular(catalog.builtin("repZ2"))
    with pytest.raises(ModularityRequired):
        category.require_modular(catalog.builtin("repZ2"))


def test_muger_center_iff_modular(any_builtin):
    C = any_builtin
    assert (category.muger_center(C) == [0]) == category.is_modular(C)


def test_muger_center_matches_double_braiding():
    # oracle: i is transparent iff its Hopf link with every j equals d_i d_j
    for name in ("repZ2", "semion", "su2_2"):
        C = catalog.builtin(name)
        brute = [
            i for i in range(C.rank)
            if all(evaluate_closed(hopf_link(C.labels[i], C.labels[j]), C) == C.qdim[i] * C.qdim[j]
                   for j in range(C.rank))
        ]
        assert brute == category.muger_center(C)
    assert category.muger_center(catalog.builtin("repZ2")) == [0, 1]


def test_torus_representation(modular_builtin):
    assert category.verify_torus_rep(modular_builtin)


def _mutations(C, rng, count):
    keys = [("F", k) for k, v in sorted(C.F.items()) if not v.is_zero()]
    keys += [("R", k) for k, v in sorted(C.R.items()) if not v.is_zero()]
    return rng.sample(keys, min(count, len(keys)))


def _mutate(C, which, key):
    if which == "F":
        return C.replace(F={**C.F, key: -C.F[key]})
    return C.replace(R={**C.R, key: -C.R[key]})


@pytest.mark.parametrize("name", ["semion", "fibonacci", "ising", "su2_2"])
def test_every_single_sign_flip_is_detected(name):
    C = catalog.builtin(name)
    for which, key in _mutations(C, random.Random(0), 10**6):
        assert not category.validate(_mutate(C, which, key), stop_at_first=True).passed, (which, key)


def test_fibonacci_f_mutation_names_pentagon():
    C = catalog.builtin("fibonacci")
    t = C.index("tau")
    rep = category.validate(_mutate(C, "F", (t, t, t, t, t, t)))
    assert "pentagon" in rep.axioms_failed()
    assert all(len(f[1]) > 0 for f in rep.failures)


def test_file_round_trip(tmp_path):
    for name in ("fibonacci", "su2_3"):
        C = catalog.builtin(name)
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(C.to_json()))
        D = PremodularData.load(path)
        assert category.validate(D).passed
        assert D.labels == C.labels and D.F == C.F and D.R == C.R and D.kappa == C.kappa


def test_catalog_order():
    assert BUILTINS == ["trivial", "semion", "repZ2", "fibonacci", "ising", "su2_1", "su2_2", "su2_3", "su2_4"]
