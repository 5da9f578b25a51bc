from collections import Counter

import pytest

from recoverrep.errors import DimensionOverflow
from recoverrep.liealg import (
    A1,
    A2,
    C2,
    HighestWeight,
    adjoint_fibre,
    check_unique_factorization,
    decompose_weights,
    dominant_weights,
    dual_highest_weight,
    irr_weights,
    product_group_adjoint_counterexample,
    tensor_decompose,
    weyl_dim,
)
from recoverrep.weights import SL3_STANDARD, WeightMultiset, convolve

HW = HighestWeight.of
ALGS = (A1, A2, C2)


def c2_dim(a, b):
    # closed form for sp(4) with omega_1 the 4-dimensional module
    return (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) // 6


def test_algebra_data():
    assert [len(a.positive_roots) for a in ALGS] == [1, 3, 4]
    for a in ALGS:
        assert a.cartan_from_form() == [list(r) for r in a.cartan]
        for root in a.positive_roots:
            # every positive root is lexicographically positive in output coordinates
            assert a.labels_to_lex(root) > (0,) * a.rank


def test_irr_weights_examples():
    assert irr_weights(A1, 2) == WeightMultiset.from_ints([2, 0, -2])
    adj = irr_weights(A2, (1, 1))
    assert len(adj) == 8 and adj.multiplicity((0, 0)) == 2
    assert weyl_dim(A2, (1, 1)) == 8
    std = irr_weights(C2, (1, 0))
    assert std == WeightMultiset(2, [(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert irr_weights(A2, (1, 0)) == SL3_STANDARD


def test_weyl_dim_examples():
    for a in range(10):
        assert weyl_dim(A1, a) == a + 1
    assert weyl_dim(A2, (1, 0)) == 3
    assert weyl_dim(A2, (2, 1)) == 15
    assert len(irr_weights(A2, (2, 1))) == 15
    for a in range(5):
        for b in range(5):
            assert weyl_dim(C2, (a, b)) == c2_dim(a, b)
            assert weyl_dim(A2, (a, b)) == (a + 1) * (b + 1) * (a + b + 2) // 2


def test_dimension_cap():
    with pytest.raises(DimensionOverflow):
        irr_weights(A2, (30, 30))
    assert len(irr_weights(A1, 9, cap=10)) == 10
    with pytest.raises(DimensionOverflow):
        irr_weights(A1, 10, cap=10)


@pytest.mark.parametrize("alg", ALGS, ids=lambda a: a.name)
def test_dimension_consistency_and_weyl_invariance(alg):
    for h in dominant_weights(alg, 6):
        if weyl_dim(alg, h) > 200:
            continue
        w = irr_weights(alg, h)
        assert len(w) == weyl_dim(alg, h)
        assert alg.lex_to_labels(w.max()) == h.coeffs
        labels = Counter({alg.lex_to_labels(v): m for v, m in w.items()})
        for i in range(alg.rank):
            assert Counter({alg.reflect(mu, i): m for mu, m in labels.items()}) == labels


def test_tensor_decompose_examples():
    assert tensor_decompose(A1, 2, 3) == Counter({HW(5): 1, HW(3): 1, HW(1): 1})
    assert tensor_decompose(A2, (1, 0), (0, 1)) == Counter({HW(1, 1): 1, HW(0, 0): 1})
    for a in range(6):
        assert tensor_decompose(A1, a, 0) == Counter({HW(a): 1})


@pytest.mark.parametrize("alg", ALGS, ids=lambda a: a.name)
def test_tensor_decompose_reexpansion(alg):
    hws = dominant_weights(alg, 2)
    for h1 in hws:
        for h2 in hws:
            parts = tensor_decompose(alg, h1, h2, cap=10000)
            product = convolve(irr_weights(alg, h1), irr_weights(alg, h2))
            rebuilt = WeightMultiset(alg.rank, {})
            for h, m in parts.items():
                for _ in range(m):
                    rebuilt = rebuilt + irr_weights(alg, h)
            assert rebuilt == product
            assert sum(weyl_dim(alg, h) * m for h, m in parts.items()) == weyl_dim(alg, h1) * weyl_dim(alg, h2)


def test_clebsch_gordan_a1():
    for a in range(6):
        for b in range(6):
            expected = Counter({HW(c): 1 for c in range(abs(a - b), a + b + 1, 2)})
            assert tensor_decompose(A1, a, b) == expected


def test_decompose_rejects_non_modules():
    with pytest.raises(ArithmeticError):
        decompose_weights(A2, WeightMultiset(2, [(1, 0)]))


def test_unique_factorization_sweeps():
    for alg, bound in ((A1, 6), (A2, 2), (C2, 2)):
        report = check_unique_factorization(alg, bound, 2)
        assert report["counterexamples"] == []
        assert report["tuples_checked"] > 0
    empty = check_unique_factorization(A2, 0, 2)
    assert empty["tuples_checked"] == 0 and empty["counterexamples"] == []


def test_unique_factorization_three_factors():
    # bound 2 gives V1, V2: 2 singles, 3 pairs, 4 triples
    report = check_unique_factorization(A1, 2, 3)
    assert report["counterexamples"] == []
    assert report["tuples_checked"] == 2 + 3 + 4


def test_adjoint_fibre_examples():
    assert adjoint_fibre(A2, (1, 0), 3) == [HW(0, 1), HW(1, 0)]
    for a in range(1, 6):
        assert adjoint_fibre(A1, a, 8) == [HW(a)]
    assert adjoint_fibre(C2, (1, 0), 2) == [HW(1, 0)]


@pytest.mark.parametrize("alg,bound", [(A1, 5), (A2, 2), (C2, 2)], ids=["A1", "A2", "C2"])
def test_adjoint_fibre_is_v_and_dual(alg, bound):
    for h in dominant_weights(alg, bound, include_zero=False):
        fibre = adjoint_fibre(alg, h, bound)
        assert set(fibre) == {h, dual_highest_weight(alg, h)}


def test_dual_highest_weight():
    assert dual_highest_weight(A2, (2, 1)) == HW(1, 2)
    assert dual_highest_weight(C2, (1, 2)) == HW(1, 2)
    assert dual_highest_weight(A1, 4) == HW(4)


def test_product_group_counterexample():
    r = product_group_adjoint_counterexample()
    assert (r["ad_equal"], r["v_iso_w"], r["v_iso_w_dual"]) == (True, False, False)
    assert r["v_iso_v"] and r["v_dual_dual_iso_v"]
