import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from recoverrep.acceptance import SMALL_GROUPS, random_component_model
from recoverrep.density import (
    ComponentModel,
    component_lambda,
    dh_thresholds,
    exact_agreement_density,
    is_genuine_character,
    normal_subgroups,
    orthogonality_audit,
    sample_density,
    wilson_interval,
)
from recoverrep.errors import DimMismatch, NotNormal
from recoverrep.finchar.characters import ClassFunction, irreducible_characters
from recoverrep.finchar.groups import group_from_name, heisenberg_group, symmetric_group
from recoverrep.finchar.reps import heisenberg_rep, sign_rep, standard_rep, trivial_rep

S3 = symmetric_group(3)
STD = standard_rep(S3).character()
TS = trivial_rep(S3).character() + sign_rep(S3).character()
S3_MODEL = ComponentModel.build(S3, S3.derived, STD, TS)
GROUPS = [make() for make in SMALL_GROUPS]


# brute-force oracles: element by element, floating point comparison


def brute_agree(model, x):
    return abs(complex(model.chi1(x)) - complex(model.chi2(x))) < 1e-9


def brute_lambda(model):
    g = model.group
    seen, inside, total = set(), 0, 0
    for x in range(g.order):
        if x in seen:
            continue
        coset = {g.mul(x, h) for h in model.g0}
        seen |= coset
        total += 1
        inside += all(brute_agree(model, y) for y in coset)
    return Fraction(inside, total)


def brute_mean(model):
    g = model.group
    return sum(abs(complex(model.chi1(x)) - complex(model.chi2(x))) ** 2 for x in range(g.order)) / g.order


def test_s3_model_values():
    assert component_lambda(S3_MODEL) == brute_lambda(S3_MODEL) == Fraction(1, 2)
    agree = sum(brute_agree(S3_MODEL, x) for x in range(6))
    assert exact_agreement_density(S3_MODEL) == Fraction(agree, 6) == Fraction(2, 3)
    rep = orthogonality_audit(S3_MODEL)
    assert rep.mean_sq_char_diff == 3 and abs(brute_mean(S3_MODEL) - 3) < 1e-9
    assert rep.upper_bound == 8 and rep.upper_ok
    assert 2 <= rep.mean_sq_char_diff
    assert not rep.lower_bound_applies and rep.lower_ok is None  # triv+sign is reducible
    assert rep.dh1 == Fraction(7, 8)


def test_heisenberg_center_model():
    h = heisenberg_group(3)
    m = ComponentModel.build(h, h.center, heisenberg_rep(3, 1, h).character(), heisenberg_rep(3, 2, h).character())
    oracle = Fraction(sum(brute_agree(m, x) for x in range(27)), 27)
    assert exact_agreement_density(m) == oracle == Fraction(25, 27)
    assert component_lambda(m) == brute_lambda(m) == Fraction(8, 9)
    rep = orthogonality_audit(m)
    assert rep.lower_bound_applies and rep.lower_ok and rep.upper_ok
    assert rep.mean_sq_char_diff == 2


def test_trivial_cases():
    same = ComponentModel.build(S3, S3.derived, STD, STD)
    assert component_lambda(same) == 1 and exact_agreement_density(same) == 1
    assert sample_density(same, 1000, seed=5)[0] == 1
    rep = orthogonality_audit(same)
    assert rep.mean_sq_char_diff == 0 and not rep.lower_bound_applies
    whole = ComponentModel.build(S3, range(6), STD, TS)
    assert component_lambda(whole) == 0
    for seed in range(10):
        est, _ = sample_density(S3_MODEL, 1, seed)
        assert est in (0, 1)


def test_model_validation():
    with pytest.raises(NotNormal):
        ComponentModel.build(S3, S3.generate([next(x for x in range(6) if S3.element_order(x) == 2)]), STD, TS)
    with pytest.raises(DimMismatch):
        ComponentModel.build(S3, S3.derived, STD, trivial_rep(S3).character())
    with pytest.raises(ValueError):
        sample_density(S3_MODEL, 0)


@pytest.mark.parametrize("m,c1,c2,want", [(2, 1, 1, (Fraction(7, 8), 0)), (3, 2, 2, (Fraction(17, 18), Fraction(1, 2))),
                                          (1, 1, 5, (Fraction(1, 2), 0))])
def test_dh_thresholds_examples(m, c1, c2, want):
    assert dh_thresholds(m, c1, c2) == want


@given(st.integers(1, 20), st.integers(1, 20), st.integers(1, 20))
def test_dh_thresholds_monotone(m, c1, c2):
    d1, d2 = dh_thresholds(m, c1, c2)
    assert dh_thresholds(m + 1, c1, c2)[0] >= d1
    assert dh_thresholds(m, c1 + 1, c2)[1] >= d2
    assert dh_thresholds(m, c1, c2 + 1)[1] >= d2
    assert 0 <= d2 < 1 and Fraction(1, 2) <= d1 < 1


def test_sampling_reproducible_and_shard_independent():
    a = sample_density(S3_MODEL, 200_000, seed=42)
    b = sample_density(S3_MODEL, 200_000, seed=42, workers=4)
    assert a == b
    assert sample_density(S3_MODEL, 200_000, seed=43) != a
    est, (lo, hi) = a
    assert lo <= Fraction(2, 3) <= hi


def test_wilson_interval_edges():
    assert wilson_interval(10, 10)[1] == 1.0
    assert wilson_interval(0, 10)[0] == 0.0
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi and abs((lo + hi) / 2 - 0.5) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_models_against_oracles(seed):
    model = random_component_model(random.Random(seed), GROUPS)
    lam = component_lambda(model)
    agree = exact_agreement_density(model)
    assert lam == brute_lambda(model)
    assert agree == Fraction(sum(brute_agree(model, x) for x in range(model.group.order)), model.group.order)
    assert lam <= agree <= 1
    rep = orthogonality_audit(model)
    assert is_genuine_character(model.chi1) and is_genuine_character(model.chi2)
    assert rep.upper_ok
    assert abs(float(rep.mean_sq_char_diff) - brute_mean(model)) < 1e-9


@pytest.mark.parametrize("name", ["sym:3", "dihedral:4", "quaternion", "heisenberg:3"])
def test_audit_exhaustive_irreducible_pairs(name):
    g = group_from_name(name)
    irr = irreducible_characters(g)
    for g0 in normal_subgroups(g):
        for a in irr:
            for b in irr:
                if a.degree != b.degree:
                    continue
                rep = orthogonality_audit(ComponentModel.build(g, g0, a, b))
                assert rep.upper_ok
                if a is b:
                    assert rep.mean_sq_char_diff == 0
                else:
                    assert rep.lower_bound_applies and rep.mean_sq_char_diff == 2


def test_normal_subgroups_brute_force():
    for name in ["sym:3", "sym:4", "dihedral:4", "quaternion", "heisenberg:3"]:
        g = group_from_name(name)
        got = set(normal_subgroups(g))
        # oracle: all subgroups generated by at most two elements, filtered for normality
        subs = {g.generate([a, b]) for a in range(g.order) for b in range(g.order)}
        want = {s for s in subs if g.is_normal(s)}
        assert got == want


def test_non_character_flagged():
    f = ClassFunction(S3, [2, 2, -1])
    assert not is_genuine_character(f)
    rep = orthogonality_audit(ComponentModel.build(S3, S3.derived, f, STD))
    assert rep.notes and not rep.lower_bound_applies
