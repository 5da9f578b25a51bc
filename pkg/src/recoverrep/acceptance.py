"""The acceptance suite: ten end-to-end criteria with fixed seeds.

Each criterion returns a :class:`CriterionResult`; nothing here raises on a
failed check.  ``corrupt`` names criteria whose expected values get mutated,
which is how the negative control proves a failure is reported by name.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import lattice as lt
from .density import (
    ComponentModel,
    component_lambda,
    dh_thresholds,
    exact_agreement_density,
    normal_subgroups,
    orthogonality_audit,
    sample_density,
)
from .finchar.characters import ClassFunction, irreducible_characters, linear_characters
from .finchar.groups import (
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_from_name,
    heisenberg_group,
    quaternion_group,
    symmetric_group,
)
from .finchar.reps import (
    clifford_decompose,
    compare_fixed_sets,
    conjugation_automorphisms,
    heisenberg_rep,
    kth_power_equal,
    linear_rep,
    pre_asai,
    standard_rep,
    subgroup_of,
    twist_search,
    verify_heisenberg_relations,
)
from .liealg import adjoint_fibre, check_unique_factorization, irr_weights
from .weights import WeightMultiset, dual, ext_power, recover_from_sym, sym_power


@dataclass
class CriterionResult:
    number: int
    key: str
    title: str
    passed: bool
    seconds: float
    budget: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.key}: {self.title} ({self.seconds:.2f}s / {self.budget:g}s)"

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "key": self.key,
            "title": self.title,
            "passed": self.passed,
            "budget_s": self.budget,
            "details": self.details,
        }


@dataclass(frozen=True)
class Criterion:
    number: int
    key: str
    modules: tuple[str, ...]
    title: str
    budget: float
    check: Callable[[bool], tuple[bool, dict]]

    def matches(self, pattern: str) -> bool:
        pattern = pattern.strip().lower()
        return pattern in (str(self.number), self.key) or pattern in self.modules

    def run(self, corrupt: bool = False) -> CriterionResult:
        t0 = time.perf_counter()
        try:
            ok, details = self.check(corrupt)
        except Exception as exc:  # reported, never thrown
            ok, details = False, {"error": type(exc).__name__, "message": str(exc)}
        dt = time.perf_counter() - t0
        within = dt <= self.budget
        details = dict(details, within_budget=within)
        return CriterionResult(self.number, self.key, self.title, ok and within, dt, self.budget, details)


# ---------------------------------------------------------------------------
# 1: symmetric power recovery


def _random_multiset(rng: random.Random) -> WeightMultiset:
    r = rng.randint(1, 3)
    n = rng.randint(1, 6)
    return WeightMultiset(r, [tuple(rng.randint(-4, 4) for _ in range(r)) for _ in range(n)])


def check_sym_roundtrip(corrupt: bool, trials: int = 500, seed: int = 1) -> tuple[bool, dict]:
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        w = _random_multiset(rng)
        k = rng.randint(1, 4)
        got = recover_from_sym(sym_power(w, k), k, len(w))
        want = w
        if corrupt and t == 0:
            want = WeightMultiset(w.rank, dict(w.items()) | {(99,) * w.rank: 1})
        if got != want:
            failures.append({"k": k, "weights": w.to_json()})
    return not failures, {"trials": trials, "failures": len(failures), "first_failures": failures[:3]}


# ---------------------------------------------------------------------------
# 2-4: Lie algebra sweeps


def check_unique_factorization_sweeps(corrupt: bool) -> tuple[bool, dict]:
    runs = {}
    total = 0
    for alg, bound in (("A1", 6), ("A2", 2), ("C2", 2)):
        res = check_unique_factorization(alg, bound, 2)
        runs[alg] = {"bound": bound, "tuples": res["tuples_checked"], "counterexamples": res["counterexamples"]}
        total += len(res["counterexamples"])
    expected = 1 if corrupt else 0
    return total == expected, {"sweeps": runs, "counterexamples": total}


def check_adjoint_fibre(corrupt: bool) -> tuple[bool, dict]:
    fibre = sorted(tuple(h.coeffs) for h in adjoint_fibre("A2", (1, 0), 3))
    expected = [(0, 1), (1, 0)]
    if corrupt:
        expected = [(1, 0)]
    return fibre == expected, {"fibre": [list(h) for h in fibre]}


def check_exterior_counterexample(corrupt: bool) -> tuple[bool, dict]:
    v = sym_power(irr_weights("A2", (1, 0)), 2)
    ext_equal = ext_power(v, 3) == ext_power(dual(v), 3)
    self_dual = v == dual(v)
    if corrupt:
        self_dual = not self_dual
    return ext_equal and not self_dual, {"dim_V": len(v), "ext3_equal": ext_equal, "V_self_dual": self_dual}


# ---------------------------------------------------------------------------
# 5: Heisenberg


def check_heisenberg(corrupt: bool) -> tuple[bool, dict]:
    g = heisenberg_group(3)
    rho1, rho2 = heisenberg_rep(3, 1, g), heisenberg_rep(3, 2, g)
    relations = verify_heisenberg_relations(g)
    chi1, chi2 = rho1.character(), rho2.character()
    irreducible = chi1.norm() == 1 and chi2.norm() == 1
    cube = kth_power_equal(chi1, chi2, 3)
    twist = twist_search(rho1, rho2)
    n_linear = len(linear_characters(g))
    t = g.generate([g.element("A"), g.element("C")])
    d1, d2 = clifford_decompose(rho1, t), clifford_decompose(rho2, t)
    cmp = compare_fixed_sets(d1, d2)
    mult_one = d1.multiplicity_one and d2.multiplicity_one
    if corrupt:
        cube = not cube
    ok = all(relations.values()) and irreducible and cube and twist is None and n_linear == 9 \
        and mult_one and cmp["aligned"] and cmp["equal"]
    return ok, {
        "relations": relations,
        "irreducible": irreducible,
        "kth_power_equal_3": cube,
        "twist": None if twist is None else twist.describe(),
        "linear_characters": n_linear,
        "multiplicity_one": mult_one,
        "fixed_sets_equal": cmp["equal"],
    }


# ---------------------------------------------------------------------------
# 6-8: density


def check_orthogonality_audit(corrupt: bool) -> tuple[bool, dict]:
    """All ordered pairs of distinct irreducibles of equal degree, over every normal G0."""
    models = violations = 0
    per_group = {}
    for name in ("sym:3", "dihedral:4", "quaternion", "heisenberg:3"):
        g = group_from_name(name)
        irr = irreducible_characters(g)
        subs = normal_subgroups(g)
        count = 0
        for a, b in itertools.permutations(irr, 2):
            if a.degree != b.degree:
                continue
            for g0 in subs:
                rep = orthogonality_audit(ComponentModel.build(g, g0, a, b))
                upper = rep.upper_bound - (1 if corrupt else 0)
                ok = rep.lower_bound_applies and 2 <= rep.mean_sq_char_diff <= upper
                violations += not ok
                count += 1
        per_group[name] = count
        models += count
    return violations == 0 and models > 0, {"models": models, "per_group": per_group, "violations": violations}


def check_dh1(corrupt: bool) -> tuple[bool, dict]:
    want = Fraction(17, 18) + (Fraction(1, 100) if corrupt else 0)
    vals = {f"{c1},{c2}": str(dh_thresholds(3, c1, c2)[0]) for c1, c2 in ((1, 1), (2, 2), (1, 5), (7, 3))}
    ok = all(Fraction(v) == want for v in vals.values())
    return ok, {"dh1": vals}


SMALL_GROUPS: list[Callable[[], FiniteGroup]] = [
    lambda: symmetric_group(3),
    lambda: symmetric_group(4),
    lambda: dihedral_group(4),
    lambda: dihedral_group(5),
    lambda: dihedral_group(6),
    lambda: dihedral_group(12),
    lambda: quaternion_group(),
    lambda: group_from_name("alt:4"),
    lambda: heisenberg_group(3),
    lambda: cyclic_group(12),
    lambda: direct_product(cyclic_group(2), symmetric_group(3)),
    lambda: direct_product(cyclic_group(3), symmetric_group(3)),
    lambda: direct_product(cyclic_group(2), quaternion_group()),
    lambda: direct_product(cyclic_group(2), symmetric_group(4)),
]


def _random_character(rng: random.Random, irr: list[ClassFunction], m: int) -> ClassFunction:
    """A random sum of irreducibles of total degree ``m``."""
    total = ClassFunction.constant(irr[0].group, 0)
    left = m
    while left:
        chi = rng.choice([c for c in irr if c.degree <= left])
        total = total + chi
        left -= int(chi.degree)
    return total


def random_component_model(rng: random.Random, groups: list[FiniteGroup]) -> ComponentModel:
    g = rng.choice(groups)
    irr = irreducible_characters(g)
    g0 = rng.choice(normal_subgroups(g))
    m = rng.randint(1, 4)
    chi1 = _random_character(rng, irr, m)
    if rng.random() < 0.5:
        eta = rng.choice(linear_characters(g)).class_function()
        chi2 = chi1 * eta
    else:
        chi2 = _random_character(rng, irr, m)
    return ComponentModel(g, g0, chi1, chi2, m)


def check_sampling(corrupt: bool, models: int = 100, samples: int = 100_000, seed: int = 8) -> tuple[bool, dict]:
    rng = random.Random(seed)
    groups = [make() for make in SMALL_GROUPS]
    assert all(g.order <= 48 for g in groups)
    covered = ordered = 0
    misses = []
    for i in range(models):
        model = random_component_model(rng, groups)
        exact = exact_agreement_density(model)
        lam = component_lambda(model)
        est, (lo, hi) = sample_density(model, samples, seed=seed * 1000 + i)
        target = float(exact) + (0.5 if corrupt else 0)
        if lo <= target <= hi:
            covered += 1
        else:
            misses.append({"model": i, "group": model.group.name, "exact": str(exact), "interval": [lo, hi]})
        ordered += lam <= exact
    ok = covered >= 93 * models // 100 and ordered == models
    return ok, {"models": models, "covered": covered, "lambda_le_agreement": ordered, "misses": misses[:5]}


# ---------------------------------------------------------------------------
# 9: lattices


def _random_unimodular(rng: random.Random, n: int, steps: int = 12) -> list[list[int]]:
    u = [list(r) for r in lt.identity(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            u[i] = [-x for x in u[i]]
            continue
        c = rng.randint(-3, 3)
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
    rng.shuffle(u)
    return u


def _gram_det(basis) -> int:
    if not basis:
        return 1
    return lt.det(lt.mat_mul(basis, lt.transpose(basis, len(basis[0]))))


def check_lattice_suite(corrupt: bool, seed: int = 9) -> tuple[bool, dict]:
    rng = random.Random(seed)
    bad = {"saturation": 0, "split": 0, "pushout": 0}
    for t in range(200):
        n = rng.randint(1, 6)
        k = rng.randint(1, n + 1)
        lat = lt.Lattice.span([[rng.randint(-50, 50) for _ in range(n)] for _ in range(k)], n)
        sat = lt.saturate(lat)
        index = lt.saturation_index(lat)
        # independent index: Gram determinants scale by the index squared
        want = _gram_det(lat.basis) // _gram_det(sat.basis) if lat.basis else 1
        if corrupt and t == 0:
            want += 1
        ok = (
            lt.saturate(sat) == sat
            and sat.contains_lattice(lat)
            and lt.is_direct_summand(sat)
            and index * index == want
            and _gram_det(lat.basis) == want * _gram_det(sat.basis)
        )
        bad["saturation"] += not ok
    for _ in range(100):
        n = rng.randint(1, 6)
        k = rng.randint(0, n)
        u = _random_unimodular(rng, n)
        incl = lt.LatticeMap.from_rows([row[:k] for row in u], k)
        fq = lt.free_quotient(incl)
        proj, sect = fq.projection, fq.section
        ok = lt.LatticeMap.identity(n - k).matrix == proj.compose(sect).matrix if n - k else True
        if k and n - k:
            ok = ok and all(not x for row in proj.compose(incl).matrix for x in row)
        if n - k:
            both = [list(a) + list(b) for a, b in zip(incl.matrix, sect.matrix)] if k else [list(r) for r in sect.matrix]
            ok = ok and abs(lt.det(both)) == 1
        bad["split"] += not ok
    for _ in range(100):
        x, m, c = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4)
        p = lt.LatticeMap.from_rows([[rng.randint(-5, 5) for _ in range(x)] for _ in range(m)], x)
        q = lt.LatticeMap.from_rows([[rng.randint(-5, 5) for _ in range(x)] for _ in range(c)], x)
        _, f, g = lt.pushout_torsion_free(p, q)
        bad["pushout"] += f.compose(p).matrix != g.compose(q).matrix
    return not any(bad.values()), {"failures": bad, "sublattices": 200, "inclusions": 100, "squares": 100}


# ---------------------------------------------------------------------------
# 10: pre-Asai lift independence


def _reps_of(sub: FiniteGroup, parent_reps) -> list:
    out = [linear_rep(c) for c in linear_characters(sub)]
    for rep in parent_reps:
        out.append(rep.restrict(sub))
    return out


def random_asai_configuration(rng: random.Random):
    choices = [
        (lambda: heisenberg_group(3), lambda g: [heisenberg_rep(3, 1, g), heisenberg_rep(3, 2, g)]),
        (lambda: symmetric_group(3), lambda g: [standard_rep(g)]),
        (lambda: symmetric_group(4), lambda g: [standard_rep(g)]),
        (lambda: dihedral_group(4), lambda g: []),
        (lambda: quaternion_group(), lambda g: []),
        (lambda: group_from_name("alt:4"), lambda g: []),
        (lambda: dihedral_group(6), lambda g: []),
    ]
    make, extra = rng.choice(choices)
    g = make()
    normals = [n for n in normal_subgroups(g) if 1 < g.order // len(n) <= 4 and len(n) > 1]
    n = rng.choice(normals)
    sub = subgroup_of(g, n)
    reps = [r for r in _reps_of(sub, extra(g)) if r.dim ** (g.order // len(n)) <= 64]
    rep = rng.choice(reps)
    cosets, index = g.left_cosets(n)
    members = [[x for x in range(g.order) if index[x] == i] for i in range(len(cosets))]
    lifts1 = [rng.choice(c) for c in members]
    lifts2 = list(lifts1)
    while lifts2 == lifts1:
        lifts2 = [rng.choice(c) for c in members]
    return g, sub, rep, lifts1, lifts2


def check_asai(corrupt: bool, configs: int = 20, seed: int = 10) -> tuple[bool, dict]:
    rng = random.Random(seed)
    bad = []
    for i in range(configs):
        g, sub, rep, l1, l2 = random_asai_configuration(rng)
        a1 = pre_asai(rep, conjugation_automorphisms(g, sub, l1)).character()
        a2 = pre_asai(rep, conjugation_automorphisms(g, sub, l2)).character()
        if corrupt and i == 0:
            a2 = a2 + ClassFunction.constant(sub, 1)
        if a1 != a2:
            bad.append({"config": i, "group": g.name, "subgroup_order": sub.order})
    return not bad, {"configs": configs, "mismatches": bad}


# ---------------------------------------------------------------------------


CRITERIA: list[Criterion] = [
    Criterion(1, "sym-roundtrip", ("weights",), "symmetric-power recovery round trip on 500 multisets", 30,
              check_sym_roundtrip),
    Criterion(2, "unique-factorization", ("liealg",), "tensor factorization sweeps A1, A2, C2", 60,
              check_unique_factorization_sweeps),
    Criterion(3, "adjoint-fibre", ("liealg",), "adjoint fibre of the A2 standard module", 10, check_adjoint_fibre),
    Criterion(4, "exterior-counterexample", ("weights", "liealg"), "Ext^3 agrees on Sym^2(std) and its dual", 5,
              check_exterior_counterexample),
    Criterion(5, "heisenberg", ("finchar",), "Heisenberg pair for n=3", 10, check_heisenberg),
    Criterion(6, "orthogonality-audit", ("density", "finchar"), "orthogonality audit on S3, D4, Q8, H3", 20,
              check_orthogonality_audit),
    Criterion(7, "dh-thresholds", ("density",), "DH1 for m=3", 1, check_dh1),
    Criterion(8, "sampling", ("density",), "sampling intervals on 100 random component models", 60, check_sampling),
    Criterion(9, "lattice-suite", ("lattice",), "saturation, split quotients and pushouts", 30, check_lattice_suite),
    Criterion(10, "asai-lifts", ("finchar",), "pre-Asai characters independent of lifts", 10, check_asai),
]


def select(filters: Iterable[str] | None = None) -> list[Criterion]:
    filters = [f for f in (filters or []) if f]
    if not filters:
        return list(CRITERIA)
    return [c for c in CRITERIA if any(c.matches(f) for f in filters)]


def run_acceptance(filters: Iterable[str] | None = None, corrupt: Iterable[str] = ()) -> list[CriterionResult]:
    corrupt = set(corrupt)
    out = []
    for c in select(filters):
        out.append(c.run(corrupt=c.key in corrupt or str(c.number) in corrupt or bool(set(c.modules) & corrupt)))
    return out
