import cmath
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from recoverrep.errors import (
    BadParameters,
    DimMismatch,
    GroupMismatch,
    GroupTooLarge,
    NonRationalResult,
    NotAHomomorphism,
    NotAutomorphism,
    NotEqualOnSubgroup,
    NotNormal,
)
from recoverrep.finchar import matrices as mx
from recoverrep.finchar.characters import (
    ClassFunction,
    LinearCharacter,
    induced_class_function,
    inner_product,
    irreducible_characters,
    linear_characters,
)
from recoverrep.finchar.cyclotomic import Cyclotomic, cyclotomic_polynomial, parse_cyclotomic
from recoverrep.finchar.groups import (
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_from_name,
    heisenberg_group,
    quaternion_group,
    symmetric_group,
)
from recoverrep.finchar.reps import (
    MatrixRep,
    asai_character,
    clifford_decompose,
    commutant_dimension,
    compare_fixed_sets,
    conjugation_automorphisms,
    fixed_sets,
    heisenberg_rep,
    induce,
    invariant_character_check,
    kth_power_equal,
    linear_rep,
    permutation_rep,
    pre_asai,
    regular_rep,
    sign_rep,
    standard_rep,
    subgroup_of,
    trivial_rep,
    twist_cocycle,
    twist_search,
    verify_heisenberg_relations,
)

H3 = heisenberg_group(3)
S3 = symmetric_group(3)
RHO1 = heisenberg_rep(3, 1, H3)
RHO2 = heisenberg_rep(3, 2, H3)
T_ELEMS = H3.generate([H3.element("A"), H3.element("C")])


def approx(x) -> complex:
    return complex(x)


# ---------------------------------------------------------------------------
# brute-force oracles, independent of the library's class and table machinery


def brute_classes(g: FiniteGroup) -> set[frozenset[int]]:
    return {frozenset(g.table[g.table[x][a]][g.inverses[x]] for x in range(g.order)) for a in range(g.order)}


def brute_inner(f, h, g: FiniteGroup) -> complex:
    return sum(approx(f(x)) * approx(h(x)).conjugate() for x in range(g.order)) / g.order


def brute_linear_characters(g: FiniteGroup, e: int) -> list[tuple[int, ...]]:
    """All assignments of e-th roots of unity to generators that extend to homomorphisms."""
    out = []
    for imgs in itertools.product(range(e), repeat=len(g.generators)):
        exps = {g.identity: 0}
        frontier = [g.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for s, k in zip(g.generators, imgs):
                    y = g.table[x][s]
                    v = (exps[x] + k) % e
                    if y not in exps:
                        exps[y] = v
                        nxt.append(y)
                    elif exps[y] != v:
                        ok = False
            frontier = nxt
        if ok:
            out.append(tuple(exps[x] for x in range(g.order)))
    return out


def brute_induced(sub: FiniteGroup, psi, g: int) -> complex:
    parent = sub.parent
    local = {p: i for i, p in enumerate(sub.embedding)}
    total = 0
    for x in range(parent.order):
        y = parent.table[parent.table[parent.inverses[x]][g]][x]
        if y in local:
            total += approx(psi(local[y]))
    return total / sub.order


# ---------------------------------------------------------------------------
# cyclotomic arithmetic

small = st.integers(-5, 5)
conductors = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12])


@st.composite
def cyclo(draw, m=None):
    m = m or draw(conductors)
    coeffs = draw(st.lists(small, min_size=m, max_size=m))
    return Cyclotomic.from_exponents(m, dict(enumerate(coeffs)))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity():
    z = Cyclotomic.zeta(3)
    assert z ** 3 == 1 and 1 + z + z * z == 0
    assert z.conjugate() == z * z == z.inverse()
    assert Cyclotomic.zeta(6, 2) == z  # equality across conductors
    assert Cyclotomic.zeta(4) ** 2 == -1
    assert (Cyclotomic.zeta(12, 5) * Cyclotomic.zeta(12, 7)) == 1


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_cyclotomic_matches_complex(data):
    a = data.draw(cyclo())
    b = data.draw(cyclo())
    for got, want in ((a + b, approx(a) + approx(b)), (a - b, approx(a) - approx(b)), (a * b, approx(a) * approx(b)),
                      (a.conjugate(), approx(a).conjugate())):
        assert abs(approx(got) - want) < 1e-9
    if a:
        assert a * a.inverse() == 1
        assert abs(approx(b / a) - approx(b) / approx(a)) < 1e-6
    n = a * a.conjugate()
    assert n == n.conjugate() and approx(n).real >= -1e-9
    assert (a * a.conjugate()).galois(1) == n


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_cyclotomic_text_round_trip(data):
    m = data.draw(conductors)
    a = data.draw(cyclo(m))
    assert parse_cyclotomic(str(a), m) == a


def test_parse_literals():
    assert parse_cyclotomic("1/2 - z^2 + 3*z", 5) == Fraction(1, 2) + 3 * Cyclotomic.zeta(5) - Cyclotomic.zeta(5, 2)
    assert parse_cyclotomic("z^3", 3) == 1
    with pytest.raises(ValueError):
        parse_cyclotomic("2*w", 3)


# ---------------------------------------------------------------------------
# groups


@pytest.mark.parametrize("name,order,nclasses", [
    ("heisenberg:3", 27, 11), ("sym:3", 6, 3), ("sym:4", 24, 5), ("dihedral:4", 8, 5),
    ("quaternion", 8, 5), ("cyclic:6", 6, 6), ("alt:4", 12, 4), ("heisenberg:5", 125, 29),
])
def test_group_presets(name, order, nclasses):
    g = group_from_name(name)
    assert g.order == order and len(g.classes) == nclasses
    assert set(map(frozenset, g.classes)) == brute_classes(g)
    brute_center = {z for z in range(g.order) if all(g.table[z][x] == g.table[x][z] for x in range(g.order))}
    assert g.center == brute_center
    comms = {g.commutator(a, b) for a in range(g.order) for b in range(g.order)}
    assert g.derived == g.generate(comms)


def test_heisenberg_relations_and_parameters():
    assert all(verify_heisenberg_relations(H3).values())
    assert all(verify_heisenberg_relations(heisenberg_group(5)).values())
    for bad in (2, 4, 9, 1):
        with pytest.raises(BadParameters):
            heisenberg_group(bad)
    with pytest.raises(BadParameters):
        heisenberg_rep(3, 3)
    with pytest.raises(GroupTooLarge):
        heisenberg_group(13)
    with pytest.raises(GroupTooLarge):
        symmetric_group(7)


def test_group_json_and_validation():
    g = dihedral_group(4)
    h = FiniteGroup.from_json(g.to_json())
    assert h.table == g.table and h.generators == g.generators
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        # Latin square that is not associative
        FiniteGroup([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    with pytest.raises(ValueError):
        FiniteGroup.from_json({"table": [[0]], "bogus": 1})


# ---------------------------------------------------------------------------
# characters


GROUPS = ["sym:3", "sym:4", "dihedral:4", "quaternion", "alt:4", "heisenberg:3", "alt:5", "dihedral:5"]


@pytest.mark.parametrize("name", GROUPS)
def test_character_table_orthogonality(name):
    g = group_from_name(name)
    irr = irreducible_characters(g)
    assert len(irr) == len(g.classes)
    assert sum(int(c.degree) ** 2 for c in irr) == g.order
    for a in irr:
        for b in irr:
            assert abs(brute_inner(a, b, g) - (a is b)) < 1e-9
    # column orthogonality, an independent consequence
    for i, x in enumerate(g.class_reps):
        for j, y in enumerate(g.class_reps):
            s = sum(approx(c(x)) * approx(c(y)).conjugate() for c in irr)
            want = g.centralizer_order(x) if i == j else 0
            assert abs(s - want) < 1e-9


@pytest.mark.parametrize("name,expo", [("sym:3", 2), ("dihedral:4", 2), ("quaternion", 2), ("heisenberg:3", 3),
                                       ("cyclic:6", 6), ("alt:4", 3)])
def test_linear_characters_match_brute_force(name, expo):
    g = group_from_name(name)
    lin = linear_characters(g)
    brute = brute_linear_characters(g, expo)
    assert len(lin) == len(brute) == g.order // len(g.derived)
    got = {tuple(approx(c(x)) for x in range(g.order)) for c in lin}
    want = {tuple(cmath.exp(2j * cmath.pi * k / expo) for k in e) for e in brute}
    assert {tuple(round(z.real, 9) + 1j * round(z.imag, 9) for z in v) for v in got} == \
           {tuple(round(z.real, 9) + 1j * round(z.imag, 9) for z in v) for v in want}
    for a in lin:
        for b in lin:
            assert a * b in lin


def test_inner_product_examples():
    triv = trivial_rep(S3).character()
    assert inner_product(triv, triv) == 1
    assert inner_product(standard_rep(S3).character(), triv) == 0
    assert inner_product(RHO1.character(), RHO1.character()) == 1
    c3 = cyclic_group(3)
    f = ClassFunction(c3, [1, Cyclotomic.zeta(3), 0])
    with pytest.raises(NonRationalResult):
        inner_product(f, ClassFunction.constant(c3, 1))
    with pytest.raises(GroupMismatch):
        inner_product(triv, RHO1.character())


def test_character_examples():
    c3 = cyclic_group(3)
    assert regular_rep(c3).character().values == (3, 0, 0)
    assert trivial_rep(H3).character() == ClassFunction.constant(H3, 1)
    chi = RHO1.character()
    xi = Cyclotomic.zeta(3)
    for x in range(H3.order):
        if x in H3.center:
            k = [z for z in range(3) if H3.power(H3.element("C"), z) == x][0]
            assert chi(x) == 3 * xi ** k
        else:
            assert chi(x) == 0


# ---------------------------------------------------------------------------
# representations


def _example_reps():
    d4 = dihedral_group(4)
    rot = subgroup_of(d4, d4.generate([d4.element("r")]))
    faithful = [c for c in linear_characters(rot) if c.modulus == 4][0]
    return [
        RHO1, RHO2, standard_rep(S3), sign_rep(S3), permutation_rep(S3), regular_rep(S3),
        trivial_rep(S3).direct_sum(sign_rep(S3)), standard_rep(symmetric_group(4)),
        induce(linear_rep(faithful)), permutation_rep(d4),
        RHO1.twist(linear_characters(H3)[4]),
    ]


def test_homomorphism_on_all_pairs():
    for rep in _example_reps():
        if rep.group.order <= 200:
            assert rep.verify_all_pairs() == rep.group.order ** 2


def test_bad_generator_images_rejected():
    with pytest.raises(NotAHomomorphism):
        MatrixRep.from_generators(S3, [((1,),), ((-1,),)])  # a 3-cycle cannot map to -1
    ok = MatrixRep.from_generators(S3, [((-1,),), ((1,),)])
    assert ok.character() == sign_rep(S3).character()


def test_irreducibility_matches_commutant():
    for rep in _example_reps():
        if rep.dim <= 4:
            norm = rep.character().norm()
            assert (norm == 1) == (commutant_dimension(rep) == 1)
            assert commutant_dimension(rep) == norm  # multiplicity-free examples, otherwise sum of squares
    assert commutant_dimension(trivial_rep(S3).direct_sum(trivial_rep(S3))) == 4


def test_kth_power_equal_examples():
    assert kth_power_equal(RHO1, RHO2, 3)
    assert not kth_power_equal(RHO1, RHO2, 1)
    assert kth_power_equal(RHO1, RHO1, 5)
    ts = trivial_rep(S3).direct_sum(sign_rep(S3))
    assert not kth_power_equal(standard_rep(S3), ts, 1)
    with pytest.raises(GroupMismatch):
        kth_power_equal(RHO1, ts, 1)


def test_kth_power_equal_preserves_irreducibility():
    reps = _example_reps()
    for a in reps:
        for b in reps:
            if a.group is b.group and a.dim == b.dim:
                for k in (1, 2, 3, 4):
                    if kth_power_equal(a, b, k):
                        assert a.character().norm() == b.character().norm()


def test_twist_search():
    assert twist_search(RHO1, RHO2) is None
    assert len(linear_characters(H3)) == 9
    assert twist_search(RHO1, RHO1).is_trivial()
    for eta in linear_characters(H3):
        assert twist_search(RHO1, RHO1.twist(eta)) is not None
    std = standard_rep(S3)
    sgn = linear_characters(S3)[1]
    assert twist_search(std, std.twist(sgn)) is not None  # std (x) sign = std
    with pytest.raises(DimMismatch):
        twist_search(std, trivial_rep(S3))


def test_twist_search_against_brute_force_witnesses():
    # brute force: every homomorphism H3 -> mu_3 evaluated numerically
    chi1, chi2 = RHO1.character(), RHO2.character()
    for exps in brute_linear_characters(H3, 3):
        assert any(abs(approx(chi1(x)) * cmath.exp(2j * cmath.pi * exps[x] / 3) - approx(chi2(x))) > 1e-9
                   for x in range(H3.order))


def test_clifford_heisenberg():
    d1 = clifford_decompose(RHO1, T_ELEMS)
    d2 = clifford_decompose(RHO2, T_ELEMS)
    for d in (d1, d2):
        assert d.multiplicity_one and len(d.constituents) == 3
        assert d.quotient.order == 3
        sets = d.fixed_sets()
        assert sets[0] == {0, 1, 2}
        assert all(not sets[phi] for phi in (1, 2))
    cmp = compare_fixed_sets(d1, d2)
    assert cmp["aligned"] and cmp["equal"]


def test_clifford_other_examples():
    d = clifford_decompose(RHO1, range(H3.order))
    assert len(d.constituents) == 1 and d.multiplicities == (1,)
    reg = clifford_decompose(regular_rep(S3), S3.derived)
    assert reg.multiplicities == (2, 2, 2)
    flip = [phi for phi in range(2) if phi != reg.quotient.identity][0]
    assert reg.fixed_sets()[flip] == {0}  # trivial of A3 is fixed, the two others swap
    with pytest.raises(NotNormal):
        clifford_decompose(standard_rep(S3), S3.generate([S3.generators[0]]))


def test_fixed_sets_examples():
    assert fixed_sets([(0, 1, 2)]) == {0: frozenset({0, 1, 2})}
    assert fixed_sets([(0, 1, 2), (1, 2, 0), (2, 0, 1)])[1] == frozenset()
    assert fixed_sets([(0, 1), (1, 0)]) == {0: frozenset({0, 1}), 1: frozenset()}


def test_induce_examples():
    t = subgroup_of(H3, T_ELEMS)
    for a, rho in ((1, RHO1), (2, RHO2)):
        psi = LinearCharacter.from_images(t, 3, {t.embedding.index(H3.element("A")): 0,
                                                 t.embedding.index(H3.element("C")): a})
        ind = induce(linear_rep(psi))
        assert ind.dim == 3 and ind.character() == rho.character()
    whole = subgroup_of(S3, range(6))
    assert induce(trivial_rep(whole)).character() == trivial_rep(S3).character()
    a3 = subgroup_of(S3, S3.derived)
    ind = induce(trivial_rep(a3))
    assert ind.character() == trivial_rep(S3).character() + sign_rep(S3).character()


@pytest.mark.parametrize("name", ["sym:4", "dihedral:4", "heisenberg:3", "quaternion"])
def test_induced_character_formula_against_definition(name):
    g = group_from_name(name)
    for x in g.class_reps[1:3]:
        sub = subgroup_of(g, g.generate([x]))
        for lam in linear_characters(sub):
            cf = induced_class_function(sub, lam.class_function())
            for y in g.class_reps:
                assert abs(approx(cf(y)) - brute_induced(sub, lam, y)) < 1e-9


def test_pre_asai_examples():
    t = subgroup_of(H3, T_ELEMS)
    psi = LinearCharacter.from_images(t, 3, {t.embedding.index(H3.element("A")): 0,
                                             t.embedding.index(H3.element("C")): 1})
    rep = linear_rep(psi)
    ident = conjugation_automorphisms(H3, t, [H3.identity])
    assert pre_asai(rep, ident).character() == rep.character()
    b = H3.element("B")
    lifts1 = [H3.identity, b]
    lifts2 = [H3.element("C"), H3.word("BA")]
    as1 = pre_asai(rep, conjugation_automorphisms(H3, t, lifts1))
    as2 = pre_asai(rep, conjugation_automorphisms(H3, t, lifts2))
    assert as1.character() == as2.character()
    # one-dimensional case: the product of chi and its conjugate
    conj_b = conjugation_automorphisms(H3, t, [b])[0]
    for s in range(t.order):
        assert as1.character()(s) == psi(s) * psi(conj_b[s])
    assert asai_character(rep.character(), conjugation_automorphisms(H3, t, lifts1)) == as1.character()


def test_pre_asai_rejects_non_automorphisms():
    rep = standard_rep(S3)
    bad = list(range(6))
    bad[1], bad[2] = bad[2], bad[1]
    with pytest.raises(NotAutomorphism):
        pre_asai(rep, [bad])
    with pytest.raises(NotAutomorphism):
        pre_asai(rep, [[0] * 6])


def test_twist_cocycle_examples():
    t = subgroup_of(H3, T_ELEMS)
    same = twist_cocycle(RHO1, RHO1, t)
    assert all(mx.equal(v, mx.identity(3)) for v in same.values)
    assert same.pairs_checked == 27 * 27
    eta = [c for c in linear_characters(H3) if not c.is_trivial() and c.restrict(t).is_trivial()][0]
    scal = twist_cocycle(RHO1, RHO1.twist(eta), t)
    assert scal.all_scalar
    for s in range(H3.order):
        assert mx.equal(scal(s), mx.scalar(eta(s), 3))
    d = mx.diagonal([1, 2, 3])
    conj = RHO1.conjugate_by(d)
    diag = twist_cocycle(RHO1, conj, t)
    assert diag.all_diagonal and not diag.all_scalar
    with pytest.raises(NotEqualOnSubgroup):
        twist_cocycle(RHO1, RHO2, t)
    with pytest.raises(NotNormal):
        twist_cocycle(standard_rep(S3), standard_rep(S3), S3.generate([S3.generators[0]]))


def test_invariant_character_check_examples():
    t = subgroup_of(H3, T_ELEMS)
    res = invariant_character_check(LinearCharacter.trivial(t))
    assert res.invariant and res.extension is not None and res.extension.is_trivial()
    for a in (1, 2):
        psi = LinearCharacter.from_images(t, 3, {t.embedding.index(H3.element("A")): 0,
                                                 t.embedding.index(H3.element("C")): a})
        assert not invariant_character_check(psi).invariant
    a3 = subgroup_of(S3, S3.derived)
    for lam in linear_characters(a3):
        assert invariant_character_check(lam).invariant == lam.is_trivial()
    # characters of T trivial on C are B-invariant and extend
    for lam in linear_characters(t):
        if lam.exps[t.embedding.index(H3.element("C"))] == 0:
            res = invariant_character_check(lam)
            assert res.invariant and res.extension.restrict(t) == lam


def test_direct_product_and_larger_tables():
    g = direct_product(cyclic_group(2), symmetric_group(3))
    assert g.order == 12 and len(irreducible_characters(g)) == 6
    q = quaternion_group()
    assert [int(c.degree) for c in irreducible_characters(q)] == [1, 1, 1, 1, 2]


def test_concurrent_queries_share_cached_values():
    from concurrent.futures import ThreadPoolExecutor

    g = symmetric_group(4)
    elems = g.derived

    def work(_):
        return linear_characters(g), irreducible_characters(g), subgroup_of(g, elems), g.element_order(5)

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(work, range(32)))
    first = results[0]
    for r in results:
        assert r[0] is first[0] and r[1] is first[1] and r[2] is first[2] and r[3] == first[3]
