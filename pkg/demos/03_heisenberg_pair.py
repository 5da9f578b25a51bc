"""Two representations of the Heisenberg group of order 27.

rho_1 and rho_2 have equal cubes elementwise, yet no linear character
twists one into the other.  Clifford theory over the abelian subgroup
T = <A, C> explains what does survive.
"""
# %% The group and its relations
from recoverrep.finchar.characters import inner_product, irreducible_characters, linear_characters
from recoverrep.finchar.groups import heisenberg_group
from recoverrep.finchar.reps import (
    clifford_decompose,
    compare_fixed_sets,
    conjugation_automorphisms,
    heisenberg_rep,
    induce,
    invariant_character_check,
    kth_power_equal,
    linear_rep,
    pre_asai,
    subgroup_of,
    twist_cocycle,
    twist_search,
    verify_heisenberg_relations,
)
from recoverrep.finchar import matrices as mx

H = heisenberg_group(3)
print(H.order, "elements,", len(H.classes), "classes")
print(verify_heisenberg_relations(H))
print("degrees:", [int(c.degree) for c in irreducible_characters(H)])

# %% The pair
rho1, rho2 = heisenberg_rep(3, 1, H), heisenberg_rep(3, 2, H)
chi1, chi2 = rho1.character(), rho2.character()
print("<chi1, chi1> =", inner_product(chi1, chi1), " <chi1, chi2> =", inner_product(chi1, chi2))
print("chi1^3 == chi2^3:", kth_power_equal(chi1, chi2, 3), " chi1 == chi2:", kth_power_equal(chi1, chi2, 1))
print("twist among", len(linear_characters(H)), "linear characters:", twist_search(rho1, rho2))

# %% Restriction to T: three distinct lines, permuted cyclically by H/T
T = H.generate([H.element("A"), H.element("C")])
d1, d2 = clifford_decompose(rho1, T), clifford_decompose(rho2, T)
print("multiplicity one:", d1.multiplicity_one, d2.multiplicity_one)
print("action of H/T on rho1 lines:", d1.action)
print("fixed sets agree:", compare_fixed_sets(d1, d2)["equal"])

# %% Each rho_a is induced from a character of T that B moves
t = subgroup_of(H, T)
for psi in linear_characters(t):
    ind = induce(linear_rep(psi))
    if ind.character() == chi1:
        print("rho1 = Ind(", psi.describe(), ")  invariant?", invariant_character_check(psi).invariant)
        break

# %% The pre-Asai product over H/T does not depend on the coset lifts
lifts_a = [H.identity, H.element("B"), H.power(H.element("B"), 2)]
lifts_b = [H.element("C"), H.word("BA"), H.word("BBC")]
as_a = pre_asai(linear_rep(psi), conjugation_automorphisms(H, t, lifts_a))
as_b = pre_asai(linear_rep(psi), conjugation_automorphisms(H, t, lifts_b))
print("pre-Asai characters equal:", as_a.character() == as_b.character())

# %% A twist cocycle: rho1 against a diagonal conjugate of itself
conj = rho1.conjugate_by(mx.diagonal([1, 2, 3]))
cocycle = twist_cocycle(rho1, conj, T)
print("T(B) =", mx.format_matrix(cocycle(H.element("B"))), " all diagonal:", cocycle.all_diagonal)
