"""Weight multisets and character lattices.

Run with ``python demos/01_weights_and_lattices.py``.  Each cell prints what
it computes; nothing here is random.
"""
# %% Symmetric powers forget less than one might think
from recoverrep.weights import (
    WeightMultiset,
    dual,
    ext_power,
    recover_from_sym,
    recover_from_tensor,
    sym_power,
    tensor_power,
)

std = WeightMultiset.from_list([(1, 0), (0, 1), (-1, -1)])  # sl3 standard in (x1 - x3, x2 - x3) coordinates
s3 = sym_power(std, 3)
print("Sym^3 of the sl3 standard module has", len(s3), "weights; top weight", max(s3.items())[0])

# peel off the lex-largest weight, divide by k, repeat
print("recovered from Sym^3:", sorted(recover_from_sym(s3, 3, 3).items()))

# %% The same round trip for tensor powers
w = WeightMultiset.from_ints([3, 1, 1, -5])
t = tensor_power(w, 2)
print("T^2 has", len(t), "weights; recovered:", sorted(recover_from_tensor(t, 2).items()))

# %% Exterior powers do not determine the module
v = sym_power(std, 2)
print("V = Sym^2(std): self-dual?", v == dual(v))
print("Ext^3 V == Ext^3 V*?", ext_power(v, 3) == ext_power(dual(v), 3))

# %% Lattices: saturation and split quotients
from recoverrep import lattice as lt

lat = lt.Lattice.span([(2, 2, 0), (0, 4, 4)])
sat = lt.saturate(lat)
print("saturation basis:", sat.basis, "index:", lt.saturation_index(lat))
print("direct summand before/after:", lt.is_direct_summand(lat), lt.is_direct_summand(sat))

# an inclusion Z^2 -> Z^3 with free cokernel, and a section of the projection
incl = lt.LatticeMap.from_rows([(1, 0), (0, 1), (1, 1)])
fq = lt.free_quotient(incl)
print("section:", fq.section.matrix, "projection . section:", fq.projection.compose(fq.section).matrix)

# %% Pushout of Z <-2- Z -3-> Z, torsion discarded
p = lt.LatticeMap.from_rows([(2,)])
q = lt.LatticeMap.from_rows([(3,)])
m1, f, g = lt.pushout_torsion_free(p, q)
print("M1 rank", m1.rank, "maps", f.matrix, g.matrix, "commute:", f.compose(p).matrix == g.compose(q).matrix)

# %% Extending a character map along a split inclusion
restriction = lt.LatticeMap.from_rows([(1, 0)])
extension = lt.LatticeMap.from_rows([(1, 0), (0, 1), (0, 0)])
center = lt.LatticeMap.from_rows([(5,)])
lift = lt.lift_torus_map(restriction, extension, center)
print("lift:", lift.matrix, "restricts correctly:", lift.compose(extension).matrix == restriction.matrix)
