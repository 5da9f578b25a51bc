"""Highest weights, tensor products and adjoint fibres for A1, A2, C2."""
# %% Freudenthal multiplicities agree with the Weyl dimension formula
from recoverrep.liealg import (
    adjoint_fibre,
    check_unique_factorization,
    irr_weights,
    product_group_adjoint_counterexample,
    tensor_decompose,
    weyl_dim,
)

for alg, hw in [("A1", (4,)), ("A2", (1, 1)), ("A2", (2, 1)), ("C2", (1, 1))]:
    w = irr_weights(alg, hw)
    print(f"{alg} {hw}: dim {weyl_dim(alg, hw)}, weights {len(w)}, zero weight x{w.multiplicity((0,) * len(hw))}")

# %% Tensor products, decomposed by peeling dominant highest weights
print("A1: V2 x V3 =", sorted(h.coeffs for h in tensor_decompose("A1", (2,), (3,)).elements()))
print("A2: std x std* =", dict((h.coeffs, m) for h, m in tensor_decompose("A2", (1, 0), (0, 1)).items()))

# %% Unique factorization, checked by brute force on small boxes
for alg, bound in [("A1", 6), ("A2", 2), ("C2", 2)]:
    rep = check_unique_factorization(alg, bound, 2)
    print(f"{alg} bound {bound}: {rep['tuples_checked']} factor lists, counterexamples {rep['counterexamples']}")

# %% Adjoint weights only see a module up to duality
print("A2 fibre of (1,0):", [h.coeffs for h in adjoint_fibre("A2", (1, 0), 3)])
print("C2 fibre of (1,0):", [h.coeffs for h in adjoint_fibre("C2", (1, 0), 2)])

# for a product group the fibre is larger than {V, V*}
report = product_group_adjoint_counterexample()
print({k: report[k] for k in ("ad_equal", "v_iso_w", "v_iso_w_dual")})
