"""Component models: exact densities, sampling and the orthogonality audit."""
# %% The S3 model: G0 = A3, chi1 = standard, chi2 = trivial + sign
from recoverrep.density import (
    ComponentModel,
    component_lambda,
    dh_thresholds,
    exact_agreement_density,
    normal_subgroups,
    orthogonality_audit,
    sample_density,
)
from recoverrep.finchar.characters import irreducible_characters
from recoverrep.finchar.groups import group_from_name, symmetric_group
from recoverrep.finchar.reps import sign_rep, standard_rep, trivial_rep

S3 = symmetric_group(3)
chi1 = standard_rep(S3).character()
chi2 = trivial_rep(S3).character() + sign_rep(S3).character()
model = ComponentModel.build(S3, S3.derived, chi1, chi2)
print("lambda =", component_lambda(model), " agreement =", exact_agreement_density(model))

# %% Uniform sampling converges to the agreement density
for n in (100, 10_000, 1_000_000):
    est, (lo, hi) = sample_density(model, n, seed=0)
    print(f"{n:>9} samples: {float(est):.4f}  [{lo:.4f}, {hi:.4f}]")

# %% Thresholds
print("DH1, DH2 for m=2, c=(2,2):", dh_thresholds(2, 2, 2))
print("DH1 for m=3:", dh_thresholds(3, 1, 1)[0])

# %% The audit: 2 <= mean |chi1 - chi2|^2 <= (1 - lambda) 4 m^2
report = orthogonality_audit(model)
print("mean", report.mean_sq_char_diff, "bound", report.upper_bound, report.notes)

# for two distinct irreducibles the lower bound applies and is attained
Q8 = group_from_name("quaternion")
irr = irreducible_characters(Q8)
for g0 in normal_subgroups(Q8):
    rep = orthogonality_audit(ComponentModel.build(Q8, g0, irr[1], irr[2]))
    print(f"Q8, |G0|={len(g0)}: lambda {rep.lam}, mean {rep.mean_sq_char_diff}, bound {rep.upper_bound}")
