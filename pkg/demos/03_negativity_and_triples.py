"""Negativity, phase-space geometry, and triple products.

Wigner functions earn their keep by going negative. This script measures
how negative: the ceiling negativity of Wootters bases and SIC-derived
bases, the gauge split that locates the Wigner function inside the Born
rule, triple products with their affine-area phases, and the equiangular
rank-2 MIC hiding behind the Hesse SIC.
"""

import numpy as np

from quasibasis import (
    builtin_sic,
    ceiling_negativity,
    ceiling_negativity_sampled,
    collinear,
    composite_wootters,
    diagnostics,
    gauge_split,
    mic_t_range,
    principal_wigner,
    shifted,
    sic_triple_relation_check,
    state_to_probs,
    triple_products,
    wootters_triple_oracle,
    wootters_wigner,
)

np.set_printoptions(precision=6, suppress=True)

# --- how negative can a Wigner function get? --------------------------------
# The worst case over states is reached at an eigenstate of the most
# negative element eigenvalue, so the ceiling is spectrally exact.
for label, basis in [
    ("Wootters d=2", wootters_wigner(2)),
    ("Wootters d=3", wootters_wigner(3)),
    ("Wootters d=4 (2x2)", composite_wootters([2, 2])),
    ("PW of Hesse SIC", principal_wigner(builtin_sic(3)).basis),
    ("SPW of Hesse SIC", shifted(principal_wigner(builtin_sic(3)).basis)),
]:
    exact = ceiling_negativity(basis)
    sampled = ceiling_negativity_sampled(basis, n_samples=4000, seed=1)
    print(f"{label:22s} ceiling negativity {exact:.6f}"
          f"  (sampled {sampled:.6f})")
print("PW of a SIC minimizes the ceiling over unbiased Wigner bases;"
      " the shifted basis maximizes it.")

# --- the gauge split: Wigner functions inside the Born rule -----------------
sic = builtin_sic(2)
rho = 2 * sic.elements[0]
split = gauge_split(sic.elements, sic, rho)
pw = principal_wigner(sic).basis
print("\nright factor sqrt(Phi) P(H):", split.right.values)
print("Wigner function in PW(SIC): ", state_to_probs(rho, pw))
print("negativity of this state:", split.right.negativity)

# --- triple products and geometric phases -----------------------------------
F3 = wootters_wigner(3)
trip = triple_products(F3)
oracle = wootters_triple_oracle(3)
print("\nWootters d=3 triple products: |Gamma| =",
      np.unique(np.round(np.abs(trip.gamma), 12)))
print("affine-area phase formula max deviation:",
      np.max(np.abs(trip.gamma - oracle)))
phases = np.angle(trip.gamma[0, 1, 5]) * 3 / (4 * np.pi)
print("example: Gamma[0,1,5] phase corresponds to area",
      round(phases % 3, 6), "in the 3x3 affine plane")

for d in (2, 3):
    resid = max(
        sic_triple_relation_check(builtin_sic(d), +1),
        sic_triple_relation_check(builtin_sic(d), -1),
    )
    print(f"SIC triple-product relation residual (d={d}, both signs): {resid:.2e}")

# --- the Appleby MIC from the Hesse SIC -------------------------------------
hesse = builtin_sic(3)
t_min, _ = mic_t_range(hesse)
appleby = collinear(hesse, t_min)
diag = diagnostics(appleby)
print(f"\nantiparallel extremal MIC of the Hesse SIC (t = {t_min}):")
print("  classification:", appleby.classify().summary())
print("  rank profile:", diag.rank_profile,
      " equiangular spread:", diag.equiangular_spread)
print("  Weyl-Heisenberg covariant:", diag.wh_covariant)
