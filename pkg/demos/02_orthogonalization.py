"""From MICs to Wigner bases: the principal orthogonalization.

A Wigner basis is an orthogonal measure basis; its Born-rule vector is a
quasiprobability (a discrete Wigner function). Applying the inverse square
root of the rescaled frame operator to a MIC produces the closest Wigner
basis with the same bias. This script walks that map and its structure:
collinear families, equivalence classes, the lift back, and the distance
bounds that make SICs extremal.
"""

import numpy as np

from quasibasis import (
    builtin_sic,
    collinear,
    distance,
    distance_bounds,
    lift,
    mic_t_range,
    principal_wigner,
    random_unbiased_mic,
    shifted,
    sic_bounds,
    sqrt_born,
    wigner_equivalent,
    wootters_wigner,
)

np.set_printoptions(precision=6, suppress=True)

# --- the principal Wigner basis of the qubit SIC ----------------------------
sic = builtin_sic(2)
res = principal_wigner(sic)
print("PW(qubit SIC):", res.basis.classify().summary())
print("dual-route cross error:", res.cross_error)
print("sqrt(Phi) = sqrt(3) I + (1-sqrt(3))/4 J:")
print(sqrt_born(sic))
print("first element (= (sqrt3/2) Pi_1 + (1-sqrt3)/4 I):")
print(res.basis.elements[0])

# --- collinear families: same direction, same Wigner basis ------------------
# L^t = t L + (1-t)(l/d) I stays a measure basis for every t != 0 and keeps
# the principal Wigner basis (shifted when t < 0).
t_min, t_max = mic_t_range(sic)
print("\nqubit SIC stays a MIC for t in", (t_min, t_max))
parallel = collinear(sic, 0.5)
anti = collinear(sic, -1.0)
print("L^0.5 ~ L:", wigner_equivalent(sic, parallel).verdict)
print("L^-1  ~ L:", wigner_equivalent(sic, anti).verdict,
      "(its PW is the shifted basis instead)")
np.testing.assert_allclose(
    principal_wigner(anti).basis.elements,
    shifted(res.basis).elements, atol=1e-12,
)

# --- the lift: any Wigner basis hides infinitely many MICs ------------------
F = wootters_wigner(3)
L = random_unbiased_mic(3, seed=5)
lifted = lift(F, L)  # a measure basis with PW = F
t_lo, t_hi = mic_t_range(lifted)
mic_above_F = collinear(lifted, t_hi)
print("\nlifted basis MIC range:", (round(t_lo, 4), round(t_hi, 4)))
print("a MIC whose Wigner function machinery is Wootters':",
      mic_above_F.classify().summary())
print("PW(lifted MIC) == Wootters:",
      np.max(np.abs(principal_wigner(mic_above_F).basis.elements - F.elements)))

# --- distance bounds and SIC extremality -------------------------------------
# For unbiased E and any unbiased Wigner basis F the distance
# sum_i ||E_i - F_i||^2 is sandwiched by spectrum formulas, saturated by
# PW(E) and its shift; minimizing over MICs crowns the SICs.
for d in (2, 3):
    E = builtin_sic(d)
    rep = distance_bounds(E)
    pw = principal_wigner(E).basis
    print(f"\nd={d}: distance to PW  = {distance(E, pw):.6f}"
          f"  (lower bound {rep.lower_bound:.6f})")
    print(f"     distance to SPW = {distance(E, shifted(pw)):.6f}"
          f"  (upper bound {rep.upper_bound:.6f})")
    print("     global SIC bounds:", tuple(round(float(b), 6) for b in sic_bounds(d)))

E_rand = random_unbiased_mic(3, seed=11)
gap = distance(E_rand, principal_wigner(E_rand).basis) - sic_bounds(3)[0]
print(f"\na random unbiased MIC exceeds the SIC lower bound by {gap:.4f}")
