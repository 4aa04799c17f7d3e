"""Reference measurements and the Born matrix.

A minimal informationally complete POVM (MIC) has d^2 effects spanning
operator space, so its outcome probabilities pin down the state exactly.
This script builds the built-in SICs, inspects their structure, and shows
how the Born matrix replaces the classical law of total probability.
"""

import numpy as np

from quasibasis import (
    bias,
    born_matrix,
    builtin_sic,
    gram,
    random_mic,
    state_to_probs,
    two_step_q,
    validate,
)

np.set_printoptions(precision=6, suppress=True)

# --- the qubit SIC: four sub-normalized tetrahedron projectors ------------
sic = builtin_sic(2)
print("qubit SIC:", sic.classify().summary())
print("weights:", bias(sic))
print("Gram matrix (constant off-diagonal = equiangular):")
print(gram(sic))

# --- the Born matrix carries the nonclassicality --------------------------
# Phi = A G^{-1} is column quasistochastic but necessarily has negative
# entries for a MIC; for the qubit SIC it is 3I - J/2.
bm = born_matrix(sic)
print("\nBorn matrix Phi:")
print(bm.phi)
print("column sums:", bm.phi.sum(axis=0))
print("most negative entry:", bm.phi.min())

# --- cascaded versus direct measurement ------------------------------------
# Direct protocol: measure D on rho. Cascaded protocol: measure the SIC
# first, then D. Quantum mechanics says Q(D) = P(D|H) Phi P(H); the
# classical guess would drop Phi.
rho = 2 * sic.elements[0]  # the first tetrahedron projector as a state
q_direct, q_cascade = two_step_q(sic.elements, sic, rho)
print("\ndirect probabilities:  ", q_direct)
print("cascaded (with Phi):  ", q_cascade)

p_ref = state_to_probs(rho, sic)
cond = np.einsum(
    "jab,iba->ji", sic.elements, sic.elements / bias(sic)[:, None, None]
).real
print("classical LTP (no Phi):", cond @ p_ref, " <- wrong")

# --- a generic biased MIC ---------------------------------------------------
mic = random_mic(3, seed=7)
print("\nrandom d=3 MIC:", validate(mic.elements).summary())
print("bias (sums to d):", bias(mic), "->", bias(mic).sum())
print("garbage-state probabilities are bias/d:",
      state_to_probs(np.eye(3) / 3, mic))
