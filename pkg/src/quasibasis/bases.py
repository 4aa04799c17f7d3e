"""Measure bases and their derived objects: bias, Gram matrix, dual basis,
frame operators, and the Born matrix.

A measure basis is an ordered Hermitian operator basis {L_i} for the space
of d x d operators with sum(L_i) = I and tr(L_i) >= 0. MICs (all elements
positive semidefinite) and Wigner bases (Gram matrix diagonal) are the two
refinements everything else in the package revolves around.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .operators import (
    SingularOperatorError,
    SuperOperator,
    as_hermitian,
    mat_func_psd,
    op_to_coords,
)

VALIDATION_TOL = 1e-9

# Gram matrices with a worse condition number are treated as numerically
# linearly dependent. Kept far above eigenvalue noise so that MICs sitting
# on the PSD boundary (which stay well-conditioned) are not confused with
# genuinely dependent element sets.
MAX_GRAM_CONDITION = 1e12

RANK_EIG_RTOL = 1e-8


class BasisValidationError(ValueError):
    """Candidate element set is not a valid measure basis."""


@dataclass
class BasisClass:
    """Classification report for a candidate measure basis.

    ``failures`` names each violated invariant with its numeric residual;
    an empty dict together with is_measure_basis=True means the candidate
    passed every structural check.
    """

    is_measure_basis: bool
    is_mic: bool
    is_wigner: bool
    is_unbiased: bool
    is_rank1: bool
    min_eigenvalue: float
    gram_condition: float
    failures: dict[str, float] = field(default_factory=dict)

    def summary(self) -> str:
        if not self.is_measure_basis:
            return "not a measure basis: " + ", ".join(
                f"{k}={v:.3e}" for k, v in self.failures.items()
            )
        tags = ["measure basis"]
        if self.is_mic:
            tags.append("MIC")
        if self.is_wigner:
            tags.append("Wigner")
        if self.is_unbiased:
            tags.append("unbiased")
        if self.is_rank1:
            tags.append("rank-1")
        return ", ".join(tags)


class MeasureBasis:
    """Validated, immutable ordered basis of d^2 Hermitian operators.

    Construction symmetrizes each element, then checks the three defining
    invariants (sum to identity, nonnegative traces, linear independence)
    and raises BasisValidationError on any violation. Element order is
    significant and preserved.
    """

    def __init__(self, elements, label: str = "", tol: float = VALIDATION_TOL):
        elements = np.asarray(elements, dtype=complex)
        if elements.ndim != 3 or elements.shape[1] != elements.shape[2]:
            raise ValueError(f"expected (n, d, d) elements, got {elements.shape}")
        d = elements.shape[1]
        if d < 2:
            raise ValueError("dimension must be >= 2")
        if elements.shape[0] != d * d:
            raise BasisValidationError(
                f"expected {d * d} elements for d={d}, got {elements.shape[0]}"
            )
        elements = np.stack([as_hermitian(E) for E in elements])
        cls = validate(elements, tol)
        if not cls.is_measure_basis:
            raise BasisValidationError(
                "not a measure basis: "
                + ", ".join(f"{k}={v:.3e}" for k, v in cls.failures.items())
            )
        elements.setflags(write=False)
        self.dim = d
        self.elements = elements
        self.label = label

    def __len__(self):
        return self.elements.shape[0]

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @cached_property
    def weights(self) -> np.ndarray:
        """Bias vector l_i = tr(L_i), recomputed from the elements."""
        w = np.einsum("aii->a", self.elements).real
        w.setflags(write=False)
        return w

    @cached_property
    def coords(self) -> np.ndarray:
        """Rows are the herm_onb coordinate vectors of the elements."""
        c = np.stack([op_to_coords(E, self.dim) for E in self.elements])
        c.setflags(write=False)
        return c

    def classify(self, tol: float = VALIDATION_TOL) -> BasisClass:
        return validate(self.elements, tol)

    def __repr__(self):
        lab = f" {self.label!r}" if self.label else ""
        return f"MeasureBasis(d={self.dim}, n={len(self)}{lab})"


def _gram_of(elements: np.ndarray) -> np.ndarray:
    G = np.einsum("aij,bji->ab", elements, elements).real
    return (G + G.T) / 2


def validate(candidate, tol: float = VALIDATION_TOL) -> BasisClass:
    """Classify a candidate element set (array-like of d^2 Hermitian d x d
    matrices, or a MeasureBasis).

    Returns a full report rather than raising, except for structurally
    malformed input (wrong element count, mismatched dimensions).
    """
    if isinstance(candidate, MeasureBasis):
        elements = candidate.elements
    else:
        elements = np.asarray(candidate, dtype=complex)
    if elements.ndim != 3 or elements.shape[1] != elements.shape[2]:
        raise ValueError(f"expected (n, d, d) elements, got {elements.shape}")
    d = elements.shape[1]
    if elements.shape[0] != d * d:
        raise ValueError(
            f"expected {d * d} elements for d={d}, got {elements.shape[0]}"
        )
    elements = np.stack([as_hermitian(E) for E in elements])

    failures: dict[str, float] = {}

    sum_resid = float(np.max(np.abs(elements.sum(axis=0) - np.eye(d))))
    if sum_resid > tol:
        failures["sum_to_identity"] = sum_resid

    weights = np.einsum("aii->a", elements).real
    min_weight = float(weights.min())
    if min_weight < -tol:
        failures["nonnegative_traces"] = min_weight

    G = _gram_of(elements)
    gvals = np.linalg.eigvalsh(G)
    if gvals[-1] <= 0 or gvals[0] <= 0:
        condition = np.inf
    else:
        condition = float(gvals[-1] / gvals[0])
    if not np.isfinite(condition) or condition > MAX_GRAM_CONDITION:
        failures["linear_independence"] = condition

    is_measure_basis = not failures

    eigs = np.linalg.eigvalsh(elements)  # (n, d), ascending per element
    min_eigenvalue = float(eigs[:, 0].min())
    is_mic = is_measure_basis and min_eigenvalue >= -tol

    offdiag = G - np.diag(np.diag(G))
    max_offdiag = float(np.max(np.abs(offdiag)))
    is_wigner = is_measure_basis and max_offdiag <= tol

    if is_mic and is_wigner:
        raise BasisValidationError(
            "classified as both MIC and Wigner basis; impossible for a "
            "measure basis, so the tolerance is inconsistent with the input"
        )

    is_unbiased = is_measure_basis and bool(
        np.max(np.abs(weights - 1.0 / d)) <= tol
    )
    rank_floor = RANK_EIG_RTOL * np.maximum(np.abs(eigs).max(axis=1), 1e-300)
    ranks = (np.abs(eigs) > rank_floor[:, None]).sum(axis=1)
    is_rank1 = is_measure_basis and bool(np.all(ranks == 1))

    return BasisClass(
        is_measure_basis=is_measure_basis,
        is_mic=is_mic,
        is_wigner=is_wigner,
        is_unbiased=is_unbiased,
        is_rank1=is_rank1,
        min_eigenvalue=min_eigenvalue,
        gram_condition=condition,
        failures=failures,
    )


def gram(basis: MeasureBasis) -> np.ndarray:
    """Gram matrix G_ij = tr(L_i L_j); symmetric positive semidefinite."""
    return _gram_of(basis.elements)


def bias(basis: MeasureBasis) -> np.ndarray:
    """Weight vector l_i = tr(L_i). Sums to d for any measure basis."""
    return basis.weights.copy()


def bias_matrix(basis: MeasureBasis) -> np.ndarray:
    """Diagonal bias matrix A = diag(l_1, ..., l_{d^2})."""
    return np.diag(basis.weights)


def _inv_gram(G: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(G)
    if vals[0] <= 0 or vals[-1] / vals[0] > MAX_GRAM_CONDITION:
        raise SingularOperatorError(
            f"Gram matrix numerically singular (condition "
            f"{np.inf if vals[0] <= 0 else vals[-1] / vals[0]:.3e})"
        )
    return (vecs / vals) @ vecs.T


def dual_basis(basis) -> np.ndarray:
    """Dual elements, tr(dual_i L_j) = delta_ij, stacked as (d^2, d, d).

    Accepts a MeasureBasis or any linearly independent Hermitian stack
    (the dual is plain frame theory and does not need the sum condition).
    The dual's Gram matrix is the inverse of the input Gram matrix, and
    expansion in the dual gives the reconstruction identity
    X = sum_i tr(X dual_i) L_i = sum_i tr(X L_i) dual_i.
    """
    if isinstance(basis, MeasureBasis):
        elements = basis.elements
    else:
        elements = np.stack([as_hermitian(E) for E in np.asarray(basis)])
    Ginv = _inv_gram(_gram_of(elements))
    return np.einsum("ij,jab->iab", Ginv, elements)


def frame_operator(basis: MeasureBasis) -> SuperOperator:
    """The map X -> sum_i tr(X L_i) L_i as a SuperOperator.

    Self-adjoint; shares its nonzero spectrum with the Gram matrix (for a
    basis the two are isospectral).
    """
    C = basis.coords
    return SuperOperator(C.T @ C, basis.dim)


def rescaled_frame_operator(basis: MeasureBasis,
                            weight_tol: float = 1e-12) -> SuperOperator:
    """Frame operator of the weight-rescaled elements L_i / sqrt(l_i):
    X -> sum_i (tr(X L_i) / l_i) L_i.

    Fixes the identity, is trace-preserving, and for a MIC acts as the
    entanglement-breaking MIC channel. Requires strictly positive weights.
    """
    w = basis.weights
    if np.min(w) <= weight_tol:
        raise SingularOperatorError(
            f"zero-weight element (min trace {np.min(w):.3e}); the rescaled "
            "frame operator divides by the weights"
        )
    C = basis.coords
    return SuperOperator(C.T @ (C / w[:, None]), basis.dim)


def _born_sqrt(G: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Square root of the Born matrix with all-positive eigenvalues:
    A^{1/2} (A^{1/2} G^{-1} A^{1/2})^{1/2} A^{-1/2}.

    The inner factor equals (A^{-1/2} G A^{-1/2})^{-1/2}, which needs only
    one spectral decomposition of the uninverted matrix; that is noticeably
    more accurate than inverting G first.
    """
    rw = np.sqrt(weights)
    sym = G / np.outer(rw, rw)
    cond = np.linalg.cond(sym)
    if not np.isfinite(cond) or cond > MAX_GRAM_CONDITION:
        raise SingularOperatorError(
            f"Born-matrix square root is singular (condition {cond:.3e}); "
            "basis too close to linear dependence"
        )
    inner_root = mat_func_psd(sym, "inv_sqrt")
    return inner_root * np.outer(rw, 1.0 / rw)


@dataclass
class BornMatrix:
    """Column-quasistochastic matrix Phi = A G^{-1} converting reference
    probabilities into the quasiprobabilities of the Born-rule analog of
    the law of total probability."""

    phi: np.ndarray
    weights: np.ndarray
    gram: np.ndarray

    @property
    def dim(self) -> int:
        return self.phi.shape[0]

    @cached_property
    def phi_sqrt(self) -> np.ndarray:
        """Principal square root of Phi (all eigenvalues positive); also
        column quasistochastic and fixes the weight vector."""
        return _born_sqrt(self.gram, self.weights)

    def column_sum_residual(self) -> float:
        return float(np.max(np.abs(self.phi.sum(axis=0) - 1.0)))

    def weight_eigvec_residual(self) -> float:
        return float(np.max(np.abs(self.phi @ self.weights - self.weights)))


def born_matrix(basis: MeasureBasis,
                weight_tol: float = 1e-12) -> BornMatrix:
    """Born matrix Phi = A G^{-1} of a measure basis with positive weights.

    Columns sum to one, the weight vector is a fixed point, and for a MIC
    at least one entry is strictly negative.
    """
    w = basis.weights
    if np.min(w) <= weight_tol:
        raise SingularOperatorError(
            f"zero-weight element (min trace {np.min(w):.3e}); the Born "
            "matrix divides by the weights"
        )
    G = gram(basis)
    phi = w[:, None] * _inv_gram(G)
    return BornMatrix(phi=phi, weights=w.copy(), gram=G)
