import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_unitary(d, rng):
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    Q, R = np.linalg.qr(Z)
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases.conj()


def random_hermitian(d, rng):
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (Z + Z.conj().T) / 2


def random_density(d, rng):
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = Z @ Z.conj().T
    return rho / np.trace(rho).real


def random_pure_state(d, rng):
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_povm(d, n, rng):
    """n-outcome POVM from whitened Wishart effects."""
    W = rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))
    ops = np.einsum("nij,nkj->nik", W, W.conj())
    total = ops.sum(axis=0)
    vals, vecs = np.linalg.eigh(total)
    root_inv = (vecs / np.sqrt(vals)) @ vecs.conj().T
    return np.einsum("ij,njk,kl->nil", root_inv, ops, root_inv)


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
