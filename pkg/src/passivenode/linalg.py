"""Small numerical linear-algebra helpers shared across modules.

All subspace computations return orthonormal bases (columns) and make rank
decisions by thresholding singular values, so downstream intersection and
fixpoint logic stays robust for the desk-scale problems (n <= 50) this
library targets.
"""

import os

import numpy as np

from .errors import NotSelfAdjoint, SingularResolvent

#: singular values below RCOND * sigma_max are treated as zero
RCOND = 1e-12

#: principal angles closer to zero than this count as a common direction
SUBSPACE_TOL = 1e-8


def base_tol():
    """Base relative tolerance; PASSIVE_NODE_TOL overrides the default."""
    return float(os.environ.get("PASSIVE_NODE_TOL", "1e-9"))


def psd_tol(form):
    """Scale-invariant PSD slack: a form passes if lambda_min >= -psd_tol."""
    return base_tol() * (1.0 + np.linalg.norm(form, 2))


def hermitize(M):
    """Self-adjoint part (M + M*)/2."""
    M = np.asarray(M, dtype=complex)
    return 0.5 * (M + M.conj().T)


def assert_hermitian(M, what="matrix"):
    M = np.asarray(M, dtype=complex)
    if np.linalg.norm(M - M.conj().T, 2) > base_tol() * (1.0 + np.linalg.norm(M, 2)):
        raise NotSelfAdjoint(f"{what} is not self-adjoint to tolerance")
    return hermitize(M)


def min_eig_herm(M):
    """Smallest eigenvalue of a self-adjoint matrix."""
    if M.size == 0:
        return 0.0
    return float(np.linalg.eigvalsh(hermitize(M))[0])


def min_eig_with_vector(M):
    """Smallest eigenvalue and a corresponding unit eigenvector."""
    vals, vecs = np.linalg.eigh(hermitize(M))
    return float(vals[0]), vecs[:, 0]


def solve_resolvent(A, s, rhs):
    """Solve (sI - A) X = rhs, raising SingularResolvent near the spectrum."""
    n = A.shape[0]
    M = s * np.eye(n) - A
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[-1] <= RCOND * max(1.0, sv[0]):
        raise SingularResolvent(f"s = {s} is in the spectrum of A to working precision")
    return np.linalg.solve(M, rhs)


def in_resolvent_set(A, s):
    """True when sI - A is invertible to working precision."""
    M = s * np.eye(A.shape[0]) - A
    sv = np.linalg.svd(M, compute_uv=False)
    return sv[-1] > RCOND * max(1.0, sv[0])


def is_invertible(M, rtol=None):
    if M.size == 0:
        return True
    sv = np.linalg.svd(M, compute_uv=False)
    return sv[-1] > (rtol or base_tol()) * max(1.0, sv[0])


def null_basis(M, rtol=SUBSPACE_TOL):
    """Orthonormal basis of the null space of M (columns; may be empty)."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.shape[0] == 0:
        return np.eye(M.shape[1], dtype=complex)
    _, sv, vh = np.linalg.svd(M)
    cutoff = rtol * max(1.0, sv[0] if sv.size else 0.0)
    rank = int(np.sum(sv > cutoff))
    return vh[rank:].conj().T


def orthonormalize(V, rtol=SUBSPACE_TOL):
    """Orthonormal basis of the column span of V."""
    V = np.atleast_2d(np.asarray(V, dtype=complex))
    if V.shape[1] == 0:
        return V
    q, sv, _ = np.linalg.svd(V, full_matrices=False)
    rank = int(np.sum(sv > rtol * max(1.0, sv[0])))
    return q[:, :rank]


def subspace_intersection(Q1, Q2, tol=SUBSPACE_TOL):
    """Orthonormal basis of range(Q1) ∩ range(Q2) via principal angles."""
    if Q1.shape[1] == 0 or Q2.shape[1] == 0:
        return np.zeros((Q1.shape[0], 0), dtype=complex)
    u, sv, _ = np.linalg.svd(Q1.conj().T @ Q2)
    k = int(np.sum(sv >= 1.0 - tol))
    return orthonormalize(Q1 @ u[:, :k]) if k else np.zeros((Q1.shape[0], 0), dtype=complex)


def largest_invariant_in(Q, ops, tol=SUBSPACE_TOL):
    """Largest subspace of range(Q) mapped into itself by every op in ops.

    Fixpoint iteration V <- {x in V : op x in V for all ops}; the dimension
    strictly decreases until it stabilizes, so at most n steps run.
    """
    Q = orthonormalize(Q, tol)
    n = Q.shape[0]
    for _ in range(n + 1):
        if Q.shape[1] == 0:
            return Q
        proj_out = np.eye(n) - Q @ Q.conj().T
        constraints = np.vstack([proj_out @ (op @ Q) for op in ops])
        coeff = null_basis(constraints, tol)
        if coeff.shape[1] == Q.shape[1]:
            return Q
        Q = orthonormalize(Q @ coeff, tol)
    return Q


def spectral_abscissa(A):
    if A.size == 0:
        return -np.inf
    return float(np.max(np.linalg.eigvals(A).real))


def cholesky_weight(W):
    """Lower factor L with W = L L*."""
    return np.linalg.cholesky(hermitize(W))
