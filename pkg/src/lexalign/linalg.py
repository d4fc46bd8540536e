"""Dense linear-algebra kernels for orthogonal embedding-space mappings.

All functions are pure and operate on float64 arrays. The mapping convention
throughout the package is row-major: word vectors are matrix rows, a mapping
``w`` transforms a row ``x`` to ``w @ x`` (batched as ``rows @ w.T``).
"""
from __future__ import annotations

import numpy as np

DEFAULT_RETRACTION_BETA = 0.001


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity dot(u, v) / (|u||v|), clamped into [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.ndim != 1 or u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine of a zero vector is undefined")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def svd(
    m: np.ndarray, canonical_signs: bool = True
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``m = u @ diag(s) @ vt`` with singular values descending.

    With ``canonical_signs`` the sign ambiguity of singular-vector pairs is
    resolved by making the largest-magnitude entry of each left-singular
    column positive (compensated in ``vt``), so the factorization is
    deterministic when singular values are distinct.
    """
    m = np.asarray(m, dtype=np.float64)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    if canonical_signs:
        lead = np.abs(u).argmax(axis=0)
        flip = np.sign(u[lead, np.arange(u.shape[1])])
        flip[flip == 0] = 1.0
        u = u * flip
        vt = vt * flip[:, None]
    return u, s, vt


def procrustes_solve(x_anchors: np.ndarray, y_anchors: np.ndarray) -> np.ndarray:
    """Best orthogonal map of the anchor rows of x onto the rows of y.

    Returns the d x d orthogonal ``w`` minimizing ``||x @ w.T - y||_F``,
    i.e. ``w @ x_i ~ y_i`` for each anchor pair. Closed form: with
    ``u, s, vt = svd(y.T @ x)`` the minimizer is ``u @ vt``.
    """
    x = np.asarray(x_anchors, dtype=np.float64)
    y = np.asarray(y_anchors, dtype=np.float64)
    if x.ndim != 2 or x.shape != y.shape:
        raise ValueError(f"anchor shape mismatch: {x.shape} vs {y.shape}")
    if x.shape[0] < 1:
        raise ValueError("need at least one anchor pair")
    m = y.T @ x
    if not np.any(m):
        raise ValueError("degenerate anchors: zero cross-covariance")
    u, _, vt = svd(m)
    return u @ vt


def orthogonality_error(w: np.ndarray) -> float:
    """Frobenius norm of ``w @ w.T - I``; zero for exactly orthogonal w."""
    w = np.asarray(w, dtype=np.float64)
    d = w.shape[0]
    return float(np.linalg.norm(w @ w.T - np.eye(d)))


def orthogonal_retraction(
    w: np.ndarray, beta: float = DEFAULT_RETRACTION_BETA
) -> np.ndarray:
    """One step of the update ``w <- (1 + beta) w - beta (w w^T) w``.

    Pulls w back toward the orthogonal manifold; orthogonal inputs are fixed
    points. Requires 0 < beta < 1.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError("mapping must be a square matrix")
    return (1.0 + beta) * w - beta * (w @ w.T) @ w


def retraction_sweep(
    w: np.ndarray,
    beta: float = DEFAULT_RETRACTION_BETA,
    tol: float = 1e-6,
    max_steps: int = 50_000,
) -> np.ndarray:
    """Apply the retraction repeatedly until the orthogonality error <= tol."""
    w = np.asarray(w, dtype=np.float64)
    for _ in range(max_steps):
        if orthogonality_error(w) <= tol:
            break
        w = orthogonal_retraction(w, beta)
    return w


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a random orthogonal matrix (QR of a Gaussian, sign-fixed)."""
    g = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return q * d
