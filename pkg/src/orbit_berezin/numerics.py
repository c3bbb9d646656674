"""Dense numerical primitives: Gauss-Legendre quadrature, Legendre polynomials
and small eigensolvers.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import MAX_GAUSS_NODES, MAX_GENERAL_EIG_DIM, TOL


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of an interpolatory rule on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f):
        """Apply the rule to a vectorised callable ``f``."""
        return float(np.dot(self.weights, f(self.nodes)))


def _legendre_pair(n, x):
    """Return ``(P_n(x), P_{n-1}(x))`` by the three-term recurrence."""
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev, np.zeros_like(x)
    p = x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    return p, p_prev


def gauss_legendre(n: int) -> QuadratureRule:
    """Gauss-Legendre rule with ``n`` nodes.

    Roots of ``P_n`` are polished by Newton's method starting from the
    Chebyshev-like guesses ``cos(pi (i - 1/4) / (n + 1/2))``. Rules are
    cached; the returned arrays are read-only.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"number of nodes must be a positive integer, got {n!r}")
    if n > MAX_GAUSS_NODES:
        raise ValueError(f"at most {MAX_GAUSS_NODES} nodes supported, got {n}")
    return _gauss_legendre(int(n))


@lru_cache(maxsize=64)
def _gauss_legendre(n: int) -> QuadratureRule:
    if n == 1:
        x, w = np.array([0.0]), np.array([2.0])
        x.setflags(write=False)
        w.setflags(write=False)
        return QuadratureRule(x, w)

    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p, p_prev = _legendre_pair(n, x)
        dp = n * (x * p - p_prev) / (x * x - 1.0)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p, p_prev = _legendre_pair(n, x)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    # Enforce the reflection symmetry of the exact rule.
    order = np.argsort(x)
    x, w = x[order], w[order]
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    if n % 2:
        x[n // 2] = 0.0
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(x, w)


def legendre_p(k: int, t):
    """Legendre polynomial ``P_k(t)`` for scalar or array ``t`` in [-1, 1]."""
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    arr = np.asarray(t, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise ValueError("argument outside [-1, 1]")
    p, _ = _legendre_pair(int(k), np.atleast_1d(arr).astype(float))
    if arr.ndim == 0:
        return float(p[0])
    return p.reshape(arr.shape)


def _as_square(M):
    A = np.array(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {A.shape}")
    return A


def symmetric_eigenvalues(M, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, in descending order.

    Cyclic Jacobi rotations are applied until the off-diagonal mass is
    negligible relative to the Frobenius norm.
    """
    A = _as_square(M)
    scale = max(np.max(np.abs(A)), 1.0)
    if np.max(np.abs(A.imag)) > TOL.hermitian * scale:
        raise ValueError("matrix is not real")
    A = A.real.copy()
    if np.max(np.abs(A - A.T)) > TOL.hermitian * scale:
        raise ValueError("matrix is not symmetric")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    norm = np.linalg.norm(A)
    if norm == 0.0:
        return np.zeros(n)

    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(A, -1) ** 2))
        if off <= 1e-17 * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(A))[::-1]


def _hessenberg(A):
    H = A.copy()
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, :])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def _wilkinson_shift(a, b, c, d):
    # eigenvalue of [[a, b], [c, d]] closest to d
    tr = a + d
    det = a * d - b * c
    disc = np.sqrt(tr * tr / 4.0 - det)
    l1 = tr / 2.0 + disc
    l2 = tr / 2.0 - disc
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


def general_eigenvalues(M) -> np.ndarray:
    """Eigenvalues (with algebraic multiplicity) of a small complex matrix.

    Householder reduction to Hessenberg form followed by single-shift QR
    sweeps with Wilkinson shifts and deflation. Returned in no particular
    order.
    """
    A = _as_square(M)
    n = A.shape[0]
    if n > MAX_GENERAL_EIG_DIM:
        raise ValueError(f"dimension {n} exceeds the cap {MAX_GENERAL_EIG_DIM}")
    H = _hessenberg(A)
    eps = np.finfo(float).eps
    norm = max(np.linalg.norm(H), np.finfo(float).tiny)
    eigs = []
    hi = n - 1
    its = 0
    while hi >= 0:
        if hi == 0:
            eigs.append(H[0, 0])
            break
        lo = hi
        while lo > 0:
            sub = abs(H[lo, lo - 1])
            if sub <= eps * (abs(H[lo, lo]) + abs(H[lo - 1, lo - 1])) or sub <= eps * norm * 1e-3:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs.append(H[hi, hi])
            hi -= 1
            its = 0
            continue
        its += 1
        if its > 60 * n:
            raise RuntimeError("QR iteration did not converge")
        if its % 11 == 0:
            shift = H[hi, hi] + abs(H[hi, hi - 1])
        else:
            shift = _wilkinson_shift(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        B = H[lo:hi + 1, lo:hi + 1] - shift * np.eye(hi - lo + 1)
        rotations = []
        for k in range(B.shape[0] - 1):
            a, b = B[k, k], B[k + 1, k]
            r = np.hypot(abs(a), abs(b))
            if r == 0.0:
                G = np.eye(2, dtype=complex)
            else:
                G = np.array([[np.conj(a), np.conj(b)], [-b, a]]) / r
            B[k:k + 2, k:] = G @ B[k:k + 2, k:]
            rotations.append(G)
        for k, G in enumerate(rotations):
            B[:k + 2, k:k + 2] = B[:k + 2, k:k + 2] @ G.conj().T
        H[lo:hi + 1, lo:hi + 1] = B + shift * np.eye(hi - lo + 1)
    return np.array(eigs, dtype=complex)
