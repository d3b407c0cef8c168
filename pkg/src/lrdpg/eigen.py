"""Dense symmetric eigensolver used by every spectral method in the package.

The pipeline is the classical one for dense symmetric matrices:

1. Householder tridiagonalization (vectorized rank-2 updates, reflectors
   kept for the back-transformation),
2. Sturm-count bisection for the requested eigenvalue indices,
3. inverse iteration on the tridiagonal matrix, with Gram-Schmidt
   orthogonalization inside clusters of close eigenvalues,
4. back-transformation of the tridiagonal eigenvectors through the
   stored reflectors.

Everything is plain float64 numpy; no LAPACK eigensolver is called, so a
given input yields bitwise-identical output on every run. Only the d
requested eigenpairs are ever formed, which keeps the n ~ 1000 bench
workloads at O(n^3) for the reduction plus O(n^2 d) for the vectors.

Eigenvalue ties are resolved deterministically: bisection indexes
eigenvalues by rank, inverse iteration seeds each vector from a
counter-based generator keyed by its global index, and columns belonging
to exactly-equal eigenvalues are ordered lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["EigenSystem", "eigh_full", "top_eigenpairs", "bottom_eigenpairs_skip"]

_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues sorted descending with matching orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.values.shape[0]


def _check_symmetric(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if float(np.abs(m - m.T).max(initial=0.0)) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    return 0.5 * (m + m.T)


def _tridiagonalize(a: np.ndarray, block: int = 48):
    """Reduce symmetric `a` (mutated in place) to tridiagonal (d, e).

    Blocked Householder reduction: within a panel the trailing matrix is
    left stale and columns are corrected against the accumulated rank-2
    factors, then the trailing matrix receives one rank-2b update per
    panel. Returns (d, e, reflectors); reflectors[k] is the unit
    Householder vector acting on coordinates k+1..n-1, or None for a
    trivial step.
    """
    n = a.shape[0]
    d = np.empty(n)
    e = np.zeros(max(n - 1, 0))
    reflectors: list[np.ndarray | None] = []
    k0 = 0
    while k0 < n - 2:
        bw = min(block, n - 2 - k0)
        bu = np.zeros((n, bw))
        bv = np.zeros((n, bw))
        for jj in range(bw):
            j = k0 + jj
            col = a[j + 1:, j].copy()
            if jj > 0:
                col -= bu[j + 1:, :jj] @ bv[j, :jj]
                col -= bv[j + 1:, :jj] @ bu[j, :jj]
            nrm = float(np.linalg.norm(col))
            if nrm == 0.0:
                e[j] = 0.0
                reflectors.append(None)
                continue
            alpha = -nrm if col[0] >= 0 else nrm
            col[0] -= alpha
            u = col / np.linalg.norm(col)
            w = a[j + 1:, j + 1:] @ u
            if jj > 0:
                w -= bu[j + 1:, :jj] @ (bv[j + 1:, :jj].T @ u)
                w -= bv[j + 1:, :jj] @ (bu[j + 1:, :jj].T @ u)
            q = 2.0 * w - (2.0 * float(u @ w)) * u
            e[j] = alpha
            bu[j + 1:, jj] = u
            bv[j + 1:, jj] = q
            reflectors.append(u)
        rest = k0 + bw
        d[k0:rest] = np.diag(a)[k0:rest] - 2.0 * np.einsum("ij,ij->i", bu[k0:rest], bv[k0:rest])
        a[rest:, rest:] -= bu[rest:] @ bv[rest:].T + bv[rest:] @ bu[rest:].T
        k0 = rest
    d[max(n - 2, 0):] = np.diag(a)[max(n - 2, 0):]
    if n >= 2:
        e[n - 2] = a[n - 1, n - 2]
    return d, e, reflectors


def _sturm_counts(d, e2, shifts, pivmin):
    """Number of eigenvalues of tridiag(d, e) below each shift."""
    q = d[0] - shifts
    count = (q < 0).astype(np.int64)
    for i in range(1, d.shape[0]):
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        q = d[i] - shifts - e2[i - 1] / q
        count += q < 0
    return count


def _bisect_eigenvalues(d, e, indices, tnorm, pivmin):
    """Eigenvalues of tridiag(d, e) at the given ascending rank indices."""
    n = d.shape[0]
    if n == 1:
        return d[np.asarray(indices, dtype=np.int64)].astype(np.float64)
    e2 = e * e
    radius = np.zeros(n)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo_bound = float(np.min(d - radius)) - 2.0 * _EPS * tnorm - pivmin
    hi_bound = float(np.max(d + radius)) + 2.0 * _EPS * tnorm + pivmin
    want = np.asarray(indices, dtype=np.int64) + 1
    lo = np.full(want.shape, lo_bound)
    hi = np.full(want.shape, hi_bound)
    for _ in range(110):
        mid = 0.5 * (lo + hi)
        ge = _sturm_counts(d, e2, mid, pivmin) >= want
        hi = np.where(ge, mid, hi)
        lo = np.where(ge, lo, mid)
        tol = 2.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi)) + 2.0 * pivmin
        if np.all(hi - lo <= tol):
            break
    vals = 0.5 * (lo + hi)
    return np.maximum.accumulate(vals)


def _solve_shifted(d, e, lam, rhs, clamp):
    """Solve (tridiag(d, e) - lam*I) y = rhs by LU with partial pivoting."""
    n = d.shape[0]
    diag = d - lam
    sup1 = np.zeros(n)
    sup1[: n - 1] = e
    sup2 = np.zeros(n)
    y = rhs.copy()
    for i in range(n - 1):
        sub = e[i]
        if abs(sub) > abs(diag[i]):
            old0, old1, old2 = diag[i], sup1[i], sup2[i]
            piv = sub if abs(sub) >= clamp else (clamp if sub >= 0 else -clamp)
            diag[i], sup1[i], sup2[i] = piv, diag[i + 1], sup1[i + 1]
            y[i], y[i + 1] = y[i + 1], y[i]
            m = old0 / piv
            diag[i + 1] = old1 - m * sup1[i]
            sup1[i + 1] = old2 - m * sup2[i]
        else:
            piv = diag[i]
            if abs(piv) < clamp:
                piv = clamp if piv >= 0 else -clamp
                diag[i] = piv
            m = sub / piv
            diag[i + 1] -= m * sup1[i]
        y[i + 1] -= m * y[i]
    if abs(diag[n - 1]) < clamp:
        diag[n - 1] = clamp if diag[n - 1] >= 0 else -clamp
    y[n - 1] /= diag[n - 1]
    if n >= 2:
        y[n - 2] = (y[n - 2] - sup1[n - 2] * y[n - 1]) / diag[n - 2]
    for i in range(n - 3, -1, -1):
        y[i] = (y[i] - sup1[i] * y[i + 1] - sup2[i] * y[i + 2]) / diag[i]
        if abs(y[i]) > 1e250:
            y[i:] *= 1e-100
    return y


def _seeded_rng(index: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=0x1BD7A11, spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(seq))


def _inverse_iteration(d, e, lam, prev, index, tnorm, clamp):
    """One tridiagonal eigenvector for eigenvalue `lam`, orthogonal to `prev`."""
    n = d.shape[0]
    rng = _seeded_rng(index)
    b = rng.standard_normal(n)
    b /= np.linalg.norm(b)
    basis = np.array(prev) if prev else None
    accept = 1.0 / max(np.sqrt(n) * 100.0 * _EPS * tnorm, np.finfo(np.float64).tiny)
    for attempt in range(8):
        y = _solve_shifted(d, e, lam, b, clamp)
        if basis is not None:
            y -= basis.T @ (basis @ y)
        ny = float(np.linalg.norm(y))
        if not np.isfinite(ny) or ny == 0.0:
            b = rng.standard_normal(n)
            b /= np.linalg.norm(b)
            continue
        b = y / ny
        if attempt >= 1 and ny >= accept:
            break
    return b


def _select_eigenpairs(m: np.ndarray, indices: np.ndarray):
    """Eigenpairs of symmetric `m` at ascending rank indices (0 = smallest)."""
    n = m.shape[0]
    if n == 1:
        return m[0, 0] * np.ones(indices.shape[0]), np.ones((1, indices.shape[0]))
    d, e, reflectors = _tridiagonalize(m.copy())
    tnorm = float(np.abs(d).max(initial=0.0) + 2.0 * np.abs(e).max(initial=0.0))
    if tnorm == 0.0:
        vecs = np.zeros((n, indices.shape[0]))
        vecs[indices, np.arange(indices.shape[0])] = 1.0
        return np.zeros(indices.shape[0]), vecs
    pivmin = 1e-300 * max(1.0, float((e * e).max(initial=0.0)))
    vals = _bisect_eigenvalues(d, e, indices, tnorm, pivmin)
    group_tol = 1e-5 * tnorm
    pert = 10.0 * n * _EPS * tnorm
    clamp = max(1e-140 * tnorm, np.finfo(np.float64).tiny)
    vecs = np.empty((n, indices.shape[0]))
    group: list[np.ndarray] = []
    for j in range(indices.shape[0]):
        if j > 0 and vals[j] - vals[j - 1] <= group_tol:
            lam = vals[j] + len(group) * pert
        else:
            group = []
            lam = vals[j]
        v = _inverse_iteration(d, e, lam, group, int(indices[j]), tnorm, clamp)
        group.append(v)
        vecs[:, j] = v
    for k in range(len(reflectors) - 1, -1, -1):
        u = reflectors[k]
        if u is None:
            continue
        sub = vecs[k + 1:, :]
        sub -= np.outer(u, 2.0 * (u @ sub))
    norms = np.linalg.norm(vecs, axis=0)
    vecs /= norms
    return vals, vecs


def _fix_signs(vectors: np.ndarray) -> None:
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        if col[np.argmax(np.abs(col))] < 0:
            col *= -1.0


def _order_ties(values: np.ndarray, vectors: np.ndarray):
    """Within runs of exactly equal eigenvalues, sort columns lexicographically."""
    j = 0
    while j < values.shape[0]:
        k = j + 1
        while k < values.shape[0] and values[k] == values[j]:
            k += 1
        if k - j > 1:
            order = sorted(range(j, k), key=lambda c: tuple(vectors[:, c]))
            vectors[:, j:k] = vectors[:, order]
        j = k
    return values, vectors


def _finalize(values: np.ndarray, vectors: np.ndarray) -> EigenSystem:
    # descending presentation, deterministic signs, deterministic tie order
    values = values[::-1].copy()
    vectors = vectors[:, ::-1].copy()
    _fix_signs(vectors)
    _order_ties(values, vectors)
    values.setflags(write=False)
    vectors.setflags(write=False)
    return EigenSystem(values=values, vectors=vectors)


def top_eigenpairs(m: np.ndarray, d: int) -> EigenSystem:
    """The d eigenpairs with largest (signed) eigenvalues, sorted descending."""
    m = _check_symmetric(m)
    n = m.shape[0]
    if not 1 <= d <= n:
        raise ValueError(f"d must be in [1, {n}], got {d}")
    indices = np.arange(n - d, n, dtype=np.int64)
    vals, vecs = _select_eigenpairs(m, indices)
    return _finalize(vals, vecs)


def bottom_eigenpairs_skip(m: np.ndarray, d: int, skip: int) -> EigenSystem:
    """Skip the `skip` smallest eigenpairs, return the next d (presented descending)."""
    m = _check_symmetric(m)
    n = m.shape[0]
    if d < 1 or skip < 0 or skip + d > n:
        raise ValueError(f"need skip + d <= {n}, got skip={skip}, d={d}")
    indices = np.arange(skip, skip + d, dtype=np.int64)
    vals, vecs = _select_eigenpairs(m, indices)
    return _finalize(vals, vecs)


def eigh_full(m: np.ndarray) -> EigenSystem:
    """All eigenpairs, sorted descending."""
    return top_eigenpairs(m, np.asarray(m).shape[0])
