"""Dense complex matrix kernel.

All matrices are 2-d complex numpy arrays in row-major layout. Columns of
isometries are basis vectors of morphism spaces; everything downstream of this
module manipulates only such arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

Array = np.ndarray


class NotHermitianError(ValueError):
    pass


class SingularToToleranceError(ValueError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Combined absolute/relative comparison contract.

    x matches y iff ||x - y|| <= absolute + relative * max(||x||, ||y||),
    with the max-entry norm.
    """

    absolute: float = 1e-9
    relative: float = 1e-9

    def __post_init__(self):
        if not (np.isfinite(self.absolute) and np.isfinite(self.relative)):
            raise ValueError("tolerances must be finite")
        if self.absolute < 0 or self.relative < 0:
            raise ValueError("tolerances must be >= 0")

    def bound(self, x: Array | float, y: Array | float = 0.0) -> float:
        nx = np.max(np.abs(x)) if np.size(x) else 0.0
        ny = np.max(np.abs(y)) if np.size(y) else 0.0
        return self.absolute + self.relative * max(nx, ny)

    def close(self, x, y) -> bool:
        return residual(x, y) <= self.bound(x, y)


DEFAULT_TOL = Tolerance()


def residual(x, y) -> float:
    """Max-entry norm of x - y (scalars and arrays alike)."""
    d = np.asarray(x) - np.asarray(y)
    return float(np.max(np.abs(d))) if d.size else 0.0


def cmat(data) -> Array:
    return np.asarray(data, dtype=complex)


def dagger(m: Array) -> Array:
    return m.conj().T


def kron(a: Array, b: Array) -> Array:
    return np.kron(cmat(a), cmat(b))


def kronn(*ms: Array) -> Array:
    return reduce(np.kron, (cmat(m) for m in ms))


def eye(n: int) -> Array:
    return np.eye(n, dtype=complex)


def flip(d1: int, d2: int) -> Array:
    """Permutation matrix sending x (x) y -> y (x) x for x in C^d1, y in C^d2."""
    if d1 < 1 or d2 < 1:
        raise ValueError("flip dimensions must be >= 1")
    f = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    for a in range(d1):
        for b in range(d2):
            f[b * d1 + a, a * d2 + b] = 1.0
    return f


def orthonormalize(vectors: list[Array], tol: Tolerance = DEFAULT_TOL) -> list[Array]:
    """Orthonormal basis of the span, via modified Gram-Schmidt.

    Dependent vectors are dropped; one re-orthogonalization pass keeps the
    result stable. Rank cutoff is tol.absolute * sqrt(dim).
    """
    if not vectors:
        return []
    dim = vectors[0].shape[0]
    cutoff = max(tol.absolute * np.sqrt(dim), 1e-300)
    scale = max((float(np.linalg.norm(v)) for v in vectors), default=1.0)
    if scale == 0.0:
        return []
    out: list[Array] = []
    for v in vectors:
        w = cmat(v).astype(complex).reshape(dim)
        for _ in range(2):  # MGS + re-orthogonalization
            for u in out:
                w = w - (u.conj() @ w) * u
        n = np.linalg.norm(w)
        if n > cutoff * scale:
            out.append(w / n)
    return out


def solve_intertwiners(
    blocks_a: dict, blocks_b: dict, tol: Tolerance = DEFAULT_TOL
) -> list[Array]:
    """Hilbert-Schmidt orthonormal basis of {T : T A(i) = B(i) T for all i}.

    blocks_a[i] acts on the source space, blocks_b[i] on the target; the
    nullspace of the stacked Sylvester system is found by SVD, singular
    values below the tolerance cutoff spanning the solution space.
    """
    keys = sorted(blocks_a, key=str)
    if set(keys) != set(blocks_b):
        raise ValueError("intertwiner systems need identical label sets")
    if not keys:
        raise ValueError("empty generator family")
    dv = cmat(blocks_a[keys[0]]).shape[0]
    dw = cmat(blocks_b[keys[0]]).shape[0]
    rows = []
    for k in keys:
        a = cmat(blocks_a[k])
        b = cmat(blocks_b[k])
        if a.shape != (dv, dv) or b.shape != (dw, dw):
            raise ValueError(f"inconsistent shapes for label {k!r}")
        # vec(TA - BT) with column-major vec: (A^T (x) I) - (I (x) B)
        rows.append(np.kron(a.T, eye(dw)) - np.kron(eye(dv), b))
    system = np.vstack(rows)
    _, s, vh = np.linalg.svd(system)
    smax = s[0] if len(s) else 0.0
    cutoff = tol.absolute + tol.relative * smax
    null = [vh[i].conj() for i in range(len(vh)) if i >= len(s) or s[i] <= cutoff]
    return [v.reshape(dv, dw).T.copy() for v in null]  # undo column-major vec


_SPECTRAL_FNS = {
    "sqrt": np.sqrt,
    "inv_sqrt": lambda x: 1.0 / np.sqrt(x),
    "inverse": lambda x: 1.0 / x,
    "abs": np.abs,
}


def hermitian_calc(m: Array, fn: str, tol: Tolerance = DEFAULT_TOL) -> Array:
    """Apply a spectral function (sqrt, inv_sqrt, inverse, abs) to a Hermitian matrix."""
    m = cmat(m)
    if fn not in _SPECTRAL_FNS:
        raise ValueError(f"unknown spectral function {fn!r}")
    if residual(m, dagger(m)) > tol.bound(m):
        raise NotHermitianError("matrix is not Hermitian to tolerance")
    h = (m + dagger(m)) / 2.0
    evals, evecs = np.linalg.eigh(h)
    if fn in ("inv_sqrt", "inverse"):
        if np.min(np.abs(evals)) <= tol.bound(evals):
            raise SingularToToleranceError("spectrum not bounded away from 0")
    vals = _SPECTRAL_FNS[fn](evals.astype(complex) if fn == "sqrt" else evals)
    return (evecs * vals) @ dagger(evecs)
