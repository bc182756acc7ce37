"""R-matrices from braidings.

A braiding on the category induces a unitary R-matrix in M(A (x) A); this
module performs the translation in both directions and verifies the
quasitriangularity identities, the Yang-Baxter equation, and the antipode
compatibilities, blockwise on the loaded pairs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aqg import Aqg, delta_block
from .linalg import DEFAULT_TOL, Array, Tolerance, cmat, dagger, eye, flip, kron, residual
from .report import Report


class MissingBraiding(KeyError):
    def __init__(self, i, j):
        super().__init__(f"no braiding block for ({i!r},{j!r})")
        self.pair = (i, j)


@dataclass
class RMatrix:
    """Blockwise element of M(A (x) A): blocks[(i,j)] in B(H_i (x) H_j)."""

    blocks: dict[tuple[str, str], Array]

    def block(self, i: str, j: str) -> Array:
        if (i, j) not in self.blocks:
            raise MissingBraiding(i, j)
        return self.blocks[(i, j)]

    def inverse(self) -> "RMatrix":
        return RMatrix({p: np.linalg.inv(m) for p, m in self.blocks.items()})

    def sigma(self, q: Aqg) -> "RMatrix":
        """The flipped R-matrix sigma(R)_{ij} = flip R_{ji} flip."""
        out = {}
        for (i, j), _ in self.blocks.items():
            di, dj = q.d(i), q.d(j)
            out[(i, j)] = flip(dj, di) @ self.blocks[(j, i)] @ flip(di, dj)
        return RMatrix(out)


def braiding_to_r(q: Aqg) -> RMatrix:
    """R_{ij} = flip o c_{ij}, per loaded braiding block."""
    b = q.bundle
    blocks = {}
    for (i, j), c in b.braiding.items():
        blocks[(i, j)] = flip(q.d(j), q.d(i)) @ cmat(c)
    if not blocks:
        raise MissingBraiding("*", "*")
    return RMatrix(blocks)


def r_to_braiding_blocks(q: Aqg, R: RMatrix) -> dict[tuple[str, str], Array]:
    """Recover the braiding c_{ij} = flip o R_{ij} on irreducibles."""
    return {
        (i, j): flip(q.d(i), q.d(j)) @ m for (i, j), m in R.blocks.items()
    }


def r_to_braiding(q: Aqg, R: RMatrix, pi, pi2,
                  tol: Tolerance = DEFAULT_TOL) -> Array:
    """The braiding morphism flip o (pi (x) pi2)(R) between tensor-product
    representations, verified to be an intertwiner pi x pi2 -> pi2 x pi."""
    from .rep import hom_reps, tensor_rep

    n, m = pi.space_dim, pi2.space_dim
    act = np.zeros((n * m, n * m), dtype=complex)
    for i, s in pi.decomp.parts:
        for j, t in pi2.decomp.parts:
            st = kron(s, t)
            act += st @ R.block(i, j) @ dagger(st)
    c = flip(n, m) @ act
    basis = hom_reps(q, tensor_rep(q, pi, pi2), tensor_rep(q, pi2, pi), tol)
    proj = sum((np.vdot(h, c) * h for h in basis),
               np.zeros_like(c))
    res = residual(c, proj)
    if res > tol.bound(c) * 1000:
        raise ValueError(
            f"induced braiding is not an intertwiner (residual {res:.3e})"
        )
    return c


def _r13_front(q: Aqg, R: RMatrix, i, j, m) -> Array:
    di, dj, dm = q.d(i), q.d(j), q.d(m)
    x = R.block(i, m).reshape(di, dm, di, dm)
    return np.einsum("axcy,bd->abxcdy", x, eye(dj)).reshape(
        di * dj * dm, di * dj * dm
    )


def _r23_front(q: Aqg, R: RMatrix, i, j, m) -> Array:
    di, dj, dm = q.d(i), q.d(j), q.d(m)
    x = R.block(j, m).reshape(dj, dm, dj, dm)
    return np.einsum("ac,bxdy->abxcdy", eye(di), x).reshape(
        di * dj * dm, di * dj * dm
    )


def _r12_back(q: Aqg, R: RMatrix, m, i, j) -> Array:
    dm, di, dj = q.d(m), q.d(i), q.d(j)
    x = R.block(m, i).reshape(dm, di, dm, di)
    return np.einsum("xayc,bd->xabycd", x, eye(dj)).reshape(
        dm * di * dj, dm * di * dj
    )


def _r13_back(q: Aqg, R: RMatrix, m, i, j) -> Array:
    dm, di, dj = q.d(m), q.d(i), q.d(j)
    x = R.block(m, j).reshape(dm, dj, dm, dj)
    return np.einsum("xbyd,ac->xabycd", x, eye(di)).reshape(
        dm * di * dj, dm * di * dj
    )


def _apply_s_leg1(q: Aqg, R: RMatrix, i: str, j: str) -> Array:
    """((S (x) iota)R) at block (i,j), from the closed-form antipode."""
    ib = q.bundle.dual[i]
    rm, rbm = q._rmat(i), q._rbarmat(i)
    x = R.block(ib, j).reshape(q.d(ib), q.d(j), q.d(ib), q.d(j))
    out = np.einsum("ud,bw,bxdy->uxwy", rbm, rm.conj(), x, optimize=True)
    return out.reshape(q.d(i) * q.d(j), q.d(i) * q.d(j))


def _apply_s_leg2(q: Aqg, X: Array, i: str, j: str) -> Array:
    """(iota (x) S) applied to a block living on (i, dual(j))."""
    rm, rbm = q._rmat(j), q._rbarmat(j)
    jb = q.bundle.dual[j]
    x = X.reshape(q.d(i), q.d(jb), q.d(i), q.d(jb))
    out = np.einsum("ud,bw,xbyd->xuyw", rbm, rm.conj(), x, optimize=True)
    return out.reshape(q.d(i) * q.d(j), q.d(i) * q.d(j))


def verify_quasitriangular(
    q: Aqg,
    R: RMatrix,
    tol: Tolerance = DEFAULT_TOL,
    n_samples: int = 8,
    seed: int = 42,
) -> Report:
    """Quasitriangularity, Yang-Baxter, counit/antipode compatibility, and
    unitarity for an R-matrix, blockwise over the loaded pairs."""
    rep = Report("quasitriangular")
    b = q.bundle
    labels = q.labels
    pairs = sorted(R.blocks)
    rng = np.random.default_rng(seed)

    worst = 0.0
    for (i, j), m in R.blocks.items():
        worst = max(worst, residual(dagger(m) @ m, eye(m.shape[0])),
                    residual(m @ dagger(m), eye(m.shape[0])))
    rep.add("unitary", "all blocks", worst, worst <= tol.bound(1.0) * 100)

    worst = 0.0
    seen = False
    for i in labels:
        for j in labels:
            if not b.complete(i, j):
                continue
            for m in labels:
                try:
                    rhs = _r13_front(q, R, i, j, m) @ _r23_front(q, R, i, j, m)
                except MissingBraiding:
                    continue
                dim = q.d(i) * q.d(j) * q.d(m)
                lhs = np.zeros((dim, dim), dtype=complex)
                ok = True
                for k, _ in b.support(i, j):
                    if (k, m) not in R.blocks:
                        ok = False
                        break
                    rk = R.block(k, m).reshape(q.d(k), q.d(m), q.d(k), q.d(m))
                    for v in b.isometries(i, j, k):
                        w = np.einsum("pk,kxly,ql->pxqy", v, rk, v.conj(),
                                      optimize=True)
                        lhs += w.reshape(dim, dim)
                if not ok:
                    continue
                seen = True
                worst = max(worst, residual(lhs, rhs))
    rep.add("comult-leg1", "(Delta x iota)R = R13 R23", worst,
            seen and worst <= tol.bound(1.0) * 100)

    worst = 0.0
    seen = False
    for m in labels:
        for i in labels:
            for j in labels:
                if not b.complete(i, j):
                    continue
                try:
                    rhs = _r13_back(q, R, m, i, j) @ _r12_back(q, R, m, i, j)
                except MissingBraiding:
                    continue
                dim = q.d(m) * q.d(i) * q.d(j)
                lhs = np.zeros((dim, dim), dtype=complex)
                ok = True
                for k, _ in b.support(i, j):
                    if (m, k) not in R.blocks:
                        ok = False
                        break
                    rk = R.block(m, k).reshape(q.d(m), q.d(k), q.d(m), q.d(k))
                    for v in b.isometries(i, j, k):
                        vv = v.reshape(q.d(i), q.d(j), q.d(k))
                        w = np.einsum("abk,xkyl,cdl->xabycd", vv, rk,
                                      vv.conj(), optimize=True)
                        lhs += w.reshape(dim, dim)
                if not ok:
                    continue
                seen = True
                worst = max(worst, residual(lhs, rhs))
    rep.add("comult-leg2", "(iota x Delta)R = R13 R12", worst,
            seen and worst <= tol.bound(1.0) * 100)

    worst = 0.0
    for _ in range(n_samples):
        a = q.random_element(rng)
        for i, j in pairs:
            if not b.complete(i, j) or not b.complete(j, i):
                continue
            di, dj = q.d(i), q.d(j)
            dij = delta_block(q, a, i, j)
            dji = delta_block(q, a, j, i)
            dop = flip(dj, di) @ dji @ flip(di, dj)
            rij = R.block(i, j)
            worst = max(worst, residual(rij @ dij, dop @ rij))
    rep.add("comult-flip", "R Delta = Delta-op R", worst,
            worst <= tol.bound(1.0) * 100)

    worst = 0.0
    for i in labels:
        for j in labels:
            for k in labels:
                needed = [(i, j), (i, k), (j, k)]
                if any(p not in R.blocks for p in needed):
                    continue
                di, dj, dk = q.d(i), q.d(j), q.d(k)
                rij = R.block(i, j).reshape(di, dj, di, dj)
                r12 = np.einsum("abcd,xy->abxcdy", rij, eye(dk)).reshape(
                    di * dj * dk, -1)
                rik = R.block(i, k).reshape(di, dk, di, dk)
                r13 = np.einsum("axcy,bd->abxcdy", rik, eye(dj)).reshape(
                    di * dj * dk, -1)
                rjk = R.block(j, k).reshape(dj, dk, dj, dk)
                r23 = np.einsum("bxdy,ac->abxcdy", rjk, eye(di)).reshape(
                    di * dj * dk, -1)
                worst = max(worst, residual(r12 @ r13 @ r23, r23 @ r13 @ r12))
    rep.add("yang-baxter", "R12 R13 R23 = R23 R13 R12", worst,
            worst <= tol.bound(1.0) * 100)

    worst = 0.0
    e = b.unit
    for j in labels:
        if (e, j) in R.blocks:
            worst = max(worst, residual(R.block(e, j), eye(q.d(j))))
        if (j, e) in R.blocks:
            worst = max(worst, residual(R.block(j, e), eye(q.d(j))))
    rep.add("counit-legs", "(eps x iota)R = 1 = (iota x eps)R", worst,
            worst <= tol.bound(1.0) * 100)

    worst = 0.0
    seen = False
    for (i, j), m in R.blocks.items():
        if (b.dual[i], j) not in R.blocks or i not in b.conj:
            continue
        seen = True
        worst = max(worst, residual(_apply_s_leg1(q, R, i, j),
                                    np.linalg.inv(m)))
    if seen:
        rep.add("antipode-leg1", "(S x iota)R = R^-1", worst,
                worst <= tol.bound(1.0) * 100)
    else:
        rep.skip("antipode-leg1", "(S x iota)R = R^-1")

    worst = 0.0
    seen = False
    for (i, j), m in R.blocks.items():
        ib, jb = b.dual[i], b.dual[j]
        if (ib, jb) not in R.blocks or i not in b.conj or j not in b.conj:
            continue
        seen = True
        both = _apply_s_leg2(q, _apply_s_leg1(q, R, i, jb), i, j)
        worst = max(worst, residual(both, m))
    if seen:
        rep.add("antipode-both", "(S x S)R = R", worst,
                worst <= tol.bound(1.0) * 100)
    else:
        rep.skip("antipode-both", "(S x S)R = R")
    return rep


def triangularity(q: Aqg, R: RMatrix, tol: Tolerance = DEFAULT_TOL):
    """Whether sigma(R) R = 1, with the residual."""
    worst = 0.0
    sig = R.sigma(q)
    for (i, j), m in R.blocks.items():
        worst = max(worst, residual(sig.block(i, j) @ m, eye(m.shape[0])))
    return worst <= tol.bound(1.0) * 100, worst
