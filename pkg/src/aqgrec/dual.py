"""Duality for closed finite bundles: the compact dual Hopf *-algebra on the
Fourier-transformed basis, the universal corepresentation, corepresentation
calculus, and the Pontryagin double-dual check.

Everything here works with dense structure-constant tables over the
matrix-unit basis of A, so all axioms can be checked exhaustively.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .aqg import (
    Aqg,
    AqgElement,
    NotFinite,
    antipode,
    counit,
    delta_block,
    haar,
)
from .linalg import DEFAULT_TOL, Array, Tolerance, cmat, dagger, eye, residual
from .report import Report


class DefiningSystemInconsistent(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense Hopf tables


@dataclass
class TableHopf:
    """A finite-dimensional Hopf *-algebra with a distinguished functional,
    given by structure constants on a fixed basis e_0..e_{N-1}.

    mult[u,v,w]: coefficient of e_w in e_u e_v; comult[u,v,w]: coefficient
    of e_v (x) e_w in the coproduct of e_u; antipode and star are matrices
    (star coefficients are applied after conjugating the input); haar holds
    the invariant functional on the basis.
    """

    dim: int
    mult: Array
    unit: Array
    comult: Array
    counit: Array
    antipode: Array
    star: Array
    haar: Array

    def product(self, x: Array, y: Array) -> Array:
        return np.einsum("u,v,uvw->w", x, y, self.mult, optimize=True)

    def star_of(self, x: Array) -> Array:
        return np.einsum("u,uw->w", x.conj(), self.star)

    def antipode_of(self, x: Array) -> Array:
        return np.einsum("u,uw->w", x, self.antipode)

    def haar_of(self, x: Array) -> complex:
        return complex(np.dot(self.haar, x))

    def counit_of(self, x: Array) -> complex:
        return complex(np.dot(self.counit, x))

    def pairing(self) -> Array:
        """P[v,u] = haar(e_v e_u)."""
        return np.einsum("vuw,w->vu", self.mult, self.haar)

    def commutative(self, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
        res = residual(self.mult, np.swapaxes(self.mult, 0, 1))
        return res <= tol.bound(self.mult), res

    def cocommutative(self, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
        res = residual(self.comult, np.swapaxes(self.comult, 1, 2))
        return res <= tol.bound(self.comult), res


def _basis_offsets(q: Aqg) -> tuple[dict[str, int], int]:
    offsets, off = {}, 0
    for i in q.labels:
        offsets[i] = off
        off += q.d(i) ** 2
    return offsets, off


def basis_index(q: Aqg, offsets, i: str, p: int, s: int) -> int:
    return offsets[i] + p * q.d(i) + s


def element_to_vec(q: Aqg, offsets, total: int, a: AqgElement) -> Array:
    v = np.zeros(total, dtype=complex)
    for i in a.support:
        d = q.d(i)
        v[offsets[i] : offsets[i] + d * d] = a.blocks[i].reshape(-1)
    return v


def vec_to_element(q: Aqg, offsets, v: Array) -> AqgElement:
    blocks = {}
    for i in q.labels:
        d = q.d(i)
        blk = v[offsets[i] : offsets[i] + d * d].reshape(d, d)
        if np.max(np.abs(blk)) > 0:
            blocks[i] = cmat(blk)
    return AqgElement(blocks)


def table_from_aqg(q: Aqg) -> TableHopf:
    """Materialize the reconstructed algebra as dense Hopf tables."""
    if not q.bundle.closed:
        raise NotFinite("Hopf tables require a closed bundle")
    offsets, total = _basis_offsets(q)
    N = total
    mult = np.zeros((N, N, N), dtype=complex)
    unit = np.zeros(N, dtype=complex)
    comult = np.zeros((N, N, N), dtype=complex)
    counit_v = np.zeros(N, dtype=complex)
    anti = np.zeros((N, N), dtype=complex)
    star = np.zeros((N, N), dtype=complex)
    haar_v = np.zeros(N, dtype=complex)

    for i in q.labels:
        d = q.d(i)
        for p in range(d):
            unit[basis_index(q, offsets, i, p, p)] = 1.0
            for s in range(d):
                u = basis_index(q, offsets, i, p, s)
                star[u, basis_index(q, offsets, i, s, p)] = 1.0
                haar_v[u] = q.haar_weights[i] * q.F[i][s, p]
                for t in range(d):
                    mult[u, basis_index(q, offsets, i, s, t),
                         basis_index(q, offsets, i, p, t)] = 1.0
                eu = AqgElement({i: _unit_mat(d, p, s)})
                counit_v[u] = counit(q, eu)
                anti[u] = element_to_vec(q, offsets, total, antipode(q, eu))
                for n in q.labels:
                    for m in q.labels:
                        blk = delta_block(q, eu, n, m)
                        if np.max(np.abs(blk)) == 0:
                            continue
                        dn, dm = q.d(n), q.d(m)
                        tt = blk.reshape(dn, dm, dn, dm)
                        for a in range(dn):
                            for c in range(dn):
                                va = basis_index(q, offsets, n, a, c)
                                for bq in range(dm):
                                    for dd in range(dm):
                                        comult[u, va,
                                               basis_index(q, offsets, m, bq, dd)
                                               ] += tt[a, bq, c, dd]
    return TableHopf(N, mult, unit, comult, counit_v, anti, star, haar_v)


def _unit_mat(d: int, p: int, s: int) -> Array:
    m = np.zeros((d, d), dtype=complex)
    m[p, s] = 1.0
    return m


def dual_table(T: TableHopf) -> TableHopf:
    """The dual Hopf *-algebra on the Fourier basis omega_u = e_u . haar.

    All structure constants come from solving against the (faithful)
    pairing P[v,u] = haar(e_v e_u).
    """
    P = T.pairing()
    Pinv = np.linalg.inv(P)
    # product: (omega_a omega_b)(e_v) = sum comult[v,r,s] P[r,a] P[s,b]
    lhs = np.einsum("vrs,ra,sb->vab", T.comult, P, P, optimize=True)
    mult_hat = np.einsum("cv,vab->abc", Pinv, lhs, optimize=True)
    unit_hat = Pinv @ T.counit
    # coproduct: pairing of Delta-hat against e_v (x) e_w is omega_u(e_v e_w)
    G = np.einsum("vwr,ru->uvw", T.mult, P, optimize=True)
    comult_hat = np.einsum("av,bw,uvw->uab", Pinv, Pinv, G, optimize=True)
    counit_hat = P.T @ T.unit
    H = np.einsum("vw,wu->vu", T.antipode, P)
    anti_hat = (Pinv @ H).T
    K = np.einsum("vw,wz,zu->vu", T.antipode, T.star.conj(), P.conj(), optimize=True)
    star_hat = (Pinv @ K).T
    haar_hat = T.counit.copy()
    return TableHopf(T.dim, mult_hat, unit_hat, comult_hat, counit_hat,
                     anti_hat, star_hat, haar_hat)


def verify_table(T: TableHopf, tol: Tolerance = DEFAULT_TOL,
                 title: str = "hopf-table") -> Report:
    """Exhaustive Hopf-*-algebra axiom check on structure constants."""
    rep = Report(title)
    m, c = T.mult, T.comult

    def check(name, lhs, rhs):
        res = residual(lhs, rhs)
        rep.add(name, "tables", res, res <= tol.bound(lhs, rhs) * 10)

    check("associativity",
          np.einsum("uvw,wkz->uvkz", m, m, optimize=True),
          np.einsum("vkw,uwz->uvkz", m, m, optimize=True))
    check("unit-left", np.einsum("u,uvw->vw", T.unit, m), eye(T.dim))
    check("unit-right", np.einsum("v,uvw->uw", T.unit, m), eye(T.dim))
    check("coassociativity",
          np.einsum("umd,mab->uabd", c, c, optimize=True),
          np.einsum("uam,mbd->uabd", c, c, optimize=True))
    check("counit-left", np.einsum("uab,a->ub", c, T.counit), eye(T.dim))
    check("counit-right", np.einsum("uab,b->ua", c, T.counit), eye(T.dim))
    check("comult-homomorphism",
          np.einsum("uvw,wab->uvab", m, c, optimize=True),
          np.einsum("uxy,vzt,xza,ytb->uvab", c, c, m, m, optimize=True))
    check("counit-homomorphism",
          np.einsum("uvw,w->uv", m, T.counit),
          np.outer(T.counit, T.counit))
    check("antipode-left",
          np.einsum("uab,ac,cbw->uw", c, T.antipode, m, optimize=True),
          np.outer(T.counit, T.unit))
    check("antipode-right",
          np.einsum("uab,bc,acw->uw", c, T.antipode, m, optimize=True),
          np.outer(T.counit, T.unit))
    check("star-involutive",
          np.einsum("uw,wz->uz", T.star.conj(), T.star), eye(T.dim))
    check("star-antimultiplicative",
          np.einsum("uvw,wz->uvz", m, T.star, optimize=True).conj(),
          np.einsum("vx,uy,xyz->uvz", T.star.conj(), T.star.conj(), m,
                    optimize=True).conj())
    check("comult-star",
          np.einsum("uw,wab->uab", T.star, c, optimize=True),
          np.einsum("uxy,xa,yb->uab", c.conj(), T.star, T.star, optimize=True))
    # the functional: at least one-sided invariance must hold
    left_inv = residual(np.einsum("uab,b->ua", c, T.haar),
                        np.outer(T.haar, T.unit))
    right_inv = residual(np.einsum("uab,a->ub", c, T.haar),
                         np.outer(T.haar, T.unit))
    inv = min(left_inv, right_inv)
    rep.add("haar-invariance", "tables", inv, inv <= tol.bound(T.haar) * 10)
    gram = _haar_gram(T)
    eigs = np.linalg.eigvalsh((gram + dagger(gram)) / 2)
    rep.add("haar-positivity", "Gram eigenvalues",
            0.0 if eigs[0] > 0 else abs(float(eigs[0])), bool(eigs[0] > tol.absolute))
    return rep


def _haar_gram(T: TableHopf) -> Array:
    """Gram[u,v] = haar(e_v* e_u)."""
    stars = T.star.conj()  # row u = coefficients of e_u*
    return np.einsum("vz,zuw,w->uv", stars, T.mult, T.haar, optimize=True)


# ---------------------------------------------------------------------------
# Fourier transform


@dataclass
class DualElement:
    """A functional omega = a . haar, carried by the element a."""

    carrier: AqgElement

    def __call__(self, q: Aqg, x: AqgElement) -> complex:
        return haar(q, x.mul(self.carrier), "left")


def fourier(q: Aqg, a: AqgElement) -> DualElement:
    if not q.bundle.closed:
        raise NotFinite("Fourier transform requires a closed bundle")
    return DualElement(a)


def inverse_fourier(q: Aqg, values: Array, T: TableHopf) -> AqgElement:
    """Recover a from the values omega(e_v) of omega = a . haar."""
    if not q.bundle.closed:
        raise NotFinite("Fourier transform requires a closed bundle")
    offsets, _ = _basis_offsets(q)
    coeff = np.linalg.solve(T.pairing(), cmat(values).reshape(-1))
    return vec_to_element(q, offsets, coeff)


def dual_hopf(q: Aqg, tol: Tolerance = DEFAULT_TOL):
    """Materialize A and its dual as Hopf tables, with the dual verified.

    Returns (T, T_hat, report); the report covers the dual's Hopf-*-algebra
    axioms, unitality, and the Parseval identity psi-hat(a-hat* a-hat) =
    phi(a* a).
    """
    T = table_from_aqg(q)
    Td = dual_table(T)
    rep = verify_table(Td, tol, title="dual-hopf")
    rng = np.random.default_rng(23)
    worst = 0.0
    for _ in range(8):
        cvec = rng.standard_normal(T.dim) + 1j * rng.standard_normal(T.dim)
        lhs = Td.haar_of(Td.product(Td.star_of(cvec), cvec))
        rhs = T.haar_of(T.product(T.star_of(cvec), cvec))
        worst = max(worst, abs(lhs - rhs))
    rep.add("parseval", "random elements", worst, worst <= tol.bound(1.0) * 100)
    res = residual(Td.antipode @ Td.antipode, eye(Td.dim))
    rep.add("antipode-involutive", "dual antipode squared", res,
            res <= tol.bound(Td.antipode) * 100)
    return T, Td, rep


# ---------------------------------------------------------------------------
# universal corepresentation


def universal_corep(q: Aqg, T: TableHopf, Td: TableHopf,
                    tol: Tolerance = DEFAULT_TOL):
    """Solve the defining evaluation identity for U in A (x) A-hat.

    [U(x (x) omega)](y) = (iota (x) omega)(Delta(y)(x (x) 1)) becomes a dense
    linear system in the N^2 coefficients of U; the solution is checked to
    be unique and is returned with its verification report.
    """
    if not q.bundle.closed:
        raise NotFinite("universal corepresentation requires a closed bundle")
    N = T.dim
    P = T.pairing()
    # B1[v,s,t] = (omega_v omega_s)(e_t)
    B1 = np.einsum("tab,av,bs->vst", T.comult, P, P, optimize=True)
    # K[(w,r,s,t),(u,v)] = mult[u,r,w] B1[v,s,t]
    K = np.einsum("urw,vst->wrstuv", T.mult, B1, optimize=True).reshape(N**4, N**2)
    rhs = np.einsum("tab,bs,arw->wrst", T.comult, P, T.mult,
                    optimize=True).reshape(N**4)
    sol, res_, rank, svals = np.linalg.lstsq(K, rhs, rcond=None)
    if rank < N * N:
        raise DefiningSystemInconsistent(
            f"defining system rank {rank} < {N * N}: solution not unique"
        )
    resid = float(np.max(np.abs(K @ sol - rhs)))
    if resid > tol.bound(rhs) * 1e3:
        raise DefiningSystemInconsistent(
            f"defining system inconsistent (residual {resid:.3e})"
        )
    U = sol.reshape(N, N)
    return U


def verify_universal(q: Aqg, U: Array, T: TableHopf, Td: TableHopf,
                     tol: Tolerance = DEFAULT_TOL) -> Report:
    """The five properties of the universal corepresentation."""
    rep = Report("universal-corep")
    N = T.dim
    P = T.pairing()

    def tens_prod(X, Y):
        return np.einsum("uv,rs,urw,vsc->wc", X, Y, T.mult, Td.mult,
                         optimize=True)

    def tens_star(X):
        return np.einsum("uv,uw,vc->wc", X.conj(), T.star, Td.star,
                         optimize=True)

    one = np.outer(T.unit, Td.unit)
    res = max(residual(tens_prod(tens_star(U), U), one),
              residual(tens_prod(U, tens_star(U)), one))
    rep.add("unitarity", "A (x) dual", res, res <= tol.bound(one, U) * 100)

    lhs2 = np.einsum("uc,uab->abc", U, T.comult, optimize=True)
    u13 = np.einsum("uv,b->ubv", U, T.unit)
    u23 = np.einsum("a,uv->auv", T.unit, U)
    rhs2 = np.einsum("xyz,uvw,xua,yvb,zwc->abc", u13, u23,
                     T.mult, T.mult, Td.mult, optimize=True)
    res = residual(lhs2, rhs2)
    rep.add("comult-leg1", "(Delta x iota)U = U13 U23", res,
            res <= tol.bound(lhs2, rhs2) * 100)

    lhs3 = np.einsum("uv,vab->uab", U, Td.comult, optimize=True)
    u12 = np.einsum("uv,c->uvc", U, Td.unit)
    u13b = np.einsum("uv,b->ubv", U, Td.unit)
    rhs3 = np.einsum("xyz,uvw,xua,yvb,zwc->abc", u12, u13b,
                     T.mult, Td.mult, Td.mult, optimize=True)
    res = residual(lhs3, rhs3)
    rep.add("comult-leg2", "(iota x Delta-hat)U = U12 U13", res,
            res <= tol.bound(lhs3, rhs3) * 100)

    res = residual(P.T @ U, eye(N))
    rep.add("slice-functional", "(omega x iota)U = omega", res,
            res <= tol.bound(1.0) * 100)
    res = residual(U @ P.T, eye(N))
    rep.add("slice-element", "(iota x a)U = a", res,
            res <= tol.bound(1.0) * 100)
    return rep


# ---------------------------------------------------------------------------
# corepresentations of (A, Delta) on B(K)


@dataclass
class Corep:
    """V in M(A (x) B(K)) given blockwise: blocks[i] in B(H_i (x) K)."""

    space_dim: int
    blocks: dict[str, Array]

    def block(self, i: str) -> Array:
        return self.blocks[i]


def trivial_corep(q: Aqg) -> Corep:
    return Corep(1, {i: eye(q.d(i)) for i in q.labels})


def regular_corep(q: Aqg, U: Array, T: TableHopf, Td: TableHopf) -> Corep:
    """(iota (x) lambda)U with lambda the left regular action of the dual.

    The regular action is conjugated into the inner product defined by the
    dual's invariant functional, which makes it a *-representation and the
    corepresentation unitary.
    """
    from .linalg import hermitian_calc

    offsets, total = _basis_offsets(q)
    lam = np.einsum("vsw->vws", Td.mult)  # lam[v][w,s]: matrix of omega_v
    gram = _haar_gram(Td)
    gram = (gram + dagger(gram)) / 2
    g_half = hermitian_calc(gram, "sqrt")
    g_ihalf = hermitian_calc(gram, "inv_sqrt")
    lam = np.einsum("xw,vws,sy->vxy", g_half, lam, g_ihalf, optimize=True)
    blocks = {}
    for i in q.labels:
        d = q.d(i)
        Vi = np.zeros((d, total, d, total), dtype=complex)
        for p in range(d):
            for s in range(d):
                u = basis_index(q, offsets, i, p, s)
                Vi[p, :, s, :] += np.einsum("v,vws->ws", U[u], lam, optimize=True)
        blocks[i] = Vi.reshape(d * total, d * total)
    return Corep(total, blocks)


def corep_check(q: Aqg, V: Corep, tol: Tolerance = DEFAULT_TOL) -> Report:
    """Unitarity and the corepresentation identity, blockwise."""
    rep = Report("corep")
    n = V.space_dim
    b = q.bundle
    worst_u = 0.0
    for i in q.labels:
        vi = V.blocks[i]
        worst_u = max(worst_u, residual(dagger(vi) @ vi, eye(vi.shape[0])),
                      residual(vi @ dagger(vi), eye(vi.shape[0])))
    rep.add("unitary", "all blocks", worst_u, worst_u <= tol.bound(1.0) * 100)
    worst = 0.0
    scale = 1.0
    for i in q.labels:
        for j in q.labels:
            di, dj = q.d(i), q.d(j)
            lhs = np.zeros((di * dj * n, di * dj * n), dtype=complex)
            for k, _ in b.support(i, j):
                vk = V.blocks[k].reshape(q.d(k), n, q.d(k), n)
                for v in b.isometries(i, j, k):
                    w = np.einsum("pk,kxly,ql->pxqy", v, vk, v.conj(),
                                  optimize=True)
                    lhs += w.reshape(di * dj * n, di * dj * n)
            rhs = _leg13(q, V, i, j) @ _leg23(q, V, i, j)
            worst = max(worst, residual(lhs, rhs))
            scale = max(scale, float(np.max(np.abs(rhs))))
    rep.add("corep-identity", "(Delta x iota)V = V13 V23", worst,
            worst <= tol.bound(scale) * 100)
    return rep


def _leg13(q: Aqg, V: Corep, i: str, j: str) -> Array:
    di, dj, n = q.d(i), q.d(j), V.space_dim
    vi = V.blocks[i].reshape(di, n, di, n)
    out = np.einsum("axcy,bd->abxcdy", vi, eye(dj))
    return out.reshape(di * dj * n, di * dj * n)


def _leg23(q: Aqg, V: Corep, i: str, j: str) -> Array:
    di, dj, n = q.d(i), q.d(j), V.space_dim
    vj = V.blocks[j].reshape(dj, n, dj, n)
    out = np.einsum("ac,bxdy->abxcdy", eye(di), vj)
    return out.reshape(di * dj * n, di * dj * n)


def tensor_corep(q: Aqg, V: Corep, W: Corep) -> Corep:
    """V x W on K (x) K': blockwise V13 W23."""
    n, m = V.space_dim, W.space_dim
    blocks = {}
    for i in q.labels:
        d = q.d(i)
        vi = V.blocks[i].reshape(d, n, d, n)
        wi = W.blocks[i].reshape(d, m, d, m)
        prod = np.einsum("axcy,cbdz->axbdyz", vi, wi, optimize=True)
        blocks[i] = prod.reshape(d * n * m, d * n * m)
    return Corep(n * m, blocks)


def conjugate_corep(q: Aqg, V: Corep) -> Corep:
    """The conjugate corepresentation (S^-1 (x) j)V on the conjugate space.

    For a unitary corepresentation of a finite-type algebra the modular
    element of the dual is trivial (the dual antipode is involutive), so the
    conjugation map reduces to j(x) = x^T on matrix coefficients.
    """
    n = V.space_dim
    b = q.bundle
    blocks: dict[str, Array] = {}
    for i in q.labels:
        ib = b.dual[i]
        if i not in b.conj:
            raise NotFinite(f"no conjugate data for label {i!r}")
        rm, rbm = q._rmat(i), q._rbarmat(i)
        vi = V.blocks[i].reshape(q.d(i), n, q.d(i), n)
        # S^-1(E^i_{ps})[u,w] = rm[s,u] conj(rbm[w,p]); j(x) = x^T
        vb = np.einsum("su,wp,pxsy->uywx", rm, rbm.conj(), vi, optimize=True)
        blocks.setdefault(ib, np.zeros((q.d(ib) * n, q.d(ib) * n), dtype=complex))
        blocks[ib] += vb.reshape(q.d(ib) * n, q.d(ib) * n)
    for i in q.labels:
        blocks.setdefault(i, np.zeros((q.d(i) * n, q.d(i) * n), dtype=complex))
    return Corep(n, blocks)


def corep_to_rep(q: Aqg, V: Corep, T: TableHopf) -> list[Array]:
    """pi_V(omega_a) = (omega_a (x) iota)V as matrices on K, per dual basis
    functional omega_a = e_a . haar."""
    P = T.pairing()
    offsets, total = _basis_offsets(q)
    n = V.space_dim
    X = np.zeros((total, n, n), dtype=complex)
    for i in q.labels:
        d = q.d(i)
        vi = V.blocks[i].reshape(d, n, d, n)
        for p in range(d):
            for s in range(d):
                X[basis_index(q, offsets, i, p, s)] = vi[p, :, s, :]
    return [np.einsum("v,vxy->xy", P[:, a], X, optimize=True)
            for a in range(total)]


def rep_to_corep(q: Aqg, pimats: list[Array], U: Array) -> Corep:
    """(iota (x) pi)U: lift a representation of the dual to a
    corepresentation of (A, Delta)."""
    offsets, total = _basis_offsets(q)
    n = pimats[0].shape[0]
    pim = np.stack([cmat(m) for m in pimats])
    blocks = {}
    for i in q.labels:
        d = q.d(i)
        Ui = U[offsets[i] : offsets[i] + d * d].reshape(d, d, total)
        vi = np.einsum("psv,vxy->pxsy", Ui, pim, optimize=True)
        blocks[i] = vi.reshape(d * n, d * n)
    return Corep(n, blocks)


def rep_of_dual_check(q: Aqg, V: Corep, T: TableHopf, Td: TableHopf,
                      tol: Tolerance = DEFAULT_TOL) -> Report:
    """pi_V is a unital *-representation of the dual algebra."""
    rep = Report("corep-to-rep")
    mats = np.stack(corep_to_rep(q, V, T))
    n = V.space_dim
    lhs = np.einsum("abv,vxy->abxy", Td.mult, mats, optimize=True)
    rhs = np.einsum("axz,bzy->abxy", mats, mats, optimize=True)
    res = residual(lhs, rhs)
    rep.add("multiplicative", "dual basis", res, res <= tol.bound(lhs, rhs) * 100)
    res = residual(np.einsum("v,vxy->xy", Td.unit, mats), eye(n))
    rep.add("unital", "dual unit", res, res <= tol.bound(1.0) * 100)
    lhs = np.einsum("uw,wxy->uxy", Td.star, mats, optimize=True)
    rhs = np.einsum("uxy->uyx", mats.conj())
    res = residual(lhs, rhs)
    rep.add("star", "pi(omega*) = pi(omega)*", res,
            res <= tol.bound(lhs, rhs) * 100)
    return rep


def roundtrip_check(q: Aqg, V: Corep, U: Array, T: TableHopf,
                    tol: Tolerance = DEFAULT_TOL) -> float:
    """Residual of (iota (x) pi_V)U = V."""
    back = rep_to_corep(q, corep_to_rep(q, V, T), U)
    worst = 0.0
    for i in q.labels:
        worst = max(worst, residual(back.blocks[i], V.blocks[i]))
    return worst


def tensor_compat_check(q: Aqg, V: Corep, W: Corep, T: TableHopf,
                        Td: TableHopf, tol: Tolerance = DEFAULT_TOL) -> float:
    """pi_{V x W} = (pi_V (x) pi_W) Delta-hat, as a residual."""
    mats_v = np.stack(corep_to_rep(q, V, T))
    mats_w = np.stack(corep_to_rep(q, W, T))
    mats_t = np.stack(corep_to_rep(q, tensor_corep(q, V, W), T))
    n, m = V.space_dim, W.space_dim
    rhs = np.einsum("uab,axy,bzw->uxzyw", Td.comult, mats_v, mats_w,
                    optimize=True).reshape(T.dim, n * m, n * m)
    return residual(mats_t, rhs)


def conjugate_corep_check(q: Aqg, V: Corep, T: TableHopf, Td: TableHopf,
                          tol: Tolerance = DEFAULT_TOL) -> Report:
    """The conjugate corepresentation is a unitary corepresentation and
    pairs with the dual antipode: pi_{Vbar}(omega) = pi_V(omega o S^-1)^T."""
    rep = Report("conjugate-corep")
    Vb = conjugate_corep(q, V)
    rep.extend(corep_check(q, Vb, tol))
    mats = np.stack(corep_to_rep(q, V, T))
    mats_b = np.stack(corep_to_rep(q, Vb, T))
    sinv = np.linalg.inv(Td.antipode)
    want = np.einsum("uv,vxy->uyx", sinv, mats, optimize=True)
    res = residual(mats_b, want)
    rep.add("antipode-pairing", "pi_conj = transpose o pi o S^-1", res,
            res <= tol.bound(mats_b, want) * 100)
    return rep


# ---------------------------------------------------------------------------
# Pontryagin double dual


def pontryagin_check(q: Aqg, tol: Tolerance = DEFAULT_TOL):
    """Canonical evaluation map A -> (A-hat)-hat is a Hopf *-isomorphism.

    Returns (theta, report): theta[:,u] holds the double-dual coefficients
    of the basis element e_u.
    """
    if not q.bundle.closed:
        raise NotFinite("double dual requires a closed bundle")
    T = table_from_aqg(q)
    Td = dual_table(T)
    Tdd = dual_table(Td)
    P = T.pairing()
    Phat = Td.pairing()
    theta = np.linalg.solve(Phat, P.T)
    rep = Report("pontryagin")

    svals = np.linalg.svd(theta, compute_uv=False)
    rep.add("bijective", "singular values", 0.0,
            bool(svals[-1] > tol.absolute * max(1.0, float(svals[0]))))
    res = residual(theta @ T.unit, Tdd.unit)
    rep.add("unital", "theta(1)", res, res <= tol.bound(1.0) * 100)
    lhs = np.einsum("uvw,cw->uvc", T.mult, theta, optimize=True)
    rhs = np.einsum("au,bv,abc->uvc", theta, theta, Tdd.mult, optimize=True)
    res = residual(lhs, rhs)
    rep.add("multiplicative", "basis pairs", res,
            res <= tol.bound(lhs, rhs) * 100)
    lhs = np.einsum("uw,cw->cu", T.star, theta, optimize=True)
    rhs = np.einsum("cu,cz->zu", theta.conj(), Tdd.star, optimize=True)
    res = residual(lhs, rhs)
    rep.add("star-homomorphism", "basis", res, res <= tol.bound(lhs, rhs) * 100)
    lhs = np.einsum("uab,ca,db->ucd", T.comult, theta, theta, optimize=True)
    rhs = np.einsum("wu,wcd->ucd", theta, Tdd.comult, optimize=True)
    res = residual(lhs, rhs)
    rep.add("comultiplicative", "basis", res, res <= tol.bound(lhs, rhs) * 100)
    res = residual(Tdd.counit @ theta, T.counit)
    rep.add("counit-compatible", "basis", res, res <= tol.bound(1.0) * 100)
    return theta, rep
