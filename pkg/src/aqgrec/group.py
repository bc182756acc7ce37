"""Intrinsic group recovery.

The intrinsic group is the set of grouplike unitary multipliers g with
Delta(g) = g (x) g.  At finite scale these are in bijection with the
*-characters of the dual Hopf *-algebra, which are found by plain linear
algebra: quotient the dual by its commutator ideal and diagonalize.  For a
bundle generated from a finite group this recovers the group, its table,
and its irreducible representations.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aqg import Aqg, AqgElement, NotFinite
from .dual import TableHopf, _basis_offsets, dual_table, table_from_aqg, vec_to_element
from .linalg import DEFAULT_TOL, Array, Tolerance, dagger, eye, residual
from .report import Report


class DegenerateSpectrum(RuntimeError):
    pass


@dataclass
class Grouplike:
    """A grouplike unitary of A, carried as its coefficient vector on the
    matrix-unit basis together with the dual character it evaluates to."""

    coeffs: Array
    character: Array  # chi[u] = omega_u(g)

    def element(self, q: Aqg) -> AqgElement:
        offsets, _ = _basis_offsets(q)
        return vec_to_element(q, offsets, self.coeffs)


@dataclass
class IntrinsicGroup:
    order: int
    elements: list[Grouplike]
    table: Array  # table[a,b] = index of the product
    identity: int

    def inverse(self, a: int) -> int:
        return int(np.where(self.table[a] == self.identity)[0][0])

    def element_order(self, a: int) -> int:
        x, n = a, 1
        while x != self.identity:
            x = int(self.table[x, a])
            n += 1
        return n

    def abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def export(self) -> dict:
        return {
            "order": self.order,
            "identity": self.identity,
            "table": self.table.tolist(),
            "element_orders": [self.element_order(a) for a in range(self.order)],
        }


def _ideal_complement(T: TableHopf, tol: Tolerance) -> Array:
    """Orthonormal basis (columns) of a complement of the commutator ideal."""
    N = T.dim
    comm = T.mult - np.swapaxes(T.mult, 0, 1)  # [u,v,w]
    rows = [comm.reshape(N * N, N)]
    left = np.einsum("aws,uvw->auvs", T.mult, comm, optimize=True)
    rows.append(left.reshape(-1, N))
    right = np.einsum("uvw,wbt->uvbt", comm, T.mult, optimize=True)
    rows.append(right.reshape(-1, N))
    both = np.einsum("auvs,sbt->auvbt", left, T.mult, optimize=True)
    rows.append(both.reshape(-1, N))
    mat = np.concatenate(rows, axis=0)
    _, svals, vh = np.linalg.svd(mat, full_matrices=True)
    top = float(svals[0]) if len(svals) and svals[0] > 1.0 else 1.0
    rank = int(np.sum(svals > tol.absolute * top * N))
    return vh[rank:].conj().T  # N x (N - rank)


def characters(T: TableHopf, tol: Tolerance = DEFAULT_TOL,
               seed: int = 42) -> list[Array]:
    """All unital algebra characters of T, as value vectors on the basis.

    Works through the abelianization: quotient by the commutator ideal,
    then simultaneous diagonalization of left multiplication by a generic
    element, reading each character off the diagonalized generators.
    """
    N = T.dim
    C = _ideal_complement(T, tol)
    k = C.shape[1]
    if k == 0:
        return []
    # left multiplication by e_u on the quotient
    Lq = np.einsum("xw,uwt,ty->uxy", dagger(C), T.mult, C, optimize=True)
    rng = np.random.default_rng(seed)
    for _ in range(16):
        z = rng.standard_normal(N)
        evals, W = np.linalg.eig(np.einsum("u,uxy->xy", z, Lq))
        gap = float(np.min(np.abs(evals[:, None] - evals[None, :])
                           + np.eye(k) * 1e9))
        if gap > 1e-6 and np.linalg.cond(W) < 1e8:
            break
    else:
        raise DegenerateSpectrum("could not split the abelianization spectrum")
    Winv = np.linalg.inv(W)
    diag = np.einsum("xy,uyz,zx->ux", Winv, Lq, W, optimize=True)
    chars = []
    for m in range(k):
        chi = diag[:, m]
        if abs(np.dot(T.unit, chi) - 1.0) < 1e-6:
            chars.append(chi)
    return chars


def verify_grouplike(T: TableHopf, g: Grouplike,
                     tol: Tolerance = DEFAULT_TOL) -> Report:
    """The grouplike invariants, on the algebra's own tables."""
    rep = Report("grouplike")
    c = g.coeffs
    lhs = np.einsum("u,uab->ab", c, T.comult, optimize=True)
    res = residual(lhs, np.outer(c, c))
    rep.add("comult", "Delta(g) = g (x) g", res, res <= tol.bound(lhs) * 1000)
    res = abs(T.counit_of(c) - 1.0)
    rep.add("counit", "eps(g) = 1", res, res <= tol.bound(1.0) * 1000)
    res = residual(T.antipode_of(c), T.star_of(c))
    rep.add("antipode", "S(g) = g*", res, res <= tol.bound(1.0) * 1000)
    res = max(residual(T.product(T.star_of(c), c), T.unit),
              residual(T.product(c, T.star_of(c)), T.unit))
    rep.add("unitary", "g* g = g g* = 1", res, res <= tol.bound(1.0) * 1000)
    return rep


def grouplikes(q: Aqg, tol: Tolerance = DEFAULT_TOL, seed: int = 42):
    """Recover the intrinsic group from the dual's characters.

    Each *-character chi of the dual determines a grouplike g through
    omega(g) = chi(omega); returns (IntrinsicGroup, T, Td, Report).
    """
    if not q.bundle.closed:
        raise NotFinite("intrinsic group requires a closed bundle")
    T = table_from_aqg(q)
    Td = dual_table(T)
    P = T.pairing()
    chars = characters(Td, tol, seed)
    elements = [Grouplike(np.linalg.solve(P.T, chi), chi) for chi in chars]
    rep = Report("intrinsic-group")
    each = Report("grouplike-all")
    for g in elements:
        each.extend(verify_grouplike(T, g, tol))
    rep.add("grouplike-axioms", f"{len(elements)} elements",
            each.max_residual, each.passed)

    n = len(elements)
    table = -np.ones((n, n), dtype=int)
    match_res = 0.0
    for a in range(n):
        for b in range(n):
            prod = T.product(elements[a].coeffs, elements[b].coeffs)
            dists = [float(np.max(np.abs(prod - e.coeffs))) for e in elements]
            c = int(np.argmin(dists))
            table[a, b] = c
            match_res = max(match_res, dists[c])
    rep.add("closed-under-product", "multiplier products", match_res,
            match_res <= tol.bound(1.0) * 1e4)

    ident = int(np.argmin([
        float(np.max(np.abs(e.coeffs - T.unit))) for e in elements
    ]))
    ident_res = float(np.max(np.abs(elements[ident].coeffs - T.unit)))
    rep.add("identity", "the unit is grouplike", ident_res,
            ident_res <= tol.bound(1.0) * 1e4)

    ok = n > 0 and all(
        sorted(table[a]) == list(range(n))
        and sorted(table[:, a]) == list(range(n))
        for a in range(n)
    )
    assoc = all(
        table[table[a, b], c] == table[a, table[b, c]]
        for a in range(n) for b in range(n) for c in range(n)
    )
    rep.add("group-axioms", "cancellation and associativity", 0.0,
            bool(ok and assoc))
    group = IntrinsicGroup(n, elements, table, ident)
    return group, T, Td, rep


def group_block(q: Aqg, g: Grouplike, label: str) -> Array:
    """The block of the grouplike multiplier on H_label."""
    offsets, _ = _basis_offsets(q)
    d = q.d(label)
    return g.coeffs[offsets[label] : offsets[label] + d * d].reshape(d, d)


def group_irrep(q: Aqg, group: IntrinsicGroup, label: str) -> list[Array]:
    """The recovered representation of the intrinsic group on H_label."""
    return [group_block(q, g, label) for g in group.elements]


def verify_group_irrep(q: Aqg, group: IntrinsicGroup, label: str,
                       tol: Tolerance = DEFAULT_TOL) -> Report:
    rep = Report(f"group-irrep-{label}")
    mats = group_irrep(q, group, label)
    worst = 0.0
    for m in mats:
        worst = max(worst, residual(dagger(m) @ m, eye(m.shape[0])))
    rep.add("unitary", label, worst, worst <= tol.bound(1.0) * 1e4)
    worst = 0.0
    for a in range(group.order):
        for b in range(group.order):
            worst = max(worst, residual(mats[a] @ mats[b],
                                        mats[group.table[a, b]]))
    rep.add("homomorphism", label, worst, worst <= tol.bound(1.0) * 1e4)
    res = residual(mats[group.identity], eye(mats[0].shape[0]))
    rep.add("identity", label, res, res <= tol.bound(1.0) * 1e4)
    return rep


def rep_to_group_rep(q: Aqg, pi, group: IntrinsicGroup,
                     tol: Tolerance = DEFAULT_TOL):
    """u_pi(g) = pi(g) for each group element; returns (matrices, Report)."""
    from .rep import hom_reps

    mats = [pi.act(q, g.element(q)) for g in group.elements]
    rep = Report("group-rep")
    worst = 0.0
    for m in mats:
        worst = max(worst, residual(dagger(m) @ m, eye(m.shape[0])))
    rep.add("unitary", "all elements", worst, worst <= tol.bound(1.0) * 1e4)
    worst = 0.0
    for a in range(group.order):
        for b in range(group.order):
            worst = max(worst, residual(mats[a] @ mats[b],
                                        mats[group.table[a, b]]))
    rep.add("homomorphism", "table products", worst,
            worst <= tol.bound(1.0) * 1e4)
    res = residual(mats[group.identity], eye(mats[0].shape[0]))
    rep.add("identity", "u(e) = I", res, res <= tol.bound(1.0) * 1e4)
    n = mats[0].shape[0]
    stacked = np.concatenate(
        [np.kron(m.T, eye(n)) - np.kron(eye(n), m) for m in mats], axis=0
    )
    svals = np.linalg.svd(stacked, compute_uv=False)
    cutoff = tol.absolute * max(1.0, float(svals[0]))
    comm_dim = n * n - int(np.sum(svals > cutoff))
    hom_dim = len(hom_reps(q, pi, pi, tol))
    rep.add("commutant-dimension", f"{comm_dim} vs hom {hom_dim}", 0.0,
            comm_dim == hom_dim)
    return mats, rep


def cocommutative_check(q: Aqg, tol: Tolerance = DEFAULT_TOL):
    """Detect the group case: cocommutative coproduct and grouplike blocks
    spanning every B(H_i).  Returns (bool, Report)."""
    if not q.bundle.closed:
        raise NotFinite("cocommutativity check requires a closed bundle")
    rep = Report("cocommutative")
    T = table_from_aqg(q)
    ok, res = T.cocommutative(tol)
    rep.add("comult-symmetric", "all basis elements", res, ok)
    if ok:
        group, _, _, grep = grouplikes(q, tol)
        rep.add("intrinsic-group-valid", f"order {group.order}",
                grep.max_residual, grep.passed)
        spanned = True
        for i in q.labels:
            d = q.d(i)
            span = np.stack([
                group_block(q, g, i).reshape(-1) for g in group.elements
            ])
            svals = np.linalg.svd(span, compute_uv=False)
            rank = int(np.sum(svals > tol.absolute * max(1.0, float(svals[0]))))
            if rank != d * d:
                spanned = False
        rep.add("blocks-spanned", "grouplikes span each B(H_i)", 0.0, spanned)
    return rep.passed, rep


# ---------------------------------------------------------------------------
# abstract table isomorphism


def _orders(table: Array, ident: int) -> list[int]:
    n = table.shape[0]
    out = []
    for a in range(n):
        x, k = a, 1
        while x != ident:
            x = int(table[x, a])
            k += 1
        out.append(k)
    return out


def tables_isomorphic(t1: Array, id1: int, t2: Array, id2: int):
    """Backtracking isomorphism search between two group tables.

    Returns the mapping (index in group 1 -> index in group 2) or None.
    Intended for small orders.
    """
    t1 = np.asarray(t1)
    t2 = np.asarray(t2)
    n = t1.shape[0]
    if t2.shape[0] != n:
        return None
    o1, o2 = _orders(t1, id1), _orders(t2, id2)
    if sorted(o1) != sorted(o2):
        return None
    phi = [-1] * n
    used = [False] * n
    phi[id1] = id2
    used[id2] = True

    def consistent(a: int) -> bool:
        for x in range(n):
            if phi[x] < 0:
                continue
            for y, z in ((a, x), (x, a)):
                if phi[y] < 0 or phi[z] < 0:
                    continue
                p = int(t1[y, z])
                im = int(t2[phi[y], phi[z]])
                if phi[p] >= 0:
                    if phi[p] != im:
                        return False
                elif used[im]:
                    return False
        return True

    def extend(a: int) -> bool:
        while a < n and phi[a] >= 0:
            a += 1
        if a == n:
            return True
        for b in range(n):
            if used[b] or o2[b] != o1[a]:
                continue
            phi[a] = b
            used[b] = True
            if consistent(a) and extend(a + 1):
                return True
            phi[a] = -1
            used[b] = False
        return False

    return phi if extend(0) else None
