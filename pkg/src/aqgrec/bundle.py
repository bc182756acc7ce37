"""CategoryBundle: the on-disk presentation of a concrete semisimple tensor
*-category with conjugates and optional braiding.

File format (Category Bundle v1) is UTF-8 JSON:

    { "version": 1, "labels": [...], "unit": "...", "dims": {label: int},
      "dual": {label: label}, "closed": bool,
      "fusion": [ {"i","j","k","isometries": [matrix,...]}, ... ],
      "conj": {label: {"r": vector, "rbar": vector}},
      "braiding": [ {"i","j","c": matrix}, ... ] }            (optional)

A matrix is {"rows", "cols", "data": [[re,im],...]} in row-major order and a
vector is {"len", "data": [[re,im],...]}.  A missing (i,j,k) entry means
N_{ij}^k = 0.  Label order in "labels" fixes the block order everywhere.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_TOL, Array, Tolerance, cmat, dagger, eye, kron, residual
from .report import Report


class BundleSyntaxError(ValueError):
    """Raised when bundle text is not well-formed."""


class ShapeError(ValueError):
    """Raised when a matrix/vector in a bundle has inconsistent dimensions."""


@dataclass
class CategoryBundle:
    labels: list[str]
    unit: str
    dims: dict[str, int]
    dual: dict[str, str]
    fusion: dict[tuple[str, str], dict[str, list[Array]]]
    conj: dict[str, tuple[Array, Array]]
    braiding: dict[tuple[str, str], Array] | None = None
    closed: bool = True
    _support_cache: dict = field(default_factory=dict, repr=False)

    # -- basic accessors -------------------------------------------------
    def d(self, i: str) -> int:
        return self.dims[i]

    def N(self, i: str, j: str, k: str) -> int:
        return len(self.fusion.get((i, j), {}).get(k, []))

    def isometries(self, i: str, j: str, k: str) -> list[Array]:
        return self.fusion.get((i, j), {}).get(k, [])

    def support(self, i: str, j: str) -> list[tuple[str, int]]:
        """Loaded fusion channels of i (x) j, in label order."""
        key = (i, j)
        if key not in self._support_cache:
            chans = self.fusion.get(key, {})
            self._support_cache[key] = [
                (k, len(chans[k])) for k in self.labels if chans.get(k)
            ]
        return self._support_cache[key]

    def complete(self, i: str, j: str) -> bool:
        """True when all summands of i (x) j lie inside the loaded window."""
        return sum(n * self.d(k) for k, n in self.support(i, j)) == self.d(i) * self.d(j)

    def conj_pair(self, i: str) -> tuple[Array, Array]:
        return self.conj[i]


# ---------------------------------------------------------------------------
# parsing / serialization


def _parse_matrix(obj, where: str) -> Array:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleSyntaxError(f"malformed matrix at {where}: {exc}") from None
    if len(data) != rows * cols:
        raise ShapeError(f"matrix at {where}: {len(data)} entries for {rows}x{cols}")
    try:
        flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise BundleSyntaxError(f"bad matrix entry at {where}: {exc}") from None
    return flat.reshape(rows, cols)


def _parse_vector(obj, where: str) -> Array:
    try:
        n, data = int(obj["len"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleSyntaxError(f"malformed vector at {where}: {exc}") from None
    if len(data) != n:
        raise ShapeError(f"vector at {where}: {len(data)} entries for len {n}")
    try:
        return np.array([complex(re, im) for re, im in data], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise BundleSyntaxError(f"bad vector entry at {where}: {exc}") from None


def parse_bundle(text: str) -> CategoryBundle:
    """Parse Category Bundle v1 text.  Checks shapes only, not the mathematics."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleSyntaxError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise BundleSyntaxError("top level must be a JSON object")
    if doc.get("version") != 1:
        raise BundleSyntaxError(f"unsupported version {doc.get('version')!r}")
    for key in ("labels", "unit", "dims", "dual", "closed", "fusion", "conj"):
        if key not in doc:
            raise BundleSyntaxError(f"missing key {key!r}")

    labels = [str(x) for x in doc["labels"]]
    if len(set(labels)) != len(labels):
        raise BundleSyntaxError("duplicate labels")
    lset = set(labels)
    unit = str(doc["unit"])
    if unit not in lset:
        raise BundleSyntaxError(f"unit label {unit!r} not in labels")

    dims = {}
    for i, v in doc["dims"].items():
        if i not in lset:
            raise BundleSyntaxError(f"dims mentions unknown label {i!r}")
        if not isinstance(v, int) or v < 1:
            raise BundleSyntaxError(f"dim of {i!r} must be a positive integer")
        dims[i] = v
    if set(dims) != lset:
        raise BundleSyntaxError("dims must cover every label")
    if dims[unit] != 1:
        raise ShapeError("unit label must have dimension 1")

    dual = {str(i): str(j) for i, j in doc["dual"].items()}
    if set(dual) != lset or not set(dual.values()) <= lset:
        raise BundleSyntaxError("dual map must be a self-map of the label set")

    fusion: dict[tuple[str, str], dict[str, list[Array]]] = {}
    for ent in doc["fusion"]:
        try:
            i, j, k = str(ent["i"]), str(ent["j"]), str(ent["k"])
            mats = ent["isometries"]
        except (KeyError, TypeError) as exc:
            raise BundleSyntaxError(f"malformed fusion entry: {exc}") from None
        for lab in (i, j, k):
            if lab not in lset:
                raise BundleSyntaxError(f"fusion entry uses unknown label {lab!r}")
        where = f"fusion({i},{j}->{k})"
        parsed = [_parse_matrix(m, where) for m in mats]
        want = (dims[i] * dims[j], dims[k])
        for m in parsed:
            if m.shape != want:
                raise ShapeError(f"{where}: isometry shape {m.shape}, expected {want}")
        if parsed:
            fusion.setdefault((i, j), {}).setdefault(k, []).extend(parsed)

    conj = {}
    for i, ent in doc["conj"].items():
        if i not in lset:
            raise BundleSyntaxError(f"conj mentions unknown label {i!r}")
        r = _parse_vector(ent["r"], f"conj({i}).r")
        rbar = _parse_vector(ent["rbar"], f"conj({i}).rbar")
        di, dib = dims[i], dims[dual[i]]
        if r.shape != (dib * di,):
            raise ShapeError(f"conj({i}).r has length {r.shape[0]}, expected {dib * di}")
        if rbar.shape != (di * dib,):
            raise ShapeError(
                f"conj({i}).rbar has length {rbar.shape[0]}, expected {di * dib}"
            )
        conj[i] = (r, rbar)
    if set(conj) != lset:
        raise BundleSyntaxError("conj must cover every label")

    braiding = None
    if doc.get("braiding") is not None:
        braiding = {}
        for ent in doc["braiding"]:
            try:
                i, j = str(ent["i"]), str(ent["j"])
            except (KeyError, TypeError) as exc:
                raise BundleSyntaxError(f"malformed braiding entry: {exc}") from None
            if i not in lset or j not in lset:
                raise BundleSyntaxError(f"braiding entry uses unknown label")
            c = _parse_matrix(ent["c"], f"braiding({i},{j})")
            want = (dims[j] * dims[i], dims[i] * dims[j])
            if c.shape != want:
                raise ShapeError(f"braiding({i},{j}): shape {c.shape}, expected {want}")
            braiding[(i, j)] = c

    return CategoryBundle(
        labels=labels,
        unit=unit,
        dims=dims,
        dual=dual,
        fusion=fusion,
        conj=conj,
        braiding=braiding,
        closed=bool(doc["closed"]),
    )


def _dump_matrix(m: Array) -> dict:
    m = cmat(m)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def _dump_vector(v: Array) -> dict:
    v = cmat(v).reshape(-1)
    return {"len": int(v.shape[0]), "data": [[float(z.real), float(z.imag)] for z in v]}


def serialize_bundle(b: CategoryBundle) -> str:
    """Serialize to Category Bundle v1 text; parse(serialize(b)) reproduces b."""
    doc = {
        "version": 1,
        "labels": list(b.labels),
        "unit": b.unit,
        "dims": {i: int(b.dims[i]) for i in b.labels},
        "dual": {i: b.dual[i] for i in b.labels},
        "closed": bool(b.closed),
        "fusion": [
            {"i": i, "j": j, "k": k, "isometries": [_dump_matrix(m) for m in mats]}
            for i in b.labels
            for j in b.labels
            for k in b.labels
            for mats in [b.isometries(i, j, k)]
            if mats
        ],
        "conj": {
            i: {"r": _dump_vector(b.conj[i][0]), "rbar": _dump_vector(b.conj[i][1])}
            for i in b.labels
        },
    }
    if b.braiding is not None:
        doc["braiding"] = [
            {"i": i, "j": j, "c": _dump_matrix(b.braiding[(i, j)])}
            for i in b.labels
            for j in b.labels
            if (i, j) in b.braiding
        ]
    # repr-style floats keep 17 significant digits and roundtrip exactly
    return json.dumps(doc, indent=1)


# ---------------------------------------------------------------------------
# validation


def validate_bundle(
    b: CategoryBundle,
    tol: Tolerance = DEFAULT_TOL,
    check_braiding_unitarity: bool = True,
    fail_fast: bool = False,
) -> Report:
    """Run the mathematical consistency checks on a bundle.

    Checks, in order: involution/unit structure, isometry orthonormality,
    completeness (skipped where a window loses summands), unit/dual fusion
    constraints and fusion symmetries, conjugate equations with normalization
    and the channel-0 membership of r, recoupling consistency, and the
    braiding identities when braiding data is present.  Failures are
    reported, never raised.
    """
    rep = Report("bundle-validation")

    def done() -> bool:
        return fail_fast and not rep.passed

    # structural involution facts
    inv_res = 0.0 if all(b.dual[b.dual[i]] == i for i in b.labels) else 1.0
    rep.add("dual-involution", "all", inv_res, inv_res == 0.0)
    rep.add(
        "dual-fixes-unit", b.unit, 0.0 if b.dual[b.unit] == b.unit else 1.0,
        b.dual[b.unit] == b.unit,
    )
    if done():
        return rep

    # orthonormality of fusion isometries: v_a* v_b = delta_ab I
    for (i, j), chans in sorted(b.fusion.items()):
        for k in sorted(chans):
            mats = chans[k]
            worst = 0.0
            for a, va in enumerate(mats):
                for c in range(a, len(mats)):
                    g = dagger(va) @ mats[c]
                    target = eye(b.d(k)) if a == c else 0.0 * g
                    worst = max(worst, residual(g, target))
            rep.add("orthonormality", f"({i},{j})->{k}", worst, worst <= tol.bound(1.0))
            if done():
                return rep

    # completeness: sum of v v* over loaded channels
    for i in b.labels:
        for j in b.labels:
            dij = b.d(i) * b.d(j)
            if not b.complete(i, j):
                if b.closed:
                    rep.add("completeness", f"({i},{j})", 1.0, False)
                else:
                    rep.skip("completeness", f"({i},{j}) window")
                if done():
                    return rep
                continue
            acc = np.zeros((dij, dij), dtype=complex)
            for k, _ in b.support(i, j):
                for v in b.isometries(i, j, k):
                    acc += v @ dagger(v)
            res = residual(acc, eye(dij))
            rep.add("completeness", f"({i},{j})", res, res <= tol.bound(1.0))
            if done():
                return rep

    # unit and dual fusion constraints
    worst_unit = 0.0
    ok_unit = True
    for j in b.labels:
        for k in b.labels:
            if b.N(b.unit, j, k) != (1 if j == k else 0):
                ok_unit = False
            if b.N(j, b.unit, k) != (1 if j == k else 0):
                ok_unit = False
        n0 = b.N(j, b.dual[j], b.unit)
        if n0 != 1:
            ok_unit = False
        for jj in b.labels:
            if jj != b.dual[j] and b.N(j, jj, b.unit) != 0:
                ok_unit = False
    rep.add("unit-dual-fusion-rules", "all", 0.0 if ok_unit else 1.0, ok_unit)
    if done():
        return rep

    # Frobenius fusion symmetries where every participant is loaded
    sym_ok = True
    for (i, j), chans in b.fusion.items():
        for k in chans:
            n = b.N(i, j, k)
            if b.complete(k, b.dual[j]) and n != b.N(k, b.dual[j], i):
                sym_ok = False
            if b.complete(b.dual[i], k) and n != b.N(b.dual[i], k, j):
                sym_ok = False
    rep.add("fusion-symmetries", "all", 0.0 if sym_ok else 1.0, sym_ok)
    if done():
        return rep

    # conjugate equations, normalization, r in the unit fusion channel
    for i in b.labels:
        ib = b.dual[i]
        di, dib = b.d(i), b.d(ib)
        r, rbar = b.conj[i]
        rc, rbc = r.reshape(-1, 1), rbar.reshape(-1, 1)
        lhs1 = kron(dagger(rbc), eye(di)) @ kron(eye(di), rc)
        lhs2 = kron(dagger(rc), eye(dib)) @ kron(eye(dib), rbc)
        res1 = residual(lhs1, eye(di))
        res2 = residual(lhs2, eye(dib))
        rep.add("conjugate-equation", f"{i} zigzag", max(res1, res2),
                max(res1, res2) <= tol.bound(1.0, r))
        nres = abs(float(np.vdot(r, r).real - np.vdot(rbar, rbar).real))
        rep.add("conjugate-normalization", i, nres, nres <= tol.bound(r, rbar))
        # r must live in the unit channel of ibar (x) i
        chan = b.isometries(ib, i, b.unit)
        if chan:
            basis = np.column_stack([v.reshape(-1) for v in chan])
            proj = basis @ dagger(basis)
            pres = residual(proj @ r, r)
            rep.add("r-in-unit-channel", i, pres, pres <= tol.bound(r))
        else:
            rep.add("r-in-unit-channel", i, 1.0, False)
        if done():
            return rep

    # recoupling: left- vs right-bracketed isotypic projections agree
    for i in b.labels:
        for j in b.labels:
            if not b.complete(i, j):
                continue
            for k in b.labels:
                ok_all = (
                    b.complete(j, k)
                    and all(b.complete(i, l) for l, _ in b.support(j, k))
                    and all(b.complete(l, k) for l, _ in b.support(i, j))
                )
                if not ok_all:
                    if not b.closed:
                        rep.skip("recoupling", f"({i},{j},{k}) window")
                    continue
                dijk = b.d(i) * b.d(j) * b.d(k)
                targets = set(
                    m for l, _ in b.support(i, j) for m, _ in b.support(l, k)
                ) | set(m for l, _ in b.support(j, k) for m, _ in b.support(i, l))
                for m in sorted(targets, key=b.labels.index):
                    left = np.zeros((dijk, dijk), dtype=complex)
                    for l, _ in b.support(i, j):
                        for v in b.isometries(i, j, l):
                            for w in b.isometries(l, k, m):
                                u = kron(v, eye(b.d(k))) @ w
                                left += u @ dagger(u)
                    right = np.zeros((dijk, dijk), dtype=complex)
                    for l, _ in b.support(j, k):
                        for v in b.isometries(j, k, l):
                            for w in b.isometries(i, l, m):
                                u = kron(eye(b.d(i)), v) @ w
                                right += u @ dagger(u)
                    res = residual(left, right)
                    rep.add("recoupling", f"({i},{j},{k})->{m}", res,
                            res <= tol.bound(left, right))
                    if done():
                        return rep

    # braiding identities
    if b.braiding is not None:
        _validate_braiding(b, tol, check_braiding_unitarity, rep, done)
    return rep


def _validate_braiding(b, tol, check_unitarity, rep, done):
    missing = [
        (i, j) for i in b.labels for j in b.labels if (i, j) not in b.braiding
    ]
    rep.add("braiding-coverage", "all", float(len(missing)), not missing)
    if missing or done():
        return

    u = b.unit
    for j in b.labels:
        res = max(
            residual(b.braiding[(u, j)], eye(b.d(j))),
            residual(b.braiding[(j, u)], eye(b.d(j))),
        )
        rep.add("braiding-unit", j, res, res <= tol.bound(1.0))
        if done():
            return

    if check_unitarity:
        for (i, j), c in sorted(b.braiding.items()):
            res = residual(dagger(c) @ c, eye(b.d(i) * b.d(j)))
            rep.add("braiding-unitarity", f"({i},{j})", res, res <= tol.bound(1.0))
            if done():
                return

    # naturality hexagons against every loaded fusion isometry
    for (i, j), chans in sorted(b.fusion.items()):
        for k in sorted(chans):
            for m in b.labels:
                di, dj, dm = b.d(i), b.d(j), b.d(m)
                for alpha, v in enumerate(chans[k]):
                    # c_{i (x) j, m} compatibility: move m leftwards past v
                    lhs = (
                        kron(b.braiding[(i, m)], eye(dj))
                        @ kron(eye(di), b.braiding[(j, m)])
                        @ kron(v, eye(dm))
                    )
                    rhs = kron(eye(dm), v) @ b.braiding[(k, m)]
                    res = residual(lhs, rhs)
                    rep.add("braiding-hexagon-left", f"({i},{j})->{k}#{alpha} vs {m}",
                            res, res <= tol.bound(lhs, rhs))
                    # mirror: braid m leftwards into i (x) j
                    lhs2 = (
                        kron(eye(di), b.braiding[(m, j)])
                        @ kron(b.braiding[(m, i)], eye(dj))
                        @ kron(eye(dm), v)
                    )
                    rhs2 = kron(v, eye(dm)) @ b.braiding[(m, k)]
                    res2 = residual(lhs2, rhs2)
                    rep.add("braiding-hexagon-right", f"({i},{j})->{k}#{alpha} vs {m}",
                            res2, res2 <= tol.bound(lhs2, rhs2))
                    if done():
                        return
