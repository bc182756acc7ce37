import numpy as np
import pytest

from aqgrec.aqg import NotFinite
from aqgrec.examples import builtin_group
from aqgrec.group import (
    cocommutative_check,
    grouplikes,
    group_irrep,
    rep_to_group_rep,
    tables_isomorphic,
    verify_group_irrep,
)
from aqgrec.linalg import residual
from aqgrec.rep import irrep, tensor_rep

GROUP_ORDERS = {"z2": 2, "z5": 5, "s3": 6, "d4": 8, "q8": 8}
ABELIAN = {"z2": True, "z5": True, "s3": False, "d4": False, "q8": False}


def test_group_recovery_matches_generator(shipped_aqgs):
    for name, order in GROUP_ORDERS.items():
        group, _, _, rep = grouplikes(shipped_aqgs[name])
        assert rep.passed, f"{name}: {rep.failures()}"
        assert group.order == order, name
        assert group.abelian() == ABELIAN[name], name
        p = builtin_group(name)
        phi = tables_isomorphic(
            group.table, group.identity, np.array(p.table), p.identity()
        )
        assert phi is not None, name


def test_pointed_bundles_recover_cyclic_groups(shipped_aqgs):
    for n in (2, 3, 5):
        group, _, _, rep = grouplikes(shipped_aqgs[f"pointed-z{n}-t1"])
        assert rep.passed and group.order == n
        p = builtin_group(f"z{n}")
        assert tables_isomorphic(
            group.table, group.identity, np.array(p.table), p.identity()
        ) is not None


def test_group_requires_closed_bundle(suq2_half):
    with pytest.raises(NotFinite):
        grouplikes(suq2_half)


def test_d4_and_q8_are_not_isomorphic():
    d4, q8 = builtin_group("d4"), builtin_group("q8")
    assert tables_isomorphic(
        np.array(d4.table), d4.identity(), np.array(q8.table), q8.identity()
    ) is None


def test_element_order_and_inverse(shipped_aqgs):
    group, _, _, _ = grouplikes(shipped_aqgs["q8"])
    orders = sorted(group.element_order(a) for a in range(group.order))
    # quaternion group: one identity, one element of order 2, six of order 4
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    for a in range(group.order):
        assert group.table[a, group.inverse(a)] == group.identity


def test_recovered_blocks_are_irreps(shipped_aqgs):
    q = shipped_aqgs["s3"]
    group, _, _, _ = grouplikes(q)
    for i in q.labels:
        rep = verify_group_irrep(q, group, i)
        assert rep.passed, (i, rep.failures())
    # character orthogonality certifies irreducibility and inequivalence
    chars = np.array(
        [[np.trace(m) for m in group_irrep(q, group, i)] for i in q.labels]
    )
    gram = chars @ chars.conj().T / group.order
    assert residual(gram, np.eye(len(q.labels))) < 1e-8


def test_rep_to_group_rep_on_tensor_product(shipped_aqgs):
    q = shipped_aqgs["s3"]
    group, _, _, _ = grouplikes(q)
    two = [i for i in q.labels if q.d(i) == 2][0]
    pi = tensor_rep(q, irrep(q, two), irrep(q, two))
    mats, rep = rep_to_group_rep(q, pi, group)
    assert rep.passed, rep.failures()
    # 2 (x) 2 = 1 + 1' + 2: three inequivalent summands, commutant dim 3
    assert len(mats) == group.order


def test_cocommutative_detection(shipped_aqgs):
    for name in ("z2", "s3", "q8", "pointed-z3-t1"):
        flag, rep = cocommutative_check(shipped_aqgs[name])
        assert flag, (name, rep.failures())
        assert rep.passed
