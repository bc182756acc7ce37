import numpy as np
import pytest

from aqgrec.examples import (
    BadPresentation,
    builtin_group,
    gen_finite_group,
    gen_pointed,
    gen_suq2,
)
from aqgrec.linalg import residual


def _trace_f(b, i):
    """Tr F_i computed straight from the conjugate pair of label i."""
    r, _ = b.conj_pair(i)
    rm = r.reshape(b.d(b.dual[i]), b.d(i))
    return float(np.trace(np.linalg.inv(rm.T @ rm.conj())).real)


GROUP_ORDERS = {"z2": 2, "z5": 5, "s3": 6, "d4": 8, "q8": 8}


def test_builtin_presentations_verify():
    for name, order in GROUP_ORDERS.items():
        p = builtin_group(name)
        p.verify()
        assert p.order == order
        assert sum(np.asarray(rep[0]).shape[0] ** 2 for rep in p.irreps) == order


def test_builtin_group_rejects_unknown():
    with pytest.raises(BadPresentation):
        builtin_group("monster")


def test_group_bundle_dims_follow_irreps(group_bundles):
    for name, order in GROUP_ORDERS.items():
        b = group_bundles[name]
        assert sum(b.d(i) ** 2 for i in b.labels) == order
        assert b.closed
        # group categories are integral: every J*J is the identity
        for i in b.labels:
            assert abs(_trace_f(b, i) - b.d(i)) < 1e-9, (name, i)


def test_group_bundle_fusion_matches_characters():
    p = builtin_group("s3")
    b = gen_finite_group(p)
    chars = np.array(
        [[np.trace(np.asarray(rep[g])) for g in range(p.order)] for rep in p.irreps]
    )
    for a, i in enumerate(b.labels):
        for c, j in enumerate(b.labels):
            prod = chars[a] * chars[c]
            for e, k in enumerate(b.labels):
                mult = int(round((prod @ chars[e].conj()).real / p.order))
                assert b.N(i, j, k) == mult


def test_gen_finite_group_accepts_name():
    b = gen_finite_group("z3")
    assert len(b.labels) == 3
    assert all(b.d(i) == 1 for i in b.labels)


def test_pointed_bundle_structure():
    for n in (2, 3, 5):
        b = gen_pointed(n, 1)
        assert len(b.labels) == n and b.unit == "0"
        assert all(b.d(i) == 1 for i in b.labels)
        w = np.exp(2j * np.pi / n)
        for j in range(n):
            for k in range(n):
                assert b.N(str(j), str(k), str((j + k) % n)) == 1
                c = b.braiding[(str(j), str(k))][0, 0]
                assert abs(c - w ** (j * k)) < 1e-12
        assert b.dual["1"] == str(n - 1)


def test_pointed_trivial_twist_has_trivial_braiding():
    b = gen_pointed(4, 0)
    for blk in b.braiding.values():
        assert residual(blk, np.eye(1)) == 0.0


def test_suq2_window_shape():
    for q in (1.0, 0.5):
        b = gen_suq2(q, 4)
        assert b.labels == ["0", "1", "2", "3", "4"]
        assert [b.d(i) for i in b.labels] == [1, 2, 3, 4, 5]
        assert not b.closed
        assert all(b.dual[i] == i for i in b.labels)
        # Clebsch-Gordan ladder: n (x) m contains |n-m| .. n+m step 2
        for n in range(5):
            for m in range(5):
                for k in range(5):
                    want = 1 if (abs(n - m) <= k <= n + m and (n + m - k) % 2 == 0) else 0
                    assert b.N(str(n), str(m), str(k)) == want


def test_suq2_quantum_dimensions_are_q_integers():
    q = 0.5
    b = gen_suq2(q, 4)
    for n in range(5):
        qint = (q ** (n + 1) - q ** (-(n + 1))) / (q - 1 / q)
        assert abs(_trace_f(b, str(n)) - qint) < 1e-9
    # spot values at q = 1/2
    assert abs(_trace_f(b, "1") - 2.5) < 1e-12
    assert abs(_trace_f(b, "2") - 5.25) < 1e-12
    assert abs(_trace_f(b, "3") - 10.625) < 1e-12


def test_suq2_fundamental_metric_spectrum():
    q = 0.5
    b = gen_suq2(q, 2)
    r, _ = b.conj_pair("1")
    jj = r.reshape(2, 2).T @ r.reshape(2, 2).conj()
    ev = sorted(np.linalg.eigvalsh(jj).real)
    assert abs(ev[0] - q) < 1e-10 and abs(ev[1] - 1 / q) < 1e-10


def test_suq2_classical_limit_is_integral():
    b = gen_suq2(1.0, 3)
    for i in b.labels:
        assert abs(_trace_f(b, i) - b.d(i)) < 1e-9


def test_generator_input_validation():
    with pytest.raises(ValueError):
        gen_suq2(1.5, 3)
    with pytest.raises(ValueError):
        gen_suq2(0.5, 0)
    with pytest.raises(ValueError):
        gen_pointed(0)
