import numpy as np
import pytest

from aqgrec.braid import (
    MissingBraiding,
    RMatrix,
    braiding_to_r,
    r_to_braiding,
    r_to_braiding_blocks,
    triangularity,
    verify_quasitriangular,
)
from aqgrec.linalg import flip, residual
from aqgrec.rep import irrep


def test_quasitriangular_suite_on_pointed_bundles(shipped_aqgs):
    for n in (2, 3, 5):
        q = shipped_aqgs[f"pointed-z{n}-t1"]
        R = braiding_to_r(q)
        rep = verify_quasitriangular(q, R)
        assert rep.passed, f"z{n}: {rep.failures()}"
        assert rep.max_residual < 1e-10


def test_triangularity_detects_symmetric_braidings(shipped_aqgs):
    # w^{jk} on Z/n is a symmetric bicharacter only for n = 2
    for n, want in ((2, True), (3, False), (5, False)):
        q = shipped_aqgs[f"pointed-z{n}-t1"]
        tri, res = triangularity(q, braiding_to_r(q))
        assert tri == want, n
        if want:
            assert res < 1e-12


def test_group_bundle_braiding_is_trivial(shipped_aqgs):
    q = shipped_aqgs["s3"]
    R = braiding_to_r(q)
    rep = verify_quasitriangular(q, R)
    assert rep.passed, rep.failures()
    for (i, j), m in R.blocks.items():
        assert residual(m, np.eye(m.shape[0])) < 1e-12
    tri, res = triangularity(q, R)
    assert tri and res < 1e-12


def test_braiding_roundtrip_is_exact(shipped_aqgs):
    for name in ("pointed-z3-t1", "s3"):
        q = shipped_aqgs[name]
        R = braiding_to_r(q)
        back = r_to_braiding_blocks(q, R)
        for key, c in q.bundle.braiding.items():
            assert residual(back[key], c) == 0.0, (name, key)


def test_rep_level_braiding_intertwines(shipped_aqgs):
    q = shipped_aqgs["pointed-z5-t1"]
    R = braiding_to_r(q)
    pi, pi2 = irrep(q, "1"), irrep(q, "2")
    c = r_to_braiding(q, R, pi, pi2)
    # one-dim labels: the braiding is flip times the bicharacter phase
    w = np.exp(2j * np.pi / 5)
    assert residual(c, flip(1, 1) * w**2) < 1e-12


def test_random_unitary_is_not_an_r_matrix(shipped_aqgs, rng):
    q = shipped_aqgs["pointed-z3-t1"]
    blocks = {}
    for (i, j) in q.bundle.braiding:
        z = rng.standard_normal((1, 1)) + 1j * rng.standard_normal((1, 1))
        blocks[(i, j)] = z / np.abs(z)
    rep = verify_quasitriangular(q, RMatrix(blocks))
    assert not rep.passed


def test_missing_block_raises(shipped_aqgs):
    q = shipped_aqgs["pointed-z2-t1"]
    R = braiding_to_r(q)
    with pytest.raises(MissingBraiding):
        R.block("0", "bogus")


def test_sigma_and_inverse_are_consistent(shipped_aqgs):
    q = shipped_aqgs["pointed-z5-t1"]
    R = braiding_to_r(q)
    Rinv = R.inverse()
    for key, m in R.blocks.items():
        assert residual(Rinv.blocks[key] @ m, np.eye(m.shape[0])) < 1e-12
    # sigma is an involution on the block family
    sig2 = R.sigma(q).sigma(q)
    for key, m in R.blocks.items():
        assert residual(sig2.blocks[key], m) < 1e-12
