import numpy as np
import pytest

from aqgrec.linalg import dagger, residual
from aqgrec.rep import (
    conjugate_rep,
    counit_rep,
    decompose_rep,
    dimension,
    direct_sum,
    hom_reps,
    irrep,
    tensor_rep,
)


def test_irrep_is_a_star_homomorphism(s3_aqg, rng):
    q = s3_aqg
    for i in q.labels:
        pi = irrep(q, i)
        a, c = q.random_element(rng), q.random_element(rng)
        assert residual(pi.act(q, a.mul(c)), pi.act(q, a) @ pi.act(q, c)) < 1e-10
        assert residual(pi.act(q, a.star()), dagger(pi.act(q, a))) < 1e-12
        assert residual(pi.act(q, q.identity_element()), np.eye(q.d(i))) < 1e-12


def test_counit_rep_is_one_dimensional(shipped_aqgs):
    for q in shipped_aqgs.values():
        assert counit_rep(q).space_dim == 1


def test_quantum_dimension_of_irreps(shipped_aqgs):
    # group categories: dimension = vector space dimension
    for name in ("s3", "d4", "q8"):
        q = shipped_aqgs[name]
        for i in q.labels:
            assert abs(dimension(q, irrep(q, i)) - q.d(i)) < 1e-9
    # deformed case: q-integers [n+1]_q at q = 1/2
    q = shipped_aqgs["suq2-q0.5-L4"]
    qq = 0.5
    for n, want in enumerate(
        (qq ** (m + 1) - qq ** -(m + 1)) / (qq - 1 / qq) for m in range(5)
    ):
        assert abs(dimension(q, irrep(q, str(n))) - want) < 1e-9


def test_dimension_is_additive_and_multiplicative(suq2_half):
    q = suq2_half
    p1, p2 = irrep(q, "1"), irrep(q, "2")
    assert abs(
        dimension(q, direct_sum(q, [p1, p2])) - dimension(q, p1) - dimension(q, p2)
    ) < 1e-9
    assert abs(
        dimension(q, tensor_rep(q, p1, p2)) - dimension(q, p1) * dimension(q, p2)
    ) < 1e-9


def test_tensor_rep_acts_through_the_coproduct(s3_aqg, rng):
    q = s3_aqg
    two = [i for i in q.labels if q.d(i) == 2][0]
    pi = tensor_rep(q, irrep(q, two), irrep(q, two))
    a, c = q.random_element(rng), q.random_element(rng)
    # still a *-homomorphism on the product space
    assert residual(pi.act(q, a.mul(c)), pi.act(q, a) @ pi.act(q, c)) < 1e-9
    assert residual(pi.act(q, a.star()), dagger(pi.act(q, a))) < 1e-10
    assert residual(pi.act(q, q.identity_element()), np.eye(4)) < 1e-10


def test_hom_reps_dimensions_match_fusion_rules(shipped_aqgs):
    for name in ("s3", "q8", "suq2-q1.0-L4"):
        q = shipped_aqgs[name]
        b = q.bundle
        for i in q.labels:
            for j in q.labels:
                if not b.complete(i, j):
                    continue
                prod = tensor_rep(q, irrep(q, i), irrep(q, j))
                for k in q.labels:
                    assert len(hom_reps(q, irrep(q, k), prod)) == b.N(i, j, k)


def test_intertwiners_actually_intertwine(suq2_half, rng):
    q = suq2_half
    prod = tensor_rep(q, irrep(q, "1"), irrep(q, "1"))
    a = q.random_element(rng)
    for k in ("0", "2"):
        pk = irrep(q, k)
        for t in hom_reps(q, pk, prod):
            assert residual(t @ pk.act(q, a), prod.act(q, a) @ t) < 1e-9


def test_conjugate_rep_solves_conjugate_equations(shipped_aqgs):
    for name in ("s3", "suq2-q0.5-L4"):
        q = shipped_aqgs[name]
        sup = q.labels if name == "s3" else ["1", "2"]
        for i in sup:
            pi = irrep(q, i)
            pibar, r, rbar = conjugate_rep(q, pi)
            n = pi.space_dim
            assert pibar.space_dim == n
            rm, rbm = r.reshape(n, n), rbar.reshape(n, n)
            # the pair relation and the quantum-dimension normalization
            assert residual(rbm, np.linalg.inv(rm).conj()) < 1e-9
            qd = dimension(q, pi)
            assert abs(np.vdot(r, r) - qd) < 1e-8
            assert abs(np.vdot(rbar, rbar) - qd) < 1e-8


def test_decompose_rep_returns_validated_parts(s3_aqg):
    q = s3_aqg
    two = [i for i in q.labels if q.d(i) == 2][0]
    pi = tensor_rep(q, irrep(q, two), irrep(q, two))
    parts = decompose_rep(q, pi)
    assert sorted(i for i, _ in parts) == sorted(
        k for k in q.labels for _ in range(q.bundle.N(two, two, k))
    )
    for i, s in parts:
        assert s.shape == (4, q.d(i))


def test_direct_sum_block_action(s3_aqg, rng):
    q = s3_aqg
    pis = [irrep(q, i) for i in q.labels]
    total = direct_sum(q, pis)
    a = q.random_element(rng)
    m = total.act(q, a)
    off = 0
    for pi in pis:
        d = pi.space_dim
        assert residual(m[off : off + d, off : off + d], pi.act(q, a)) < 1e-12
        off += d
    assert total.space_dim == off
