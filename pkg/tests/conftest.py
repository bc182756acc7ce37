import numpy as np
import pytest

from aqgrec.aqg import reconstruct
from aqgrec.examples import builtin_group, gen_finite_group, gen_pointed, gen_suq2

GROUP_NAMES = ["z2", "z5", "s3", "d4", "q8"]
POINTED_PARAMS = [(2, 1), (3, 1), (5, 1)]
SUQ2_PARAMS = [(1.0, 4), (0.5, 4)]


@pytest.fixture(scope="session")
def group_bundles():
    return {name: gen_finite_group(builtin_group(name)) for name in GROUP_NAMES}


@pytest.fixture(scope="session")
def pointed_bundles():
    return {f"pointed-z{n}-t{t}": gen_pointed(n, t) for n, t in POINTED_PARAMS}


@pytest.fixture(scope="session")
def suq2_bundles():
    return {f"suq2-q{qq}-L{L}": gen_suq2(qq, L) for qq, L in SUQ2_PARAMS}


@pytest.fixture(scope="session")
def shipped_bundles(group_bundles, pointed_bundles, suq2_bundles):
    out = {}
    out.update(group_bundles)
    out.update(pointed_bundles)
    out.update(suq2_bundles)
    return out


@pytest.fixture(scope="session")
def shipped_aqgs(shipped_bundles):
    return {name: reconstruct(b) for name, b in shipped_bundles.items()}


@pytest.fixture(scope="session")
def closed_aqgs(shipped_aqgs):
    return {n: q for n, q in shipped_aqgs.items() if q.bundle.closed}


@pytest.fixture(scope="session")
def s3_aqg(shipped_aqgs):
    return shipped_aqgs["s3"]


@pytest.fixture(scope="session")
def suq2_half(shipped_aqgs):
    return shipped_aqgs["suq2-q0.5-L4"]


@pytest.fixture()
def rng():
    return np.random.default_rng(42)
