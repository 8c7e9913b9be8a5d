import pytest

from hwtheta import modops as mo
from hwtheta.errors import NotAFactorization, NotPeriodic, SizeMismatch
from hwtheta.homology import betti, resolve
from hwtheta.kernel import PolyRing
from hwtheta.mfact import (det_identity_holds, determinant, mf_cokernel, mf_from_resolution,
                           ring_for, verify_mf)
from hwtheta.ring import make_ring

import properties

PHI = [["-z", "x"], ["x^2", "-z"]]
PSI = [["z", "x"], ["x^2", "z"]]


def test_example_factorization(C):
    S = C.R3.base_ring()
    F = verify_mf(PHI, PSI, "x^3-z^2", S)
    assert F.reduced and F.size == 2
    assert det_identity_holds(F)
    M = mf_cokernel(F, C.R3)
    assert betti(resolve(M, 3)).to_json() == betti(resolve(C.M46, 3)).to_json()


def test_rejects_non_factorization(C):
    S = C.R3.base_ring()
    with pytest.raises(NotAFactorization) as e:
        verify_mf(PHI, [["z", "x"], ["x^2", "-z"]], "x^3-z^2", S)
    assert e.value.entry is not None
    with pytest.raises(SizeMismatch):
        verify_mf([["x"]], PSI, "x^3-z^2", S)
    with pytest.raises(SizeMismatch):
        verify_mf([["x", "y"]], [["x", "y"]], "x^3-z^2", S)


def test_trivial_factorization():
    P = PolyRing(["x", "y"])
    S = make_ring(P, ideal_gens=[])
    F = verify_mf([["1"]], [["x*y"]], "x*y", S)
    assert not F.reduced
    assert mf_cokernel(F).is_zero()
    # the other order presents R itself
    G = verify_mf([["x*y"]], [["1"]], "x*y", S)
    assert mo.is_free(mf_cokernel(G)) and mf_cokernel(G).num_gens == 1


def test_ring_for(C):
    S = C.R3.base_ring()
    R = ring_for(verify_mf(PHI, PSI, "x^3-z^2", S))
    assert R.ideal.same_module(C.R3.ideal)
    assert R.split.f == C.R3.split.f


def test_determinant():
    P = PolyRing(["x", "y"])
    from hwtheta.kernel import PolyMatrix
    m = PolyMatrix(P, [["x", "y", "0"], ["0", "x", "y"], ["y", "0", "x"]], [0, 0, 0])
    assert determinant(m) == P("x^3+y^3")


def test_round_trip(C):
    for M in (C.M1, C.Ny, C.N1, C.A, C.B, C.I, C.M46):
        F = mf_from_resolution(M)
        assert F is not None and F.reduced and det_identity_holds(F)
        N = mf_cokernel(F, M.ring)
        res = resolve(mo.syzygy_module(M, 2), 3)
        assert betti(resolve(N, 3)).to_json()["ranks"] == res.ranks()


def test_free_and_non_hypersurface(C):
    assert mf_from_resolution(C.F1) is None
    with pytest.raises(NotPeriodic):
        mf_from_resolution(C.N4)


def test_diagonal_sum(C):
    F = mf_from_resolution(mo.direct_sum([C.M1, C.M1]))
    assert F.size == 2
    assert det_identity_holds(F)
    N = mf_cokernel(F, C.R1)
    assert betti(resolve(N, 3)).to_json() == \
        betti(resolve(mo.direct_sum([C.M1, C.M1]), 3)).to_json()


def test_det_identity_suite(C):
    assert properties.suite_det_identity(C) >= 100
