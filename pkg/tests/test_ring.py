import pytest
from hypothesis import given, strategies as st

from hwtheta.errors import (DeclaredPrimeInvalid, NotGraded, NotNonZeroDivisor,
                            SearchExhausted)
from hwtheta.gb import vec_from_polys
from hwtheta.ring import find_nonzerodivisor, is_nonzerodivisor, make_ring


def test_corpus_rings_build(C):
    assert len(C.R1.minimal_primes) == 3
    assert C.R3.split is not None
    assert C.R3.split.f == C.R3.ambient("x^3-z^2")


def test_non_graded_ideal():
    with pytest.raises(NotGraded):
        make_ring(["x", "y"], [1, 1], ideal_gens=["x+y^2"])


def test_bad_prime():
    with pytest.raises(DeclaredPrimeInvalid):
        make_ring(["x", "y"], [1, 1], ideal_gens=["x*y*(x-y)"], minimal_primes=[["x+y"]])
    with pytest.raises(DeclaredPrimeInvalid):
        make_ring(["x", "y"], [1, 1], ideal_gens=["x*y"], minimal_primes=[["x", "y"], ["y"]])


def test_bad_split():
    with pytest.raises(NotNonZeroDivisor):
        make_ring(["x", "y"], [1, 1], ideal_gens=["x*y", "x^2"],
                  hypersurface_split=(["x^2"], "x*y"))
    with pytest.raises(NotNonZeroDivisor):
        make_ring(["x", "y"], [1, 1], ideal_gens=["x*y"], hypersurface_split=([], "x"))


def test_nonzerodivisors(C):
    assert is_nonzerodivisor("x+2*y", C.R1)
    assert not is_nonzerodivisor("x", C.R1)
    assert is_nonzerodivisor("1", C.R1)
    assert not is_nonzerodivisor("x*y*(x-y)", C.R1)


def test_search_order(C):
    # x and y are zero-divisors on R1; x + y is the first same-weight combination
    t = find_nonzerodivisor(C.R1)
    assert t == C.R1.ambient("x+y")
    assert find_nonzerodivisor(C.R3) == C.R3.ambient("x")
    assert find_nonzerodivisor(C.R4) == C.R4.ambient("x")
    assert find_nonzerodivisor(C.R2) == C.R2.ambient("x+y")


def test_artinian_search_fails():
    R = make_ring(["x"], [1], ideal_gens=["x^2"])
    with pytest.raises(SearchExhausted):
        find_nonzerodivisor(R)


def test_declared_primes_contain_ideal(C):
    for R in (C.R1, C.R2, C.R3, C.R4, C.R5):
        for p in R.minimal_primes:
            assert p.gb.contains_basis(R.ideal)


@pytest.mark.parametrize("name", ["R1", "R2", "R3", "R4"])
def test_normal_form_is_multiplicative(C, name):
    R = getattr(C, name)
    P = R.ambient
    xs = P.gens()

    @given(st.lists(st.integers(0, 3), min_size=len(xs), max_size=len(xs)),
           st.lists(st.integers(0, 3), min_size=len(xs), max_size=len(xs)))
    def check(e1, e2):
        a = P.monomial(e1) + P.monomial(e2[::-1]) if len(xs) == 2 else P.monomial(e1)
        b = P.monomial(e2)
        assert R.reduce(a * b) == R.reduce(R.reduce(a) * R.reduce(b))

    check()


def test_split_f_injective_on_samples(C):
    sp = C.R3.split
    P = C.R3.ambient
    base = sp.base_gb
    for text in ["x", "y", "z", "x*y", "y*z", "x^2*z", "y^3"]:
        g = P(text)
        if base.contains(vec_from_polys([g])):
            continue
        assert not base.contains(vec_from_polys([g * sp.f]))
