import pytest
from hypothesis import given, strategies as st

from triorbit import GF, NonPrimeModulus, ZeroInverse, is_prime


def test_context_construction():
    assert GF(2).p == 2
    assert GF(5).p == 5
    with pytest.raises(NonPrimeModulus):
        GF(6)
    with pytest.raises(NonPrimeModulus):
        GF(1)
    with pytest.raises(NonPrimeModulus):
        GF(0)


def test_smallest_prime_elements():
    f = GF(2)
    assert list(f.elements()) == [0, 1]


def test_modular_arithmetic_gf5():
    f = GF(5)
    assert f.add(3, 4) == 2
    assert f.mul(3, 4) == 2
    assert f.sub(1, 3) == 3
    assert f.neg(2) == 3


def test_inverse_values():
    assert GF(5).inv(2) == 3
    assert GF(7).inv(3) == 5
    for p in (2, 3, 5, 7, 11):
        assert GF(p).inv(1) == 1


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroInverse):
        GF(5).inv(0)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_axioms_exhaustive(p):
    f = GF(p)
    elems = list(f.elements())
    for a in elems:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
        for b in elems:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in elems:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers())
def test_element_reduction_is_canonical(p, v):
    f = GF(p)
    assert 0 <= f.element(v) < p


def test_is_prime_small_values():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}
    for n in range(31):
        assert is_prime(n) == (n in primes)
