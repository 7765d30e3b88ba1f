import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from discrete_ck.clifford import (Multivector, Signature, blade_product, generator, geometric_product,
                                  left_multiply, norm_inf, scalar, sign_table, witt_pair)
from discrete_ck.exceptions import SignatureMismatchError


def random_mv(sig, rng, density=0.5):
    dense = rng.standard_normal(sig.dim) + 1j * rng.standard_normal(sig.dim)
    dense[rng.random(sig.dim) > density] = 0
    return Multivector.from_dense(sig, dense)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_signature_counts(n):
    sig = Signature(n)
    squares = [sig.square(j) for j in range(sig.g)]
    assert squares.count(-1) == n + 1
    assert squares.count(1) == n + 1
    assert squares[: n + 1] == [-1] * (n + 1)


def test_signature_rejects_bad_n():
    with pytest.raises(ValueError):
        Signature(0)


def test_generator_examples():
    sig = Signature(1)
    assert generator(sig, 0).terms == {1: 1}
    assert generator(sig, 3).terms == {8: 1}
    with pytest.raises(IndexError):
        generator(sig, 4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generator_relations(n):
    sig = Signature(n)
    for j, k in itertools.product(range(sig.g), repeat=2):
        ej, ek = generator(sig, j), generator(sig, k)
        anti = ej * ek + ek * ej
        expected = 2 * sig.square(j) if j == k else 0
        assert anti == scalar(sig, expected)


def test_squares_of_first_time_and_space_generators():
    sig = Signature(1)
    assert generator(sig, 0) * generator(sig, 0) == -1
    assert generator(sig, 2) * generator(sig, 2) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_witt_identities(n):
    sig = Signature(n)
    ep, em = witt_pair(sig)
    assert ep * ep == 0
    assert em * em == 0
    assert ep * em + em * ep == 1
    assert generator(sig, 0) == em - ep
    assert generator(sig, sig.g - 1) == em + ep


def test_blade_product_reordering_sign():
    sig = Signature(1)
    # e1 e0 = -e0 e1
    assert blade_product(sig, 0b10, 0b01) == (-1, 0b11)
    # (e0 e1)(e0 e1) = -e0 e0 e1 e1 = -(-1)(-1) = -1
    assert blade_product(sig, 0b11, 0b11) == (-1, 0)


@pytest.mark.parametrize("n", [1, 2])
def test_sign_table_matches_blade_product(n):
    sig = Signature(n)
    table = sign_table(n)
    for a in range(sig.dim):
        for b in range(0, sig.dim, 7):
            assert table[a, b] == blade_product(sig, a, b)[0]


@given(st.integers(0, 2**31 - 1))
def test_associativity(seed):
    rng = np.random.default_rng(seed)
    sig = Signature(1)
    a, b, c = (random_mv(sig, rng) for _ in range(3))
    lhs = (a * b) * c
    rhs = a * (b * c)
    assert norm_inf(lhs - rhs) <= 1e-12 * (1 + norm_inf(lhs))


@given(st.integers(0, 2**31 - 1))
def test_identity_and_distributivity(seed):
    rng = np.random.default_rng(seed)
    sig = Signature(2)
    a, b, c = (random_mv(sig, rng, 0.2) for _ in range(3))
    assert scalar(sig, 1) * a == a
    assert norm_inf(a * (b + c) - (a * b + a * c)) <= 1e-12 * (1 + norm_inf(a) * (norm_inf(b) + norm_inf(c)))


def test_zero_terms_dropped():
    sig = Signature(1)
    mv = generator(sig, 1) - generator(sig, 1)
    assert len(mv) == 0
    assert mv == 0


def test_signature_mismatch():
    with pytest.raises(SignatureMismatchError):
        geometric_product(generator(Signature(1), 0), generator(Signature(2), 0))
    with pytest.raises(SignatureMismatchError):
        generator(Signature(1), 0) + generator(Signature(2), 0)


def test_norm_inf_and_dense_roundtrip():
    sig = Signature(1)
    mv = Multivector(sig, {0: 2, 5: -3j})
    assert norm_inf(mv) == 3
    assert Multivector.from_dense(sig, mv.to_dense()) == mv


@pytest.mark.parametrize("n", [1, 2])
def test_left_multiply_matches_sparse_product(n, rng):
    sig = Signature(n)
    a = random_mv(sig, rng, 0.3)
    vals = rng.standard_normal((5, sig.dim)) + 0j
    out = left_multiply(a, vals, n)
    dense_left = np.broadcast_to(a.to_dense(), vals.shape)
    out_dense = left_multiply(dense_left, vals, n)
    for i in range(5):
        expected = a * Multivector.from_dense(sig, vals[i])
        np.testing.assert_allclose(out[i], expected.to_dense(), atol=1e-12)
        np.testing.assert_allclose(out_dense[i], expected.to_dense(), atol=1e-12)
