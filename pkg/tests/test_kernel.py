import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parahopf.kernel import (
    Alphabet,
    AlphabetMismatchError,
    Element,
    Generator,
    HomogeneityError,
    RankError,
    TensorElement,
    anticommutator,
    braided_tensor_multiply,
    braided_tensor_multiply_n,
    braiding,
    commutator,
    flip,
    multiply,
    parse_generator,
    plain_tensor_multiply,
    tensor,
    unit_tensor,
)
from parahopf.presets import para_alphabet

import oracles

A = para_alphabet("b", 2)
b1p, b1m, b2p, b2m = (A.gen(t) for t in ("b1+", "b1-", "b2+", "b2-"))
one = A.one()


def random_element(rng, alpha=A, max_len=3, terms=3):
    d = {}
    for _ in range(rng.randint(0, terms)):
        w = tuple(rng.randrange(len(alpha)) for _ in range(rng.randint(0, max_len)))
        d[w] = d.get(w, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return Element(alpha, d)


# --- generators and alphabets


def test_generator_tokens_round_trip():
    for tok in ("b1+", "b12-", "f3+", "g", "K+", "K-"):
        assert parse_generator(tok).token == tok
    assert parse_generator("b1+").parity == 1
    assert parse_generator("f1+").parity == 0


@pytest.mark.parametrize("bad", [
    dict(family="g", index=1), dict(family="K", sign=None), dict(family="g", sign="+"),
    dict(family="b", sign="+", index=0), dict(family="x"), dict(family="f", sign="+", index=1, parity=2),
])
def test_generator_invariants(bad):
    with pytest.raises(ValueError):
        Generator(**bad)


def test_generator_order_is_declared_order():
    assert [g.token for g in A] == ["b1+", "b1-", "b2+", "b2-"]
    with pytest.raises(ValueError):
        Alphabet([parse_generator("g"), parse_generator("g")])


def test_parity_additivity():
    rng = random.Random(1)
    for _ in range(200):
        u = tuple(rng.randrange(4) for _ in range(rng.randint(0, 4)))
        v = tuple(rng.randrange(4) for _ in range(rng.randint(0, 4)))
        assert A.word_parity(u + v) == A.word_parity(u) ^ A.word_parity(v)
    assert A.word_parity(()) == 0


# --- scalars


def test_scalar_arithmetic_matches_integer_oracle():
    rng = random.Random(2024)
    for _ in range(1000):
        a, c = rng.randint(-10**30, 10**30), rng.randint(-10**30, 10**30)
        b, d = rng.randint(1, 10**30), rng.randint(1, 10**30)
        x = one.scale(Fraction(a, b)) + one.scale(Fraction(c, d))
        got = x.coefficient(())
        num, den = oracles.add_fractions(a, b, c, d)
        assert (got.numerator, got.denominator) == (num, den)


def test_no_zero_coefficients_stored():
    x = b1p + b1m - b1p
    assert x.terms == {(1,): Fraction(1)}
    assert (x - x).is_zero() and str(x - x) == "0"


# --- products


def test_multiply_examples():
    assert multiply(b1p, b1m).terms == {(0, 1): 1}
    assert multiply(b1p + b2p, b1m) == b1p * b1m + b2p * b1m
    rng = random.Random(3)
    for _ in range(50):
        x = random_element(rng)
        assert one * x == x == x * one


def test_multiply_alphabet_mismatch():
    F = para_alphabet("f", 1)
    with pytest.raises(AlphabetMismatchError):
        multiply(b1p, F.gen("f1+"))


def test_associativity_and_bilinearity():
    rng = random.Random(4)
    for _ in range(100):
        x, y, z = (random_element(rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y).scale(3) == x.scale(3) + y.scale(3)


def test_commutator_examples():
    assert commutator(b1p, b1p).is_zero()
    assert anticommutator(b1p, b1m) == b1p * b1m + b1m * b1p
    rng = random.Random(5)
    for _ in range(20):
        assert commutator(random_element(rng), one).is_zero()


def test_printing_is_deglex_with_folded_signs():
    x = b1m * b1p - b1p.scale(2) + one.scale(Fraction(1, 2)) + b1p * b1m
    assert str(x) == "1/2 - 2*b1+ + b1+*b1- + b1-*b1+"
    assert str(b1m.scale(-2)) == "-2*b1-"


# --- tensors


def test_braided_tensor_examples():
    t = braided_tensor_multiply(tensor(one, b1p), tensor(b2p, one))
    assert t == tensor(b2p, b1p).scale(-1)
    u = tensor(b1p * b2m, b2p)
    assert braided_tensor_multiply(unit_tensor(A), u) == u
    t = braided_tensor_multiply(tensor(one, b1p), tensor(b2p * b2m, one))
    assert t == tensor(b2p * b2m, b1p)


def test_plain_tensor_examples():
    assert plain_tensor_multiply(tensor(one, b1p), tensor(b2p, one)) == tensor(b2p, b1p)
    u = tensor(b1p, b2m, b1m)
    assert plain_tensor_multiply(unit_tensor(A, 3), u) == u


def test_rank_errors():
    with pytest.raises(RankError):
        braided_tensor_multiply(tensor(one, one, one), tensor(one, one, one))
    with pytest.raises(RankError):
        plain_tensor_multiply(tensor(one, one), tensor(one, one, one))
    with pytest.raises(RankError):
        tensor(one, one, one, one)
    with pytest.raises(RankError):
        TensorElement(A, 1)


def _slot_tensors(rank, max_len):
    words = [w for L in range(max_len + 1) for w in product(range(4), repeat=L)]
    rng = random.Random(rank * 10 + max_len)
    for _ in range(40):
        key = tuple(rng.choice(words) for _ in range(rank))
        yield TensorElement(A, rank, {key: 1})


def test_braided_product_matches_reordering_oracle():
    for rank in (2, 3):
        tens = list(_slot_tensors(rank, 2))
        for s in tens[:15]:
            for t in tens[:15]:
                (ks, _), = s.terms.items()
                (kt, _), = t.terms.items()
                key, sign = oracles.braided_word_product(A, ks, kt)
                assert braided_tensor_multiply_n(s, t) == TensorElement(A, rank, {key: sign})


def test_braided_associativity_exhaustive_small():
    gens = [one, b1p, b1m, b2p]
    slots = [tensor(x, y) for x in gens for y in gens]
    for s in slots:
        for t in slots:
            st_ = braided_tensor_multiply(s, t)
            for u in slots:
                assert braided_tensor_multiply(st_, u) == braided_tensor_multiply(
                    s, braided_tensor_multiply(t, u))


def test_braided_and_plain_agree_when_crossings_are_even():
    rng = random.Random(6)
    for _ in range(100):
        a, d = (random_element(rng) for _ in range(2))
        # the crossing slots (second of s, first of t) hold even words only
        b = b1p * b2m.scale(rng.randint(1, 3))
        c = one.scale(rng.randint(1, 3)) + b2p * b2m
        s, t = tensor(a + one, b), tensor(c, d + one)
        assert braided_tensor_multiply(s, t) == plain_tensor_multiply(s, t)


def test_braiding():
    assert braiding(b1p, b2p) == tensor(b2p, b1p).scale(-1)
    assert braiding(one, b1p * b2p + one) == tensor(b1p * b2p + one, one)
    for x, y in product([b1p, b1m, b2p, b2m, one, b1p * b2m], repeat=2):
        assert flip(braiding(x, y)) == tensor(x, y)
    with pytest.raises(HomogeneityError):
        braiding(b1p + one, b2p)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.lists(st.integers(0, 3), max_size=3),
                          st.integers(-3, 3)), max_size=4))
def test_hypothesis_distributivity(items):
    x = Element(A, {})
    for w, c in items:
        x = x + Element(A, {tuple(w): c})
    assert x * (b1p + b2m) == x * b1p + x * b2m
    assert (x - x).is_zero()
