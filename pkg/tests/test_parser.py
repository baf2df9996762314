import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parahopf.kernel import Element, TensorElement, tensor
from parahopf.parser import (
    Add,
    Anticommutator,
    Commutator,
    Gen,
    Mul,
    Neg,
    ParseError,
    Pow,
    Scalar,
    Sub,
    Tensor,
    dump_presentation,
    evaluate,
    format_ast,
    load_presentation,
    lower,
    parse,
)
from parahopf.presets import algebra
from parahopf.quotient import TruncationError, filtration_dimension

PB1 = algebra("pb:1").presentation


def test_parse_examples():
    assert parse("[{b1+,b1-},b1-]") == Commutator(Anticommutator(Gen("b1+"), Gen("b1-")), Gen("b1-"))
    assert parse("K+*K- - 1") == Sub(Mul(Gen("K+"), Gen("K-")), Scalar(Fraction(1)))
    t = parse("b1+ ox 1 + g ox b1+")
    assert t == Add(Tensor((Gen("b1+"), Scalar(Fraction(1)))), Tensor((Gen("g"), Gen("b1+"))))


def test_parse_details():
    assert parse("2/4*b1+") == Mul(Scalar(Fraction(1, 2)), Gen("b1+"))
    assert parse("-b1+^2") == Neg(Pow(Gen("b1+"), 2))
    assert parse("  b12-\n* f3+ ") == Mul(Gen("b12-"), Gen("f3+"))
    assert parse("g ⊗ g") == Tensor((Gen("g"), Gen("g")))


@pytest.mark.parametrize("src, fragment, col", [
    ("[b1+, b1-", "unbalanced '['", 10),
    ("(b1+", "unbalanced '('", 5),
    ("b1+)", "unbalanced ')'", 4),
    ("b1+ ox b1- ox 1 ox 1", "rank above 3", 17),
    ("b3+", "unknown generator", 1),
    ("b1+ $ 2", "unexpected character", 5),
    ("[b1+ ox g, g]", "only allowed at the top level", 6),
    ("1/0", "zero denominator", 3),
])
def test_parse_errors(src, fragment, col):
    with pytest.raises(ParseError) as e:
        parse(src, PB1)
    assert fragment in str(e.value)
    assert e.value.column == col


def test_error_line_numbers():
    with pytest.raises(ParseError) as e:
        parse("b1+ +\n  b9-", PB1)
    assert (e.value.line, e.value.column) == (2, 3)
    with pytest.raises(ParseError):
        parse("   ")


def test_evaluate_examples():
    assert str(evaluate("[{b1+,b1-},b1-]", PB1, 4)) == "-2*b1-"
    assert str(evaluate("g*b1+*g", algebra("pbg:1").presentation, 4)) == "-b1+"
    assert str(evaluate("K+*K-", algebra("pbk:1").presentation, 4)) == "1"
    t = evaluate("b1+ ox 1 + g ox b1+", algebra("pbg:1").presentation, 4)
    assert isinstance(t, TensorElement) and t.rank == 2


def test_evaluate_truncation_message():
    with pytest.raises(TruncationError) as e:
        evaluate("b1+^5", PB1, 4)
    assert "at least 5" in str(e.value)
    assert str(evaluate("b1+^5", PB1)) == str(evaluate("b1+^5", PB1, 5))


def test_mixed_rank_sum_rejected():
    with pytest.raises(ParseError):
        evaluate("b1+ ox 1 + b1-", PB1, 4)
    with pytest.raises(Exception):
        evaluate("b1+ ox 1 + b1- ox 1 ox 1", PB1, 4)


def random_element(alpha, rng):
    d = {}
    for _ in range(rng.randint(0, 4)):
        w = tuple(rng.randrange(len(alpha)) for _ in range(rng.randint(0, 3)))
        d[w] = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
    return Element(alpha, d)


def test_printed_elements_round_trip():
    rng = random.Random(0x5EED)
    for key in ("pb:2", "pbg:1", "pbk:1", "pf:2"):
        alpha = algebra(key).presentation.alphabet
        for _ in range(50):
            x = random_element(alpha, rng)
            assert lower(parse(str(x), alpha), alpha) == x


def test_printed_tensors_round_trip():
    rng = random.Random(4)
    alpha = algebra("pbg:1").presentation.alphabet
    for _ in range(50):
        t = tensor(random_element(alpha, rng), random_element(alpha, rng))
        if t.is_zero():
            continue
        assert lower(parse(str(t), alpha), alpha) == t


GEN = st.sampled_from(["b1+", "b1-", "g", "K+", "K-", "f2+"]).map(Gen)
SCALAR = st.fractions(min_value=0, max_value=20, max_denominator=7).map(Scalar)


def _extend(children):
    return st.one_of(
        st.builds(Add, children, children), st.builds(Sub, children, children),
        st.builds(Mul, children, children), st.builds(Neg, children),
        st.builds(Pow, children, st.integers(0, 4)),
        st.builds(Commutator, children, children), st.builds(Anticommutator, children, children),
    )


INNER = st.recursive(st.one_of(GEN, SCALAR), _extend, max_leaves=8)
PRODUCT = st.recursive(st.one_of(GEN, SCALAR), lambda c: st.builds(Mul, c, c), max_leaves=3)
TOP = st.one_of(
    INNER,
    st.lists(PRODUCT, min_size=2, max_size=3).map(lambda fs: Tensor(tuple(fs))),
)


@settings(max_examples=300, deadline=None)
@given(TOP)
def test_ast_round_trip(ast):
    # tensors only occur at the top; the sum of tensors goes through Add
    assert parse(format_ast(ast)) == ast


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(PRODUCT, min_size=2, max_size=2).map(lambda fs: Tensor(tuple(fs))),
                min_size=2, max_size=3))
def test_tensor_sum_round_trip(tensors):
    ast = tensors[0]
    for t in tensors[1:]:
        ast = Add(ast, t)
    assert parse(format_ast(ast)) == ast


@pytest.mark.parametrize("key", ["pb:1", "pbg:2", "pbk:1", "pf:1"])
def test_presentation_text_round_trip(key):
    a = algebra(key)
    text = dump_presentation(a.presentation, a.maps)
    p, m = load_presentation(text)
    assert p.name == a.presentation.name
    assert [g.token for g in p.generators] == [g.token for g in a.presentation.generators]
    assert [g.parity for g in p.generators] == [g.parity for g in a.presentation.generators]
    assert [str(r) for r in p.relations] == [str(r) for r in a.presentation.relations]
    assert m.flavor == a.maps.flavor
    assert dump_presentation(p, m) == text
    assert filtration_dimension(p, 3) == filtration_dimension(a.presentation, 3)


def test_presentation_without_maps():
    p, m = load_presentation("algebra tiny\ngenerator f1+ parity=even\n# comment\n")
    assert m is None and p.relations == ()


@pytest.mark.parametrize("text, line", [
    ("generator b1+ parity=odd\n", 0),
    ("algebra x\ngenerator b1+ parity=weird\n", 2),
    ("algebra x\ngenerator b1+ parity=odd\nrelation b1+ +\n", 3),
    ("algebra x\ngenerator b1+ parity=odd\nfrobnicate\n", 3),
    ("algebra x\nrelation 1\n", 2),
    ("algebra x\ngenerator b1+ parity=odd\ncoproduct b2+ = 1 ox 1\n", 3),
])
def test_presentation_format_errors(text, line):
    with pytest.raises(ParseError) as e:
        load_presentation(text)
    if line:
        assert e.value.line == line
