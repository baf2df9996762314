import random
from fractions import Fraction

import pytest

from parahopf.kernel import Element, tensor, unit_tensor
from parahopf.presets import algebra, parabosonic, parafermionic
from parahopf.report import FAIL, OVERFLOW
from parahopf.superhopf import (
    AXIOMS,
    BRAIDED,
    PLAIN,
    FlavorError,
    IncompleteMapsError,
    StructureMaps,
    apply_antipode,
    apply_coproduct,
    apply_counit,
    check_hopf_axioms,
    primitive_maps,
    random_element,
    structure_maps,
)

PB2 = algebra("pb:2")


def test_coproduct_examples():
    p, m = PB2.presentation, PB2.maps
    b1p, b2p, one = p.gen("b1+"), p.gen("b2+"), p.one()
    assert apply_coproduct(b1p, m) == tensor(one, b1p) + tensor(b1p, one)
    assert apply_coproduct(one, m) == unit_tensor(p.alphabet)
    expected = (tensor(b1p * b2p, one) + tensor(b1p, b2p) - tensor(b2p, b1p)
                + tensor(one, b1p * b2p))
    assert apply_coproduct(b1p * b2p, m) == expected


def test_counit_examples():
    p, m = PB2.presentation, PB2.maps
    assert apply_counit(p.gen("b1+"), m) == 0
    assert apply_counit(p.one(), m) == 1
    g = algebra("pbg:1")
    q = g.presentation
    assert apply_counit(q.gen("g") * q.gen("b1+") + q.one().scale(3), g.maps) == 3


def test_antipode_examples():
    p, m = PB2.presentation, PB2.maps
    b1p, b2p = p.gen("b1+"), p.gen("b2+")
    assert apply_antipode(b1p, m) == -b1p
    assert apply_antipode(p.one(), m) == p.one()
    assert apply_antipode(b1p * b2p, m) == -(b2p * b1p)


def test_braided_antipode_is_twisted_antihomomorphism():
    p, m = PB2.presentation, PB2.maps
    rng = random.Random(5)
    G = len(p.alphabet)
    for _ in range(100):
        u = tuple(rng.randrange(G) for _ in range(rng.randint(0, 3)))
        v = tuple(rng.randrange(G) for _ in range(rng.randint(0, 3)))
        x, y = Element(p.alphabet, {u: 1}), Element(p.alphabet, {v: 1})
        sign = -1 if (p.alphabet.word_parity(u) and p.alphabet.word_parity(v)) else 1
        lhs = apply_antipode(x * y, m)
        rhs = (apply_antipode(y, m) * apply_antipode(x, m)).scale(sign)
        assert lhs == rhs


def test_primitivity_in_pf():
    a = algebra("pf:2")
    p, one = a.presentation, a.presentation.one()
    for g in p.generators:
        x = p.gen(g.token)
        assert apply_coproduct(x, a.maps) == tensor(x, one) + tensor(one, x)


def test_flavor_degeneracy_on_even_generators():
    p = parafermionic(2)
    braided, plain = primitive_maps(p, BRAIDED), primitive_maps(p, PLAIN)
    rng = random.Random(9)
    for _ in range(100):
        x = random_element(p, rng)
        assert apply_coproduct(x, braided) == apply_coproduct(x, plain)
        assert apply_antipode(x, braided) == apply_antipode(x, plain)


@pytest.mark.parametrize("key", ["pf:1", "pf:2", "pb:1", "pb:2"])
def test_axioms_pass(key):
    a = algebra(key)
    rep = check_hopf_axioms(a.presentation, a.maps, 4)
    assert rep.passed, rep.text()
    assert [r.name for r in rep.results] == list(AXIOMS)
    assert all(r.details["degree"] == 4 for r in rep.results)


def test_antipode_axiom_example_in_bosonised_algebra():
    a = algebra("pbg:1")
    p, m = a.presentation, a.maps
    b, g = p.gen("b1+"), p.gen("g")
    from parahopf.quotient import normal_form

    assert normal_form(b * g + g * b, p, 4).is_zero()
    assert normal_form(apply_antipode(b, m) + apply_antipode(g, m) * b, p, 4).is_zero()


def test_corrupted_antipode_fails_exactly_axiom_iv():
    a = algebra("pbg:1")
    p, m = a.presentation, a.maps
    gi = p.alphabet.index("g")
    ant = dict(m.antipode)
    ant[gi] = -p.gen("g")
    bad = StructureMaps(p, m.coproduct, m.counit, ant, m.flavor)
    rep = check_hopf_axioms(p, bad, 4)
    assert rep.failed() == ["(iv) antipode"]
    assert rep["(iv)"].witness


def test_overflow_is_reported_not_raised():
    a = algebra("pbk:1")
    rep = check_hopf_axioms(a.presentation, a.maps, 4, samples=10, max_degree=4)
    assert rep["(iv)"].status == OVERFLOW
    assert rep["(i)"].passed
    assert "need degree > 4" in rep["(iv)"].witness


def test_same_seed_same_report():
    a = algebra("pb:1")
    r1 = check_hopf_axioms(a.presentation, a.maps, 4, samples=5, seed=1)
    r2 = check_hopf_axioms(a.presentation, a.maps, 4, samples=5, seed=1)
    assert [x.to_dict() for x in r1.results] == [x.to_dict() for x in r2.results]


def test_incomplete_maps():
    p = parabosonic(1)
    one = p.one()
    with pytest.raises(IncompleteMapsError):
        structure_maps(p, {"b1+": tensor(p.gen("b1+"), one)}, {"b1+": 0}, {"b1+": -p.gen("b1+")})
    with pytest.raises(FlavorError):
        primitive_maps(p, "twisted")


def test_counit_detects_bad_value():
    p = parabosonic(1)
    m = primitive_maps(p, BRAIDED)
    cou = dict(m.counit)
    cou[0] = Fraction(1)
    bad = StructureMaps(p, m.coproduct, cou, m.antipode, m.flavor)
    rep = check_hopf_axioms(p, bad, 4, samples=0)
    assert rep["(iii)"].status == FAIL
