"""Coproduct, counit and antipode defined on generators, and Hopf-axiom checks.

Two extension rules are supported.  ``plain``: the coproduct is an algebra map
into the ordinary tensor square and the antipode an anti-homomorphism.
``braided``: the coproduct is a map into the Koszul-signed tensor square and
the antipode satisfies S(ab) = (-1)^{|a||b|} S(b) S(a).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .kernel import (
    Element,
    ParahopfError,
    TensorElement,
    _add_term,
    braided_tensor_multiply,
    plain_tensor_multiply,
    tensor,
    unit_tensor,
)
from .quotient import Presentation, TruncationError, tensor_normal_form
from .report import OVERFLOW, CheckResult, Report

BRAIDED, PLAIN = "braided", "plain"
DEFAULT_SEED = 0x5EED


class IncompleteMapsError(ParahopfError):
    pass


class FlavorError(ParahopfError):
    pass


@dataclass(frozen=True, eq=False)
class StructureMaps:
    """Images of every generator under Δ, ε and S (keyed by generator index)."""

    presentation: Presentation
    coproduct: dict
    counit: dict
    antipode: dict
    flavor: str = PLAIN
    _dcache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.flavor not in (BRAIDED, PLAIN):
            raise FlavorError(f"unknown flavor {self.flavor!r}")
        alpha = self.presentation.alphabet
        for i, g in enumerate(alpha):
            for name, table in (("coproduct", self.coproduct), ("counit", self.counit),
                                ("antipode", self.antipode)):
                if i not in table:
                    raise IncompleteMapsError(f"no {name} image for {g.token}")
        for t in self.coproduct.values():
            if t.alphabet != alpha or t.rank != 2:
                raise ValueError("coproduct images must be rank-2 tensors over the alphabet")
        for x in self.antipode.values():
            if x.alphabet != alpha:
                raise ValueError("antipode images must lie over the alphabet")

    @property
    def braided(self) -> bool:
        return self.flavor == BRAIDED

    def images(self, token: str):
        i = self.presentation.alphabet.index(token)
        return self.coproduct[i], self.counit[i], self.antipode[i]


def structure_maps(p: Presentation, coproduct: dict, counit: dict, antipode: dict,
                   flavor: str = PLAIN) -> StructureMaps:
    """Build maps from token-keyed dictionaries."""
    idx = p.alphabet.index
    return StructureMaps(
        p,
        {idx(t): v for t, v in coproduct.items()},
        {idx(t): Fraction(v) for t, v in counit.items()},
        {idx(t): v for t, v in antipode.items()},
        flavor,
    )


def primitive_maps(p: Presentation, flavor: str) -> StructureMaps:
    """Δ(x) = x⊗1 + 1⊗x, ε(x) = 0, S(x) = -x on every generator."""
    one = p.one()
    cop, cou, ant = {}, {}, {}
    for g in p.generators:
        x = p.gen(g.token)
        cop[g.token] = tensor(x, one) + tensor(one, x)
        cou[g.token] = 0
        ant[g.token] = -x
    return structure_maps(p, cop, cou, ant, flavor)


# ---------------------------------------------------------------------------
# extension to words


def _word_coproduct(m: StructureMaps, w) -> TensorElement:
    cache = m._dcache
    t = cache.get(w)
    if t is None:
        if not w:
            t = unit_tensor(m.presentation.alphabet)
        else:
            mul = braided_tensor_multiply if m.braided else plain_tensor_multiply
            t = mul(_word_coproduct(m, w[:-1]), m.coproduct[w[-1]])
        cache[w] = t
    return t


def apply_coproduct(x: Element, m: StructureMaps) -> TensorElement:
    out: dict = {}
    for w, c in x.terms.items():
        for k, y in _word_coproduct(m, w).terms.items():
            _add_term(out, k, c * y)
    return TensorElement._raw(x.alphabet, 2, out)


def apply_counit(x: Element, m: StructureMaps) -> Fraction:
    total = Fraction(0)
    for w, c in x.terms.items():
        v = c
        for i in w:
            v *= m.counit[i]
            if not v:
                break
        total += v
    return total


def _word_antipode(m: StructureMaps, w) -> Element:
    alpha = m.presentation.alphabet
    out = alpha.one()
    for i in w:
        out = m.antipode[i] * out
    if m.braided:
        odd = sum(alpha[i].parity for i in w)
        if (odd * (odd - 1) // 2) % 2:
            out = -out
    return out


def apply_antipode(x: Element, m: StructureMaps) -> Element:
    out: dict = {}
    for w, c in x.terms.items():
        for w2, y in _word_antipode(m, w).terms.items():
            _add_term(out, w2, c * y)
    return Element._raw(x.alphabet, out)


def coproduct_on_slot(t: TensorElement, m: StructureMaps, slot: int) -> TensorElement:
    """(Δ⊗id) for slot=0, (id⊗Δ) for slot=1, applied to a rank-2 tensor."""
    out: dict = {}
    for (a, b), c in t.terms.items():
        if slot == 0:
            for (a1, a2), y in _word_coproduct(m, a).terms.items():
                _add_term(out, (a1, a2, b), c * y)
        else:
            for (b1, b2), y in _word_coproduct(m, b).terms.items():
                _add_term(out, (a, b1, b2), c * y)
    return TensorElement._raw(t.alphabet, 3, out)


def counit_on_slot(t: TensorElement, m: StructureMaps, slot: int) -> Element:
    out: dict = {}
    alpha = t.alphabet
    for key, c in t.terms.items():
        e = apply_counit(Element._raw(alpha, {key[slot]: Fraction(1)}), m)
        if e:
            _add_term(out, key[1 - slot], c * e)
    return Element._raw(alpha, out)


def antipode_convolution(x: Element, m: StructureMaps, side: str) -> Element:
    """Σ S(x1) x2 (side='left') or Σ x1 S(x2) (side='right')."""
    alpha = x.alphabet
    out = alpha.zero()
    for (a, b), c in apply_coproduct(x, m).terms.items():
        if side == "left":
            term = _word_antipode(m, a) * Element._raw(alpha, {b: Fraction(1)})
        else:
            term = Element._raw(alpha, {a: Fraction(1)}) * _word_antipode(m, b)
        out = out + term.scale(c)
    return out


# ---------------------------------------------------------------------------
# axiom verification

AXIOMS = (
    "(i) coproduct well-defined",
    "(ii) coassociativity",
    "(iii) counit",
    "(iv) antipode",
    "(v) antipode well-defined",
)


def random_element(p: Presentation, rng: random.Random, max_len: int = 3,
                   max_terms: int = 3) -> Element:
    G = len(p.alphabet)
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        L = rng.randint(0, max_len)
        w = tuple(rng.randrange(G) for _ in range(L))
        _add_term(terms, w, Fraction(rng.choice((-2, -1, 1, 2))))
    return Element._raw(p.alphabet, terms)


def axiom_inputs(p: Presentation, samples: int = 100, seed: int = DEFAULT_SEED,
                 exhaustive_degree: int = 2) -> list:
    """Generators, every word up to the given length, then seeded random samples."""
    alpha = p.alphabet
    G = len(alpha)
    inputs = []
    for L in range(exhaustive_degree + 1):
        for w in product(range(G), repeat=L):
            inputs.append(("word " + alpha.word_str(w), Element._raw(alpha, {w: Fraction(1)})))
    rng = random.Random(seed)
    for k in range(samples):
        inputs.append((f"sample {k}", random_element(p, rng)))
    return inputs


class _Reducer:
    """Normal forms at the smallest truncation holding each input (never below D).

    Truncations of these presentations are exact, so normal forms taken at
    different degrees agree; ``used`` records the largest degree needed.
    """

    def __init__(self, p: Presentation, D: int, max_degree: int | None):
        self.p, self.D, self.max_degree = p, D, max_degree
        self.used = D
        self._antipode: dict = {}

    def __call__(self, v):
        need = max(self.D, v.degree)
        if self.max_degree is not None and need > self.max_degree:
            raise TruncationError(need, self.max_degree)
        self.used = max(self.used, need)
        if isinstance(v, TensorElement):
            return tensor_normal_form(v, self.p, need)
        return self.p.basis(need).normal_form(v)

    def word_antipode(self, m: StructureMaps, w) -> Element:
        """Reduced S(w), built letter by letter."""
        got = self._antipode.get(w)
        if got is None:
            if not w:
                got = m.presentation.one()
            else:
                got = self._reverse_product(m, w)
            self._antipode[w] = got
        return got

    def _reverse_product(self, m: StructureMaps, w) -> Element:
        # S(w1...wk) = ± S(wk)...S(w1); the prefix w1..w(k-1) is already cached
        alpha = m.presentation.alphabet
        prev = self.word_antipode(m, w[:-1])
        out = self(m.antipode[w[-1]] * prev)
        if m.braided:
            # Koszul sign of moving the last letter past the prefix
            if alpha[w[-1]].parity and sum(alpha[i].parity for i in w[:-1]) % 2:
                out = -out
        return out

    def antipode(self, x: Element, m: StructureMaps) -> Element:
        out = x.alphabet.zero()
        for w, c in x.terms.items():
            out = out + self.word_antipode(m, w).scale(c)
        return out

    def convolution(self, x: Element, m: StructureMaps, side: str) -> Element:
        alpha = x.alphabet
        out = alpha.zero()
        for (a, b), c in apply_coproduct(x, m).terms.items():
            # multiply the plain factor in one letter at a time
            if side == "left":
                term = self.word_antipode(m, a)
                for i in b:
                    term = self(term * Element._raw(alpha, {(i,): Fraction(1)}))
            else:
                term = self.word_antipode(m, b)
                for i in reversed(a):
                    term = self(Element._raw(alpha, {(i,): Fraction(1)}) * term)
            out = out + term.scale(c)
        return out


def check_hopf_axioms(p: Presentation, m: StructureMaps, D: int | None = None,
                      samples: int = 100, seed: int = DEFAULT_SEED,
                      max_degree: int | None = None) -> Report:
    """Verify the Hopf axioms modulo the ideal.

    Residuals are reduced at D.  Antipode images may raise degree (e.g.
    S(b) = b*K^-), so antipode products are reduced factor by factor, each at
    the smallest truncation that holds it; the largest degree used is reported
    per axiom.  With ``max_degree`` set, inputs beyond it are reported as
    overflow rather than reduced.
    """

    D = p.degree if D is None else D
    if m.presentation is not p:
        raise ValueError("structure maps belong to a different presentation")
    inputs = axiom_inputs(p, samples, seed)
    one = p.one()
    report = Report(f"Hopf axioms for {p.name} ({m.flavor}), D={D}, seed={seed:#x}")
    results = {name: report.add(CheckResult(name)) for name in AXIOMS}
    reducers = {name: _Reducer(p, D, max_degree) for name in AXIOMS}
    overflow = {name: [] for name in AXIOMS}

    def run(name, label, compute):
        res, red = results[name], reducers[name]
        res.checked += 1
        if not res.passed:
            return
        try:
            r = red(compute(red))
        except TruncationError as e:
            overflow[name].append((label, e.required))
            return
        if not r.is_zero():
            res.fail(f"{label}: residual {r}")

    for r in p.relations:
        label = f"relation {r}"
        run(AXIOMS[0], label, lambda red: apply_coproduct(r, m))
        run(AXIOMS[2], "counit of " + label,
            lambda red: p.alphabet.scalar(apply_counit(r, m)))
        run(AXIOMS[4], label, lambda red: red.antipode(r, m))

    for label, x in inputs:
        dx = apply_coproduct(x, m)
        eps = one.scale(apply_counit(x, m))
        run(AXIOMS[1], label,
            lambda red: coproduct_on_slot(dx, m, 0) - coproduct_on_slot(dx, m, 1))
        run(AXIOMS[2], label + " (left)", lambda red: counit_on_slot(dx, m, 0) - x)
        run(AXIOMS[2], label + " (right)", lambda red: counit_on_slot(dx, m, 1) - x)
        run(AXIOMS[3], label + " (left)", lambda red: red.convolution(x, m, "left") - eps)
        run(AXIOMS[3], label + " (right)", lambda red: red.convolution(x, m, "right") - eps)

    for name in AXIOMS:
        res = results[name]
        res.details["degree"] = reducers[name].used
        if overflow[name] and res.passed:
            label, need = overflow[name][0]
            res.status = OVERFLOW
            res.witness = (f"{len(overflow[name])} input(s) need degree > {max_degree}, "
                           f"first: {label} (needs {need})")
    return report


def check_quasitriangular(m: StructureMaps, R: TensorElement, D: int | None = None) -> Report:
    """Test a candidate R-matrix for an ordinary (plain) Hopf algebra.

    Checks Δ^op(x) R = R Δ(x) on generators, (Δ⊗id)R = R13 R23 and
    (id⊗Δ)R = R13 R12, each modulo the ideal.  This is an experiment hook; a
    failure says nothing about other candidates.
    """
    p = m.presentation
    D = p.degree if D is None else D
    if m.braided:
        raise FlavorError("quasitriangularity hook expects plain-flavored maps")
    alpha = p.alphabet
    report = Report(f"quasitriangular structure on {p.name}")

    def leg(t: TensorElement, slots) -> TensorElement:
        out = {}
        for (a, b), c in t.terms.items():
            key = [(), (), ()]
            key[slots[0]], key[slots[1]] = a, b
            _add_term(out, tuple(key), c)
        return TensorElement._raw(alpha, 3, out)

    def reduce(t):
        need = max(D, t.degree)
        return tensor_normal_form(t, p, need)

    intertwine = report.add(CheckResult("Δ^op R = R Δ"))
    for i, g in enumerate(alpha):
        dx = m.coproduct[i]
        op = TensorElement._raw(alpha, 2, {(b, a): c for (a, b), c in dx.terms.items()})
        diff = plain_tensor_multiply(op, R) - plain_tensor_multiply(R, dx)
        intertwine.checked += 1
        r = reduce(diff)
        if r:
            intertwine.fail(f"{g.token}: residual {r}")
    left = report.add(CheckResult("(Δ⊗id)R = R13 R23"))
    left.checked = 1
    r = reduce(coproduct_on_slot(R, m, 0) - plain_tensor_multiply(leg(R, (0, 2)), leg(R, (1, 2))))
    if r:
        left.fail(f"residual {r}")
    right = report.add(CheckResult("(id⊗Δ)R = R13 R12"))
    right.checked = 1
    r = reduce(coproduct_on_slot(R, m, 1) - plain_tensor_multiply(leg(R, (0, 2)), leg(R, (0, 1))))
    if r:
        right.fail(f"residual {r}")
    return report


__all__ = [
    "BRAIDED", "PLAIN", "DEFAULT_SEED", "AXIOMS", "StructureMaps", "IncompleteMapsError",
    "FlavorError", "structure_maps", "primitive_maps", "apply_coproduct", "apply_counit",
    "apply_antipode", "coproduct_on_slot", "counit_on_slot", "antipode_convolution",
    "axiom_inputs", "random_element", "check_hopf_axioms", "check_quasitriangular",
    "TruncationError",
]
