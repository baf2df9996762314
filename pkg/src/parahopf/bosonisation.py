"""Bosonisation over CZ2 and the K± extension.

The group algebra CZ2 is stored as {exponent: coefficient} with exponent 0
for 1 and 1 for g.  Smash-product elements b⋊g^a are written as b*g^a over
the enlarged alphabet (g ordered last); the pair notation below is only a
view on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .kernel import (
    Alphabet,
    Element,
    Generator,
    ParahopfError,
    TensorElement,
    _add_term,
    anticommutator,
    tensor,
)
from .quotient import Presentation, normal_form, tensor_normal_form
from .report import CheckResult, Report
from .superhopf import (
    PLAIN,
    StructureMaps,
    _word_antipode,
    _word_coproduct,
    apply_antipode,
    apply_coproduct,
    structure_maps,
)


class HostError(ParahopfError):
    pass


class ConstructionError(ParahopfError):
    pass


# ---------------------------------------------------------------------------
# the host Hopf algebra CZ2


class CZ2:
    """Group algebra of Z2 = {1, g}; elements are dicts exponent -> coefficient."""

    name = "CZ2"
    basis = (0, 1)

    @staticmethod
    def element(d) -> dict:
        return {a % 2: Fraction(c) for a, c in d.items() if c}

    @staticmethod
    def mul(h: dict, k: dict) -> dict:
        out: dict = {}
        for a, x in h.items():
            for b, y in k.items():
                _add_term(out, (a + b) % 2, x * y)
        return out

    @staticmethod
    def coproduct(a: int):
        return [((a, a), Fraction(1))]  # group-like

    @staticmethod
    def antipode(a: int) -> int:
        return a  # g^{-1} = g

    @staticmethod
    def counit(a: int) -> Fraction:
        return Fraction(1)


@dataclass(frozen=True)
class QuasitriangularData:
    host: type
    r_matrix: tuple  # ((a, b), coefficient) pairs: Σ c g^a ⊗ g^b

    def terms(self):
        return self.r_matrix

    def u_element(self) -> dict:
        """u = Σ S(R2) R1, computed from the stored R."""
        out: dict = {}
        for (a, b), c in self.r_matrix:
            _add_term(out, (self.host.antipode(b) + a) % 2, c)
        return out

    def inverse_check(self) -> bool:
        """(S⊗id)(R) · R == 1⊗1."""
        out: dict = {}
        for (a, b), c in self.r_matrix:
            for (a2, b2), c2 in self.r_matrix:
                key = ((self.host.antipode(a) + a2) % 2, (b + b2) % 2)
                _add_term(out, key, c * c2)
        return out == {(0, 0): Fraction(1)}


def cz2_r_matrix() -> QuasitriangularData:
    """R_g = ½(1⊗1 + 1⊗g + g⊗1 − g⊗g)."""
    h = Fraction(1, 2)
    return QuasitriangularData(CZ2, (((0, 0), h), ((0, 1), h), ((1, 0), h), ((1, 1), -h)))


def _check_host(q: QuasitriangularData):
    if q.host is not CZ2:
        raise HostError(f"smash-product formulas are implemented for CZ2 only, not {q.host!r}")


def _act_word(alpha: Alphabet, a: int, w) -> int:
    """Sign of g^a acting on a word."""
    return -1 if (a and alpha.word_parity(w)) else 1


def cz2_action(h: dict, x: Element) -> Element:
    """g ▷ b = (-1)^{|b|} b wordwise, 1 acts trivially; bilinear."""
    out: dict = {}
    for a, c in h.items():
        for w, y in x.terms.items():
            _add_term(out, w, c * y * _act_word(x.alphabet, a, w))
    return Element._raw(x.alphabet, out)


def coaction_from_action(x: Element, q: QuasitriangularData) -> dict:
    """ρ(b) = Σ R2 ⊗ (R1 ▷ b), returned as {(host exponent, word): coefficient}."""
    _check_host(q)
    out: dict = {}
    for w, y in x.terms.items():
        for (a, b), c in q.terms():
            _add_term(out, (b, w), c * y * _act_word(x.alphabet, a, w))
    return out


def braiding_via_r(v: Element, w: Element, q: QuasitriangularData) -> TensorElement:
    """Ψ(v⊗w) = Σ (R2 ▷ w) ⊗ (R1 ▷ v), extended linearly."""
    _check_host(q)
    out: dict = {}
    alpha = v.alphabet
    for wv, cv in v.terms.items():
        for ww, cw in w.terms.items():
            for (a, b), c in q.terms():
                s = _act_word(alpha, b, ww) * _act_word(alpha, a, wv)
                _add_term(out, (ww, wv), c * cv * cw * s)
    return TensorElement._raw(alpha, 2, out)


# ---------------------------------------------------------------------------
# generic smash-product formulas on pairs {(word, exponent): coefficient}


def pairs(x: Element, h: dict | int = 0) -> dict:
    """The pair b ⋊ h as a dict."""
    if isinstance(h, int):
        h = {h % 2: Fraction(1)}
    return {(w, a): c * y for w, c in x.terms.items() for a, y in h.items()}


def smash_multiply(bh: dict, ck: dict, q: QuasitriangularData, alphabet: Alphabet) -> dict:
    """(b⊗h)(c⊗k) = Σ b (h1 ▷ c) ⊗ h2 k; words are over ``alphabet``."""
    _check_host(q)
    out: dict = {}
    for (b, h), x in bh.items():
        for (c, k), y in ck.items():
            for (h1, h2), z in q.host.coproduct(h):
                sign = _act_word(alphabet, h1, c)
                _add_term(out, (b + c, (h2 + k) % 2), x * y * z * sign)
    return out


def smash_coproduct(bh: dict, base_maps: StructureMaps, q: QuasitriangularData) -> dict:
    """Δ(b⊗h) = Σ b1 ⊗ R2 h1 ⊗ (R1 ▷ b2) ⊗ h2.

    Returns {((word1, exp1), (word2, exp2)): coefficient}.
    """
    _check_host(q)
    if not base_maps.braided:
        raise ParahopfError("smash coproduct needs the braided maps of the super algebra")
    alpha = base_maps.presentation.alphabet
    out: dict = {}
    for (b, h), x in bh.items():
        for (b1, b2), y in _word_coproduct(base_maps, b).terms.items():
            for (h1, h2), z in q.host.coproduct(h):
                for (r1, r2), c in q.terms():
                    sign = _act_word(alpha, r1, b2)
                    key = ((b1, (r2 + h1) % 2), (b2, h2))
                    _add_term(out, key, x * y * z * c * sign)
    return out


def smash_antipode(bh: dict, base_maps: StructureMaps, q: QuasitriangularData) -> dict:
    """S(b⊗h) = Σ (S_H(h2) u R1 ▷ S_B(b)) ⊗ S_H(R2 h1), with u = Σ S_H(R2) R1."""
    _check_host(q)
    alpha = base_maps.presentation.alphabet
    H = q.host
    u = q.u_element()
    out: dict = {}
    for (b, h), x in bh.items():
        sb = _word_antipode(base_maps, b)
        for (h1, h2), z in H.coproduct(h):
            for (r1, r2), c in q.terms():
                for ue, uc in u.items():
                    act = (H.antipode(h2) + ue + r1) % 2
                    right = H.antipode((r2 + h1) % 2)
                    for w, y in sb.terms.items():
                        sign = _act_word(alpha, act, w)
                        _add_term(out, (w, right), x * z * c * uc * y * sign)
    return out


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True, eq=False)
class SmashPresentation:
    presentation: Presentation
    base: Presentation
    g: Generator
    maps: StructureMaps
    base_maps: StructureMaps

    def pair_to_element(self, pr: dict) -> Element:
        """Σ c b⋊g^a  ->  Σ c b*g^a over the enlarged alphabet."""
        alpha = self.presentation.alphabet
        gi = alpha.index("g")
        lift = [alpha.index(t.token) for t in self.base.alphabet]
        out: dict = {}
        for (w, a), c in pr.items():
            _add_term(out, tuple(lift[i] for i in w) + (gi,) * a, c)
        return Element._raw(alpha, out)

    def tensor_pairs_to_tensor(self, pr: dict) -> TensorElement:
        alpha = self.presentation.alphabet
        gi = alpha.index("g")
        lift = [alpha.index(t.token) for t in self.base.alphabet]
        out: dict = {}
        for ((w1, a1), (w2, a2)), c in pr.items():
            key = (tuple(lift[i] for i in w1) + (gi,) * a1,
                   tuple(lift[i] for i in w2) + (gi,) * a2)
            _add_term(out, key, c)
        return TensorElement._raw(alpha, 2, out)

    def lift(self, x: Element) -> Element:
        return self.presentation.alphabet.embed(x)


def bosonise(p: Presentation, m: StructureMaps, name: str | None = None) -> SmashPresentation:
    """B ⋆ CZ2: adjoin g with g² = 1, g x = (-1)^{|x|} x g, and the closed-form maps

    Δ(x) = Σ x1 g^{|x2|} ⊗ x2,  ε(x) = ε_B(x),  S(x) = g^{|x|} S_B(x),
    Δ(g) = g⊗g,  ε(g) = 1,  S(g) = g.
    """
    if not m.braided:
        raise ParahopfError("bosonise expects braided-flavored structure maps")
    if m.presentation is not p:
        raise ValueError("structure maps belong to a different presentation")
    if any(gen.family == "g" for gen in p.generators):
        raise ValueError("presentation already contains g")
    g = Generator("g", parity=0)
    alpha = Alphabet(p.generators + (g,))
    G = alpha.gen("g")
    one = alpha.one()
    rels = [alpha.embed(r) for r in p.relations]
    rels.append(G * G - one)
    for gen in p.generators:
        x = alpha.gen(gen.token)
        rels.append(G * x - x * G if gen.parity == 0 else G * x + x * G)
    new = Presentation(name or f"{p.name}(g)", alpha, tuple(rels), p.degree)

    lift = [alpha.index(t.token) for t in p.alphabet]
    gi = alpha.index("g")
    cop, cou, ant = {}, {}, {}
    for i, gen in enumerate(p.generators):
        out: dict = {}
        for (a, b), c in m.coproduct[i].terms.items():
            la = tuple(lift[j] for j in a) + (gi,) * p.alphabet.word_parity(b)
            _add_term(out, (la, tuple(lift[j] for j in b)), c)
        cop[gen.token] = TensorElement._raw(alpha, 2, out)
        cou[gen.token] = m.counit[i]
        s = alpha.embed(m.antipode[i])
        ant[gen.token] = G * s if gen.parity else s
    cop["g"] = tensor(G, G)
    cou["g"] = 1
    ant["g"] = G
    maps = structure_maps(new, cop, cou, ant, PLAIN)
    return SmashPresentation(new, p, g, maps, m)


def kpm_extend(p: Presentation, name: str | None = None, verify: bool = True):
    """Adjoin K+, K- to a parabosonic presentation.

    Relations: those of p, {K±, b} = 0, K+K- = K-K+ = 1.  Maps (plain):
    Δ(b^±) = b^±⊗1 + K^±⊗b^±, Δ(K^±) = K^±⊗K^±, ε(b) = 0, ε(K^±) = 1,
    S(b^±) = b^± K^∓, S(K^±) = K^∓.  With ``verify`` the coproduct and antipode
    are checked to kill every defining relation.
    """
    if not p.generators or any(g.family != "b" for g in p.generators):
        raise ValueError("kpm_extend expects a parabosonic presentation")
    kp, km = Generator("K", "+", parity=0), Generator("K", "-", parity=0)
    alpha = Alphabet(p.generators + (kp, km))
    Kp, Km = alpha.gen("K+"), alpha.gen("K-")
    one = alpha.one()
    rels = [alpha.embed(r) for r in p.relations]
    for K in (Kp, Km):
        for gen in p.generators:
            rels.append(anticommutator(K, alpha.gen(gen.token)))
    rels += [Kp * Km - one, Km * Kp - one]
    new = Presentation(name or f"{p.name}(K)", alpha, tuple(rels), p.degree)

    cop, cou, ant = {}, {}, {}
    for gen in p.generators:
        b = alpha.gen(gen.token)
        K, Kinv = (Kp, Km) if gen.sign == "+" else (Km, Kp)
        cop[gen.token] = tensor(b, one) + tensor(K, b)
        cou[gen.token] = 0
        ant[gen.token] = b * Kinv
    cop["K+"], cop["K-"] = tensor(Kp, Kp), tensor(Km, Km)
    cou["K+"] = cou["K-"] = 1
    ant["K+"], ant["K-"] = Km, Kp
    maps = structure_maps(new, cop, cou, ant, PLAIN)
    if verify:
        verify_well_defined(new, maps)
    return new, maps


def verify_well_defined(p: Presentation, m: StructureMaps) -> None:
    """Raise ConstructionError unless Δ(r) ≡ 0 for every defining relation."""
    for r in p.relations:
        t = apply_coproduct(r, m)
        res = tensor_normal_form(t, p, max(p.degree, t.degree))
        if res:
            raise ConstructionError(f"Δ({r}) = {res} is not in I⊗A + A⊗I")


# ---------------------------------------------------------------------------
# checks


def _pair_inputs(base: Alphabet, max_len: int):
    from itertools import product

    for L in range(max_len + 1):
        for w in product(range(len(base)), repeat=L):
            for a in (0, 1):
                yield w, a


def generic_agreement(sp: SmashPresentation, max_len: int = 2,
                      q: QuasitriangularData | None = None, D: int | None = None) -> Report:
    """Generic R-matrix formulas against the closed CZ2 forms, modulo the ideal.

    Inputs are all pairs w⋊g^a with |w| <= max_len (generators included);
    products are taken over every ordered pair of such inputs.
    """
    q = q or cz2_r_matrix()
    p, base = sp.presentation, sp.base.alphabet
    D = p.degree if D is None else D
    report = Report(f"generic vs closed forms for {p.name}")
    inputs = [{(w, a): Fraction(1)} for w, a in _pair_inputs(base, max_len)]
    u = report.add(CheckResult("u element", checked=1))
    if q.u_element() != {1: Fraction(1)}:
        u.fail(f"u = {q.u_element()}, expected g")
    inv = report.add(CheckResult("R inverse", checked=1))
    if not q.inverse_check():
        inv.fail("(S⊗id)(R)·R != 1⊗1")

    def nf(x):
        return normal_form(x, p, max(D, x.degree))

    def tnf(t):
        return tensor_normal_form(t, p, max(D, t.degree))

    prod = report.add(CheckResult("product"))
    for x in inputs:
        for y in inputs:
            prod.checked += 1
            generic = sp.pair_to_element(smash_multiply(x, y, q, base))
            closed = sp.pair_to_element(x) * sp.pair_to_element(y)
            r = nf(generic - closed)
            if r:
                prod.fail(f"({sp.pair_to_element(x)})*({sp.pair_to_element(y)}): residual {r}")
                break
        if not prod.passed:
            break
    cop = report.add(CheckResult("coproduct"))
    ant = report.add(CheckResult("antipode"))
    for x in inputs:
        closed_x = sp.pair_to_element(x)
        cop.checked += 1
        generic = sp.tensor_pairs_to_tensor(smash_coproduct(x, sp.base_maps, q))
        r = tnf(generic - apply_coproduct(closed_x, sp.maps))
        if r and cop.passed:
            cop.fail(f"Δ({closed_x}): residual {r}")
        ant.checked += 1
        generic = sp.pair_to_element(smash_antipode(x, sp.base_maps, q))
        r = nf(generic - apply_antipode(closed_x, sp.maps))
        if r and ant.passed:
            ant.fail(f"S({closed_x}): residual {r}")
    return report


def conjugation_check(sp: SmashPresentation, D: int | None = None) -> Report:
    """g b g ≡ (-1)^{|b|} b for every generator b of the super algebra."""
    p = sp.presentation
    D = p.degree if D is None else D
    G = p.gen("g")
    report = Report(f"inner parity automorphism in {p.name}")
    res = report.add(CheckResult("gbg = (-1)^|b| b"))
    for gen in sp.base.generators:
        b = p.gen(gen.token)
        res.checked += 1
        r = normal_form(G * b * G - (-b if gen.parity else b), p, D)
        if r:
            res.fail(f"{gen.token}: residual {r}")
    return report


def kpm_witness(p: Presentation, D: int = 2) -> Report:
    """K+² is not 1 in the K± extension (whereas g² = 1 after bosonisation)."""
    report = Report(f"K+ is not an involution in {p.name}")
    res = report.add(CheckResult("K+^2 != 1", checked=1))
    K = p.gen("K+")
    r = normal_form(K * K, p, D)
    res.details["normal form"] = str(r)
    if r == p.one():
        res.fail("K+^2 reduces to 1")
    return report


def relation_images(p: Presentation, m: StructureMaps, D: int | None = None) -> Report:
    """Δ(r) ≡ 0 and S(r) ≡ 0 for every defining relation (reduced at the needed degree)."""
    D = p.degree if D is None else D
    report = Report(f"relation images in {p.name}")
    cop = report.add(CheckResult("Δ(r) = 0"))
    ant = report.add(CheckResult("S(r) = 0"))
    deg = {"Δ(r) = 0": D, "S(r) = 0": D}
    for r in p.relations:
        t = apply_coproduct(r, m)
        cop.checked += 1
        need = max(D, t.degree)
        deg["Δ(r) = 0"] = max(deg["Δ(r) = 0"], need)
        res = tensor_normal_form(t, p, need)
        if res and cop.passed:
            cop.fail(f"Δ({r}) = {res}")
        s = apply_antipode(r, m)
        ant.checked += 1
        need = max(D, s.degree)
        deg["S(r) = 0"] = max(deg["S(r) = 0"], need)
        res = normal_form(s, p, need)
        if res and ant.passed:
            ant.fail(f"S({r}) = {res}")
    cop.details["degree"] = deg["Δ(r) = 0"]
    ant.details["degree"] = deg["S(r) = 0"]
    return report
