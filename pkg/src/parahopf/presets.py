"""The concrete parastatistics algebras and their Lie-theoretic checks."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

from .kernel import (
    Alphabet,
    Element,
    Generator,
    ParahopfError,
    anticommutator,
    commutator,
    deglex_key,
)
from .quotient import Presentation, TruncationError, normal_form
from .report import CheckResult, Report
from .superhopf import BRAIDED, PLAIN, StructureMaps, primitive_maps

SIGNS = (1, -1)


def _sgn(s: int) -> str:
    return "+" if s > 0 else "-"


def para_alphabet(family: str, n: int) -> Alphabet:
    if n < 1:
        raise ValueError("need at least one mode (n >= 1)")
    parity = 1 if family == "b" else 0
    return Alphabet(Generator(family, _sgn(s), i, parity)
                    for i in range(1, n + 1) for s in SIGNS)


def parabosonic_relation(alpha: Alphabet, xi, i, eta, j, eps, k) -> Element:
    """[{b_i^ξ, b_j^η}, b_k^ε] - (ε-η)δ_jk b_i^ξ - (ε-ξ)δ_ik b_j^η."""
    bi = alpha.gen(f"b{i}{_sgn(xi)}")
    bj = alpha.gen(f"b{j}{_sgn(eta)}")
    bk = alpha.gen(f"b{k}{_sgn(eps)}")
    r = commutator(anticommutator(bi, bj), bk)
    if j == k:
        r = r - bi.scale(eps - eta)
    if i == k:
        r = r - bj.scale(eps - xi)
    return r


def parafermionic_relation(alpha: Alphabet, xi, i, eta, j, eps, k) -> Element:
    """[[f_i^ξ, f_j^η], f_k^ε] - ½(ε-η)²δ_jk f_i^ξ + ½(ε-ξ)²δ_ik f_j^η."""
    fi = alpha.gen(f"f{i}{_sgn(xi)}")
    fj = alpha.gen(f"f{j}{_sgn(eta)}")
    fk = alpha.gen(f"f{k}{_sgn(eps)}")
    r = commutator(commutator(fi, fj), fk)
    if j == k:
        r = r - fi.scale(Fraction((eps - eta) ** 2, 2))
    if i == k:
        r = r + fj.scale(Fraction((eps - xi) ** 2, 2))
    return r


def relation_instances(family: str, n: int, alpha: Alphabet | None = None):
    """Every (indices, relation) instance, duplicates and zeros included."""
    alpha = alpha or para_alphabet(family, n)
    make = parabosonic_relation if family == "b" else parafermionic_relation
    for xi, eta, eps in product(SIGNS, repeat=3):
        for i, j, k in product(range(1, n + 1), repeat=3):
            yield (xi, i, eta, j, eps, k), make(alpha, xi, i, eta, j, eps, k)


def _dedup(rels):
    seen, out = set(), []
    for r in rels:
        if r.is_zero() or r in seen or -r in seen:
            continue
        seen.add(r)
        out.append(r)
    return out


def parabosonic(n: int, degree: int = 4, dedup: bool = True) -> Presentation:
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha = para_alphabet("b", n)
    rels = [r for _, r in relation_instances("b", n, alpha)]
    return Presentation(f"pb:{n}", alpha, tuple(_dedup(rels) if dedup else rels), degree)


def parafermionic(n: int, degree: int = 4, dedup: bool = True) -> Presentation:
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha = para_alphabet("f", n)
    rels = [r for _, r in relation_instances("f", n, alpha)]
    return Presentation(f"pf:{n}", alpha, tuple(_dedup(rels) if dedup else rels), degree)


def parabosonic_maps(p: Presentation) -> StructureMaps:
    """Super-Hopf structure: primitive odd generators, braided extension."""
    return primitive_maps(p, BRAIDED)


def parafermionic_maps(p: Presentation) -> StructureMaps:
    return primitive_maps(p, PLAIN)


_PRESET = re.compile(r"^(pb|pf|pbg|pbk):(\d+)$")


@dataclass(frozen=True)
class Algebra:
    """A preset: presentation, default structure maps, and which family it extends."""

    key: str
    family: str
    n: int
    presentation: Presentation
    maps: StructureMaps


_ALGEBRAS: dict = {}


def algebra(key: str) -> Algebra:
    """Resolve ``pb:n``, ``pf:n``, ``pbg:n`` or ``pbk:n`` (cached per key)."""
    m = _PRESET.match(key.strip())
    if not m:
        raise ValueError(f"unknown algebra {key!r}; expected pb:n, pf:n, pbg:n or pbk:n")
    kind, n = m.group(1), int(m.group(2))
    got = _ALGEBRAS.get((kind, n))
    if got is not None:
        return got
    from .bosonisation import bosonise, kpm_extend

    if kind == "pf":
        p = parafermionic(n)
        a = Algebra(key, "pf", n, p, parafermionic_maps(p))
    else:
        base = parabosonic(n)
        if kind == "pb":
            a = Algebra(key, "pb", n, base, parabosonic_maps(base))
        elif kind == "pbg":
            sp = bosonise(base, parabosonic_maps(base), name=f"pbg:{n}")
            a = Algebra(key, "pbg", n, sp.presentation, sp.maps)
        else:
            p, maps = kpm_extend(base, name=f"pbk:{n}")
            a = Algebra(key, "pbk", n, p, maps)
    return _ALGEBRAS.setdefault((kind, n), a)


# ---------------------------------------------------------------------------
# PBW counting


def _series(num: list, odd_gens: int, even2: int, evens1: int, D: int) -> list:
    """Coefficients through t^D of (1+t)^odd (1-t)^-evens1 (1-t^2)^-even2."""
    c = [0] * (D + 1)
    for a in range(min(odd_gens, D) + 1):
        c[a] = comb(odd_gens, a)
    for _ in range(evens1):
        for d in range(1, D + 1):
            c[d] += c[d - 1]
    for _ in range(even2):
        for d in range(2, D + 1):
            c[d] += c[d - 2]
    return c


def pbw_dimension(kind: str, n: int, D: int) -> int:
    """Dimension of the degree-<=D filtration piece predicted by PBW."""
    if D < 0:
        return 0
    if kind == "pb":
        return sum(_series([], 2 * n, n * (2 * n + 1), 0, D))
    if kind == "pf":
        return sum(_series([], 0, 2 * n * n - n, 2 * n, D))
    if kind == "pbg":
        return pbw_dimension("pb", n, D) + pbw_dimension("pb", n, D - 1)
    if kind == "pbk":
        return sum(pbw_dimension("pb", n, D - abs(z)) for z in range(-D, D + 1))
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# exact spans


class Span:
    """Incrementally built basis of a subspace of the free algebra.

    Keeps a fully reduced echelon form plus, for each echelon row, its
    expression in the accepted basis vectors, so membership tests return
    coordinates.
    """

    def __init__(self):
        self.basis: list = []
        self._rows: dict = {}  # pivot word -> (vector dict, coordinate dict)

    def _reduce(self, vec: dict, coords: dict):
        vec, coords = dict(vec), dict(coords)
        for piv, (row, rc) in self._rows.items():
            c = vec.get(piv)
            if c:
                for w, x in row.items():
                    v = vec.get(w, 0) - c * x
                    if v:
                        vec[w] = v
                    else:
                        vec.pop(w, None)
                for k, x in rc.items():
                    v = coords.get(k, 0) - c * x
                    if v:
                        coords[k] = v
                    else:
                        coords.pop(k, None)
        return vec, coords

    def coordinates(self, x: Element):
        """Coordinates of x in the basis, or None if x is outside the span."""
        vec, coords = self._reduce(x.terms, {})
        if vec:
            return None
        return {k: -c for k, c in coords.items()}

    def add(self, x: Element) -> bool:
        vec, coords = self._reduce(x.terms, {len(self.basis): Fraction(1)})
        if not vec:
            return False
        piv = max(vec, key=deglex_key)
        c = vec[piv]
        vec = {w: v / c for w, v in vec.items()}
        coords = {k: v / c for k, v in coords.items()}
        for p, (row, rc) in list(self._rows.items()):
            a = row.get(piv)
            if a:
                for w, v in vec.items():
                    t = row.get(w, 0) - a * v
                    if t:
                        row[w] = t
                    else:
                        row.pop(w, None)
                for k, v in coords.items():
                    t = rc.get(k, 0) - a * v
                    if t:
                        rc[k] = t
                    else:
                        rc.pop(k, None)
        self._rows[piv] = (vec, coords)
        self.basis.append(x)
        return True

    def __len__(self):
        return len(self.basis)


# ---------------------------------------------------------------------------
# bracket tables


@dataclass
class BracketTable:
    """Structure constants of a (super) Lie algebra realised inside a quotient."""

    basis: list          # normal forms
    labels: list
    parities: list
    table: dict          # (i, j) -> {k: coefficient}

    def bracket_vector(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.table[i, j].items():
                    v = out.get(k, 0) + a * b * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def dims(self) -> tuple:
        odd = sum(self.parities)
        return len(self.parities) - odd, odd

    def antisymmetry_failures(self):
        p = self.parities
        for (i, j), v in self.table.items():
            sign = -1 if (p[i] and p[j]) else 1
            w = self.table[j, i]
            if {k: -sign * c for k, c in w.items()} != v:
                yield (i, j)

    def jacobi_failures(self):
        """(-1)^{|x||z|}<x,<y,z>> + (-1)^{|y||x|}<y,<z,x>> + (-1)^{|z||y|}<z,<x,y>> = 0."""
        p = self.parities
        N = len(p)
        e = [{i: Fraction(1)} for i in range(N)]
        for i, j, k in product(range(N), repeat=3):
            total: dict = {}
            for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                s = -1 if (p[a] and p[c]) else 1
                inner = self.table[b, c]
                for key, v in self.bracket_vector(e[a], inner).items():
                    t = total.get(key, 0) + s * v
                    if t:
                        total[key] = t
                    else:
                        total.pop(key, None)
            if total:
                yield (i, j, k)


def lie_spanning_set(p: Presentation, family: str, n: int):
    """(label, element, parity) for the quadratic brackets and the generators."""
    alpha = p.alphabet
    gens = [g for g in alpha if g.family == family]
    quad = []
    for a, b in product(gens, repeat=2):
        x, y = alpha.gen(a.token), alpha.gen(b.token)
        if family == "b":
            quad.append((f"{{{a.token},{b.token}}}", anticommutator(x, y), 0))
        else:
            quad.append((f"[{a.token},{b.token}]", commutator(x, y), 0))
    lin = [(g.token, alpha.gen(g.token), g.parity) for g in gens]
    return quad + lin


def bracket_table(p: Presentation, family: str, n: int, D: int, report: CheckResult | None = None):
    if D < 4:
        raise TruncationError(4, D)
    span = Span()
    basis, labels, pars = [], [], []
    for label, x, par in lie_spanning_set(p, family, n):
        nf = normal_form(x, p, D)
        if span.add(nf):
            basis.append(nf)
            labels.append(label)
            pars.append(par)
    table = {}
    missing = []
    for i, j in product(range(len(basis)), repeat=2):
        x, y = basis[i], basis[j]
        br = x * y + y * x if (pars[i] and pars[j]) else x * y - y * x
        coords = span.coordinates(normal_form(br, p, D))
        if coords is None:
            missing.append((labels[i], labels[j]))
            coords = {}
        table[i, j] = coords
    return BracketTable(basis, labels, pars, table), missing


def lie_closure_check(p: Presentation, D: int = 4, family: str | None = None,
                      n: int | None = None) -> Report:
    """Closure, dimension, super-antisymmetry and super-Jacobi of the bracket table."""
    if family is None:
        fams = {g.family for g in p.generators} & {"b", "f"}
        if len(fams) != 1:
            raise ParahopfError("lie check needs generators from exactly one of b, f")
        family = fams.pop()
    if n is None:
        n = max(g.index for g in p.generators if g.family == family)
    report = Report(f"Lie closure for {p.name} at D={D}")
    tbl, missing = bracket_table(p, family, n, D)
    N = len(tbl.basis)
    closure = report.add(CheckResult("closure", checked=N * N))
    if missing:
        closure.fail(f"bracket {missing[0][0]}, {missing[0][1]} leaves the span")
    dim = report.add(CheckResult("dimension", checked=1))
    even, odd = tbl.dims()
    expected = (n * (2 * n + 1), 2 * n) if family == "b" else (n * (2 * n + 1), 0)
    dim.details.update(even=even, odd=odd, expected_even=expected[0], expected_odd=expected[1])
    if (even, odd) != expected:
        dim.fail(f"span dimensions even={even}, odd={odd}; expected {expected}")
    anti = report.add(CheckResult("super-antisymmetry", checked=N * N))
    for i, j in tbl.antisymmetry_failures():
        anti.fail(f"<{tbl.labels[i]},{tbl.labels[j]}>")
        break
    jac = report.add(CheckResult("super-Jacobi", checked=N ** 3))
    for i, j, k in tbl.jacobi_failures():
        jac.fail(f"({tbl.labels[i]}, {tbl.labels[j]}, {tbl.labels[k]})")
        break
    report.table = tbl
    return report


# ---------------------------------------------------------------------------
# u(n) and the linear Casimir


def u_n_generators(p: Presentation, n: int) -> dict:
    """N_lm = ½{b_l^+, b_m^-}, keyed by (l, m)."""
    half = Fraction(1, 2)
    return {(l, m): anticommutator(p.gen(f"b{l}+"), p.gen(f"b{m}-")).scale(half)
            for l in range(1, n + 1) for m in range(1, n + 1)}


def number_operator(p: Presentation, n: int) -> Element:
    N = u_n_generators(p, n)
    out = p.alphabet.zero()
    for i in range(1, n + 1):
        out = out + N[i, i]
    return out


def u_n_check(p: Presentation, n: int, D: int = 4) -> Report:
    """[N_kl, N_mn] ≡ δ_lm N_kn − δ_kn N_ml for all index quadruples."""
    if D < 4:
        raise TruncationError(4, D)
    N = u_n_generators(p, n)
    report = Report(f"u({n}) commutators in {p.name} at D={D}")
    res = report.add(CheckResult("u(n) commutators"))
    zero = p.alphabet.zero()
    for k, l, m, q in product(range(1, n + 1), repeat=4):
        rhs = (N[k, q] if l == m else zero) - (N[m, l] if k == q else zero)
        diff = commutator(N[k, l], N[m, q]) - rhs
        res.checked += 1
        r = normal_form(diff, p, D)
        if r:
            res.fail(f"[N{k}{l},N{m}{q}]: residual {r}")
    return report


def casimir_checks(p: Presentation, n: int, M: int, D: int | None = None) -> Report:
    """[𝒩, b_i^±] ≡ ±b_i^± and [𝒩^m, b_i^+] ≡ b_i^+((𝒩+1)^m − 𝒩^m), m = 1..M.

    With D omitted each power m is reduced at its minimal truncation 2m+1.
    """
    if D is not None and D < 2 * M + 1:
        raise TruncationError(2 * M + 1, D)
    Nop = number_operator(p, n)
    one = p.one()
    report = Report(f"Casimir identities in {p.name} (M={M})")
    lin = report.add(CheckResult("[N, b] = ±b"))
    d1 = 3 if D is None else D
    lin.details["degree"] = d1
    for i in range(1, n + 1):
        for s in SIGNS:
            b = p.gen(f"b{i}{_sgn(s)}")
            lin.checked += 1
            r = normal_form(commutator(Nop, b) - b.scale(s), p, d1)
            if r:
                lin.fail(f"[N,b{i}{_sgn(s)}]: residual {r}")
    powers = [one]
    for _ in range(M):
        powers.append(powers[-1] * Nop)
    for m in range(1, M + 1):
        res = report.add(CheckResult(f"[N^{m}, b+] = b+((N+1)^{m} - N^{m})"))
        dm = 2 * m + 1 if D is None else D
        res.details["degree"] = dm
        shifted = (Nop + one) ** m
        for i in range(1, n + 1):
            b = p.gen(f"b{i}+")
            lhs = commutator(powers[m], b)
            rhs = b * (shifted - powers[m])
            res.checked += 1
            r = normal_form(lhs - rhs, p, dm)
            if r:
                res.fail(f"b{i}+: residual {r}")
    return report
