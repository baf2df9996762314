"""Quotient algebras T(V)/I at bounded filtration degree.

The degree-<=D part of the two-sided ideal is spanned by the products
u*r*v (r a relation, deg u + deg r + deg v <= D).  We put that span in
fully reduced echelon form with respect to deglex and read normal forms off
the pivots.  Words are encoded as integers in bijective base len(alphabet)+1,
which makes integer order coincide with deglex order.

Elimination is split by sectors of an abelian grading (parity, particle
weights, ...) under which every relation is homogeneous, so a normal form only
ever touches the sectors its words live in.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .kernel import (
    Alphabet,
    Element,
    Generator,
    HomogeneityError,
    ParahopfError,
    TensorElement,
    _add_term,
)


class TruncationError(ParahopfError):
    def __init__(self, required: int, degree: int):
        self.required = required
        self.degree = degree
        super().__init__(
            f"element of degree {required} exceeds truncation degree {degree}; "
            f"use a truncation degree of at least {required}"
        )


# ---------------------------------------------------------------------------
# gradings


def _candidate_gradings(alphabet: Alphabet):
    """(name, modulus, weight-per-generator) triples; modulus 0 means Z."""
    gens = alphabet.generators
    out = [("parity", 2, [g.parity for g in gens])]
    for fam in ("b", "f"):
        idx = sorted({g.index for g in gens if g.family == fam})
        for i in idx:
            out.append((f"{fam}{i}", 0, [
                (1 if g.sign == "+" else -1) if (g.family == fam and g.index == i) else 0
                for g in gens]))
        if idx:
            out.append((f"#{fam}", 2, [int(g.family == fam) for g in gens]))
    if any(g.family == "g" for g in gens):
        out.append(("#g", 2, [int(g.family == "g") for g in gens]))
    if any(g.family == "K" for g in gens):
        out.append(("K", 0, [
            (1 if g.sign == "+" else -1) if g.family == "K" else 0 for g in gens]))
    return out


def _weight(wt, mod, w):
    s = sum(wt[i] for i in w)
    return s % mod if mod else s


def _homogeneous(rel: Element, wt, mod) -> bool:
    return len({_weight(wt, mod, w) for w in rel.terms}) <= 1


@dataclass(frozen=True, eq=False)
class Presentation:
    """A named algebra: generators (in deglex order) and defining relations."""

    name: str
    alphabet: Alphabet
    relations: tuple
    degree: int = 4
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        rels = tuple(r for r in self.relations if not r.is_zero())
        for r in rels:
            if r.alphabet != self.alphabet:
                raise ValueError(f"relation {r} is over a different alphabet")
            if not r.is_homogeneous():
                raise HomogeneityError(f"relation {r} is not parity-homogeneous")
        object.__setattr__(self, "relations", rels)
        grads = [
            (name, mod, wt) for name, mod, wt in _candidate_gradings(self.alphabet)
            if all(_homogeneous(r, wt, mod) for r in rels)
        ]
        object.__setattr__(self, "gradings", tuple(grads))

    @property
    def generators(self) -> tuple:
        return self.alphabet.generators

    @property
    def relation_degree(self) -> int:
        return max((r.degree for r in self.relations), default=0)

    def gen(self, token: str) -> Element:
        return self.alphabet.gen(token)

    def one(self) -> Element:
        return self.alphabet.one()

    def sector(self, w) -> tuple:
        return tuple(_weight(wt, mod, w) for _, mod, wt in self.gradings)

    def basis(self, D: int) -> "ReducedIdealBasis":
        with self._lock:
            b = self._cache.get(D)
            if b is None:
                b = self._cache[D] = ReducedIdealBasis(self, D)
        return b

    def __repr__(self):
        return (f"Presentation({self.name!r}, {len(self.alphabet)} generators, "
                f"{len(self.relations)} relations)")


def make_presentation(name: str, generators: Iterable[Generator],
                      relations: Iterable, degree: int = 4) -> Presentation:
    alpha = generators if isinstance(generators, Alphabet) else Alphabet(generators)
    return Presentation(name, alpha, tuple(relations), degree)


# ---------------------------------------------------------------------------
# elimination


class ReducedIdealBasis:
    """Fully reduced echelon basis of span{u*r*v} in degrees <= D.

    Built sector by sector on demand; a built sector is never modified again.
    """

    def __init__(self, presentation: Presentation, D: int):
        if D < 0:
            raise ValueError("truncation degree must be non-negative")
        self.presentation = presentation
        self.degree = D
        alpha = presentation.alphabet
        self._base = B = len(alpha) + 1
        self._pow = [B ** k for k in range(D + 2)]
        mods = tuple(mod for _, mod, _ in presentation.gradings)
        self._mods = mods
        self._gvec = [tuple(wt[i] for _, _, wt in presentation.gradings)
                      for i in range(len(alpha))]
        self._rels = []
        for r in presentation.relations:
            terms = [(self.encode(w), len(w), c) for w, c in r.terms.items()]
            self._rels.append((presentation.sector(next(iter(r.terms))), r.degree, terms))
        self._sectors: dict = {}
        self._lock = threading.Lock()
        self._words = None
        self._complete = False

    # --- encoding
    def encode(self, w) -> int:
        B = self._base
        x = 0
        for i in w:
            x = x * B + i + 1
        return x

    def decode(self, x: int) -> tuple:
        B = self._base
        out = []
        while x:
            x, d = divmod(x, B)
            out.append(d - 1)
        return tuple(reversed(out))

    def _add(self, s, t):
        return tuple((a + b) % m if m else a + b for a, b, m in zip(s, t, self._mods))

    def _sub(self, s, t):
        return tuple((a - b) % m if m else a - b for a, b, m in zip(s, t, self._mods))

    def _word_table(self):
        """Multiplier words grouped by length then sector, as (code) lists."""
        if self._words is None:
            maxlen = max((self.degree - d for _, d, _ in self._rels), default=-1)
            table = []
            zero = tuple(0 for _ in self._mods)
            layer = {zero: [0]}
            for L in range(maxlen + 1):
                table.append(layer)
                if L == maxlen:
                    break
                nxt: dict = {}
                B = self._base
                for s, codes in layer.items():
                    for i, gv in enumerate(self._gvec):
                        s2 = self._add(s, gv)
                        bucket = nxt.setdefault(s2, [])
                        bucket.extend(c * B + i + 1 for c in codes)
                layer = nxt
            self._words = table
        return self._words

    def _rows(self, target=None):
        """Rows u*r*v; restricted to one sector when target is given."""
        table = self._word_table()
        P = self._pow
        D = self.degree
        for s_r, d_r, terms in self._rels:
            if d_r > D:
                continue
            for a in range(D - d_r + 1):
                for b in range(D - d_r - a + 1):
                    pb = P[b]
                    shifted = [(w * pb, P[lw + b], c) for w, lw, c in terms]
                    for s_u, us in table[a].items():
                        if target is None:
                            for s_v, vs in table[b].items():
                                key = self._add(self._add(s_u, s_r), s_v)
                                for u in us:
                                    for v in vs:
                                        yield key, {u * pu + w + v: c for w, pu, c in shifted}
                        else:
                            vs = table[b].get(self._sub(self._sub(target, s_u), s_r))
                            if not vs:
                                continue
                            for u in us:
                                for v in vs:
                                    yield target, {u * pu + w + v: c for w, pu, c in shifted}

    @staticmethod
    def _eliminate(rows) -> dict:
        """Incremental fully reduced echelon form; returns leading code -> normal form."""
        rows.sort(key=max)
        nf: dict = {}
        users: dict = {}
        for row in rows:
            out: dict = {}
            for w, x in row.items():
                q = nf.get(w)
                if q is None:
                    _add_term(out, w, x)
                else:
                    for w2, y in q.items():
                        _add_term(out, w2, x * y)
            if not out:
                continue
            lw = max(out)
            c = out.pop(lw)
            new = {w: -x / c for w, x in out.items()}
            for p in users.pop(lw, ()):
                q = nf[p]
                x = q.pop(lw)
                for w, y in new.items():
                    v = q.get(w)
                    if v is None:
                        q[w] = x * y
                        users.setdefault(w, set()).add(p)
                    else:
                        v += x * y
                        if v:
                            q[w] = v
                        else:
                            del q[w]
                            users[w].discard(p)
            nf[lw] = new
            for w in new:
                users.setdefault(w, set()).add(lw)
        return nf

    def sector_basis(self, s) -> dict:
        got = self._sectors.get(s)
        if got is not None:
            return got
        with self._lock:
            got = self._sectors.get(s)
            if got is None:
                got = self._eliminate([row for _, row in self._rows(s)])
                self._sectors[s] = got
        return got

    def _build_all(self):
        if self._complete:
            return
        with self._lock:
            buckets: dict = {}
            for s, row in self._rows():
                if s not in self._sectors:
                    buckets.setdefault(s, []).append(row)
            for s, rows in buckets.items():
                self._sectors[s] = self._eliminate(rows)
            self._complete = True

    # --- public views
    @property
    def rank(self) -> int:
        self._build_all()
        return sum(len(nf) for nf in self._sectors.values())

    def rows(self) -> list:
        """Echelon rows as Elements, ordered by leading word."""
        self._build_all()
        alpha = self.presentation.alphabet
        out = []
        for nf in self._sectors.values():
            for lw, tail in nf.items():
                d = {self.decode(lw): Fraction(1)}
                for w, c in tail.items():
                    d[self.decode(w)] = -c
                out.append((lw, Element._raw(alpha, d)))
        out.sort(key=lambda t: t[0])
        return [e for _, e in out]

    def leading_words(self) -> list:
        self._build_all()
        return sorted(self.decode(lw) for nf in self._sectors.values() for lw in nf)

    def is_leading(self, w) -> bool:
        return self.encode(w) in self.sector_basis(self.presentation.sector(w))

    def reduce_word(self, w) -> dict:
        """Normal form of one word as {word: coefficient}."""
        if len(w) > self.degree:
            raise TruncationError(len(w), self.degree)
        code = self.encode(w)
        q = self.sector_basis(self.presentation.sector(w)).get(code)
        if q is None:
            return {tuple(w): Fraction(1)}
        return {self.decode(c): x for c, x in q.items()}

    def normal_form(self, x: Element) -> Element:
        if x.alphabet != self.presentation.alphabet:
            raise ValueError("element is not over this presentation's alphabet")
        if x.degree > self.degree:
            raise TruncationError(x.degree, self.degree)
        out: dict = {}
        sector = self.presentation.sector
        for w, c in x.terms.items():
            code = self.encode(w)
            q = self.sector_basis(sector(w)).get(code)
            if q is None:
                _add_term(out, code, c)
            else:
                for w2, y in q.items():
                    _add_term(out, w2, c * y)
        return Element._raw(x.alphabet, {self.decode(k): v for k, v in out.items()})


def build_ideal_basis(p: Presentation, D: int) -> ReducedIdealBasis:
    return p.basis(D)


def normal_form(x: Element, p: Presentation, D: int | None = None) -> Element:
    D = p.degree if D is None else D
    if x.degree > D:
        raise TruncationError(x.degree, D)
    return p.basis(D).normal_form(x)


def equal_mod_ideal(x: Element, y: Element, p: Presentation, D: int | None = None) -> bool:
    return normal_form(x - y, p, D).is_zero()


def filtration_dimension(p: Presentation, D: int) -> int:
    """Dimension of the image of words of length <= D in the quotient."""
    G = len(p.alphabet)
    total = sum(G ** L for L in range(D + 1))
    return total - p.basis(D).rank


def tensor_normal_form(t: TensorElement, p: Presentation, D: int | None = None) -> TensorElement:
    """Slotwise normal form, expanded multilinearly."""
    D = p.degree if D is None else D
    if t.degree > D:
        raise TruncationError(t.degree, D)
    basis = p.basis(D)
    memo: dict = {}

    def nf(w):
        r = memo.get(w)
        if r is None:
            r = memo[w] = list(basis.reduce_word(w).items())
        return r

    out: dict = {}
    for key, c in t.terms.items():
        partial = [((), c)]
        for w in key:
            partial = [(k + (w2,), x * y) for k, x in partial for w2, y in nf(w)]
        for k, x in partial:
            _add_term(out, k, x)
    return TensorElement._raw(t.alphabet, t.rank, out)
