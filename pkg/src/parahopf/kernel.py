"""Free-algebra arithmetic over the rationals with a Z2-grading.

Words are tuples of generator indices into an :class:`Alphabet`; the index
order is the declared generator order, so Python's tuple comparison on
``(len(w), w)`` is the degree-lexicographic order used everywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Word = tuple  # tuple[int, ...]

FAMILIES = ("b", "f", "g", "K")


class ParahopfError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetMismatchError(ParahopfError):
    """Operands belong to different presentations."""


class RankError(ParahopfError):
    pass


class HomogeneityError(ParahopfError):
    pass


@dataclass(frozen=True)
class Generator:
    family: str
    sign: str | None = None
    index: int | None = None
    parity: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown generator family {self.family!r}")
        if self.family in ("g", "K") and self.index is not None:
            raise ValueError(f"{self.family} carries no index")
        if self.family == "K" and self.sign not in ("+", "-"):
            raise ValueError("K needs a sign")
        if self.family == "g" and self.sign is not None:
            raise ValueError("g carries no sign")
        if self.family in ("b", "f"):
            if self.sign not in ("+", "-") or not self.index or self.index < 1:
                raise ValueError(f"{self.family} needs a sign and a positive index")
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 (even) or 1 (odd)")

    @property
    def token(self) -> str:
        if self.family == "g":
            return "g"
        if self.family == "K":
            return "K" + self.sign
        return f"{self.family}{self.index}{self.sign}"

    def __str__(self):
        return self.token


_TOKEN = re.compile(r"^(?:([bf])(\d+)([+-])|(g)|K([+-]))$")


def parse_generator(token: str, parity: int | None = None) -> Generator:
    """Build a generator from its token; b's default to odd, the rest to even."""
    m = _TOKEN.match(token)
    if not m:
        raise ValueError(f"bad generator token {token!r}")
    if m.group(1):
        fam = m.group(1)
        par = (1 if fam == "b" else 0) if parity is None else parity
        return Generator(fam, m.group(3), int(m.group(2)), par)
    if m.group(4):
        return Generator("g", None, None, 0 if parity is None else parity)
    return Generator("K", m.group(5), None, 0 if parity is None else parity)


class Alphabet:
    """An ordered, immutable list of generators."""

    __slots__ = ("generators", "_index", "_parity", "_hash")

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generators")
        tokens = [g.token for g in gens]
        if len(set(tokens)) != len(tokens):
            raise ValueError("duplicate generator tokens")
        self.generators = gens
        self._index = {g.token: i for i, g in enumerate(gens)}
        self._parity = tuple(g.parity for g in gens)
        self._hash = hash(gens)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i) -> Generator:
        return self.generators[i]

    def __eq__(self, other):
        return isinstance(other, Alphabet) and (
            self is other or self.generators == other.generators
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Alphabet(%s)" % " < ".join(g.token for g in self.generators)

    def index(self, token: str) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise KeyError(f"unknown generator {token!r}") from None

    def has(self, token: str) -> bool:
        return token in self._index

    def word_parity(self, w: Word) -> int:
        p = self._parity
        return sum(p[i] for i in w) & 1

    def word_str(self, w: Word) -> str:
        return "*".join(self.generators[i].token for i in w) if w else "1"

    # constructors
    def gen(self, token: str) -> "Element":
        return Element(self, {(self.index(token),): Fraction(1)})

    def word(self, *tokens: str) -> "Element":
        return Element(self, {tuple(self.index(t) for t in tokens): Fraction(1)})

    def one(self) -> "Element":
        return Element(self, {(): Fraction(1)})

    def zero(self) -> "Element":
        return Element(self, {})

    def scalar(self, c) -> "Element":
        return Element(self, {(): Fraction(c)})

    def embed(self, x: "Element") -> "Element":
        """Re-index an element over a sub-alphabet into this one."""
        if x.alphabet == self:
            return x
        idx = [self.index(g.token) for g in x.alphabet]
        return Element(self, {tuple(idx[i] for i in w): c for w, c in x.terms.items()})


def deglex_key(w: Word):
    return (len(w), w)


def _add_term(d: dict, w, c) -> None:
    v = d.get(w)
    if v is None:
        if c:
            d[w] = c
    else:
        v += c
        if v:
            d[w] = v
        else:
            del d[w]


class Element:
    """Finite rational combination of words; treat as immutable."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, object] | None = None):
        self.alphabet = alphabet
        clean = {}
        if terms:
            for w, c in terms.items():
                c = c if type(c) is Fraction else Fraction(c)
                if c:
                    clean[tuple(w)] = c
        self.terms: dict = clean

    @classmethod
    def _raw(cls, alphabet, terms):
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj.terms = terms
        return obj

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.alphabet != self.alphabet:
                raise AlphabetMismatchError(
                    f"{self.alphabet!r} vs {other.alphabet!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.alphabet.scalar(other)
        return NotImplemented

    # --- inspection
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def words(self) -> list:
        return sorted(self.terms, key=deglex_key)

    def leading_word(self) -> Word:
        return max(self.terms, key=deglex_key)

    def parities(self) -> set:
        return {self.alphabet.word_parity(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.parities()) <= 1

    @property
    def parity(self) -> int:
        ps = self.parities()
        if len(ps) > 1:
            raise HomogeneityError(f"{self} is not parity-homogeneous")
        return ps.pop() if ps else 0

    def coefficient(self, w: Word) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    # --- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for w, c in other.terms.items():
            _add_term(d, w, c)
        return Element._raw(self.alphabet, d)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for w, c in other.terms.items():
            _add_term(d, w, -c)
        return Element._raw(self.alphabet, d)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return self.alphabet.zero()
        return Element._raw(self.alphabet, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                _add_term(d, u + v, a * b)
        return Element._raw(self.alphabet, d)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = self.alphabet.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alphabet.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __str__(self):
        return format_terms(
            [(c, self.alphabet.word_str(w)) for w, c in sorted(
                self.terms.items(), key=lambda t: deglex_key(t[0]))]
        )

    def __repr__(self):
        return f"Element({self})"


def format_coefficient_term(c: Fraction, body: str, first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if body == "1":
        core = str(a)
    elif a == 1:
        core = body
    else:
        core = f"{a}*{body}"
    if first:
        return ("-" if neg else "") + core
    return (" - " if neg else " + ") + core


def format_terms(items: Sequence[tuple]) -> str:
    if not items:
        return "0"
    return "".join(
        format_coefficient_term(c, body, i == 0) for i, (c, body) in enumerate(items)
    )


def multiply(x: Element, y: Element) -> Element:
    return x * y


def commutator(x: Element, y: Element) -> Element:
    return x * y - y * x


def anticommutator(x: Element, y: Element) -> Element:
    return x * y + y * x


def supercommutator(x: Element, y: Element) -> Element:
    """xy - (-1)^{|x||y|} yx for homogeneous x, y."""
    if x.parity and y.parity:
        return anticommutator(x, y)
    return commutator(x, y)


class TensorElement:
    """Rational combination of r-tuples of words (r = 2 or 3)."""

    __slots__ = ("alphabet", "rank", "terms")

    MAX_RANK = 3

    def __init__(self, alphabet: Alphabet, rank: int, terms: Mapping | None = None):
        if not 2 <= rank <= self.MAX_RANK:
            raise RankError(f"tensor rank {rank} outside 2..{self.MAX_RANK}")
        self.alphabet = alphabet
        self.rank = rank
        clean = {}
        for k, c in (terms or {}).items():
            if len(k) != rank:
                raise RankError(f"term {k!r} has rank {len(k)}, expected {rank}")
            c = Fraction(c)
            if c:
                clean[tuple(tuple(w) for w in k)] = c
        self.terms: dict = clean

    @classmethod
    def _raw(cls, alphabet, rank, terms):
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj.rank = rank
        obj.terms = terms
        return obj

    def _check(self, other: "TensorElement"):
        if not isinstance(other, TensorElement):
            raise TypeError("expected a TensorElement")
        if other.alphabet != self.alphabet:
            raise AlphabetMismatchError("tensor operands over different alphabets")
        if other.rank != self.rank:
            raise RankError(f"rank {self.rank} vs {other.rank}")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((max(len(w) for w in k) for k in self.terms), default=-1)

    def __add__(self, other):
        self._check(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            _add_term(d, k, c)
        return TensorElement._raw(self.alphabet, self.rank, d)

    def __sub__(self, other):
        self._check(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            _add_term(d, k, -c)
        return TensorElement._raw(self.alphabet, self.rank, d)

    def __neg__(self):
        return TensorElement._raw(
            self.alphabet, self.rank, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        return TensorElement._raw(
            self.alphabet, self.rank,
            {k: c * x for k, x in self.terms.items()} if c else {})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.rank == other.rank
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, self.rank, frozenset(self.terms.items())))

    def slot(self, key, i) -> Element:
        return Element._raw(self.alphabet, {key[i]: Fraction(1)})

    def __str__(self):
        a = self.alphabet
        items = sorted(self.terms.items(),
                       key=lambda t: tuple(deglex_key(w) for w in t[0]))
        return format_terms(
            [(c, " ox ".join(a.word_str(w) for w in k)) for k, c in items])

    def __repr__(self):
        return f"TensorElement({self})"


def tensor(*factors: Element) -> TensorElement:
    """Multilinear tensor product of elements."""
    if not 2 <= len(factors) <= TensorElement.MAX_RANK:
        raise RankError(f"tensor rank {len(factors)} outside 2..3")
    alpha = factors[0].alphabet
    for f in factors[1:]:
        if f.alphabet != alpha:
            raise AlphabetMismatchError("tensor factors over different alphabets")
    terms = {(): Fraction(1)}
    for f in factors:
        terms = {k + (w,): c * x for k, c in terms.items() for w, x in f.terms.items()}
    return TensorElement._raw(alpha, len(factors), terms)


def unit_tensor(alphabet: Alphabet, rank: int = 2) -> TensorElement:
    return TensorElement._raw(alphabet, rank, {((),) * rank: Fraction(1)})


def _tensor_product(s: TensorElement, t: TensorElement, braided: bool) -> TensorElement:
    s._check(t)
    par = s.alphabet.word_parity
    d: dict = {}
    r = s.rank
    for k1, c1 in s.terms.items():
        if braided:
            pk = [par(w) for w in k1]
            suffix = [0] * (r + 1)
            for i in range(r - 1, -1, -1):
                suffix[i] = suffix[i + 1] ^ pk[i]
        for k2, c2 in t.terms.items():
            c = c1 * c2
            if braided:
                # t-slot j moves left past s-slots j+1..r-1
                sgn = 0
                for j in range(r - 1):
                    if par(k2[j]) and suffix[j + 1]:
                        sgn ^= 1
                if sgn:
                    c = -c
            _add_term(d, tuple(a + b for a, b in zip(k1, k2)), c)
    return TensorElement._raw(s.alphabet, r, d)


def braided_tensor_multiply(s: TensorElement, t: TensorElement) -> TensorElement:
    """(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd, extended bilinearly."""
    if s.rank != 2 or t.rank != 2:
        raise RankError("braided product is defined on rank-2 tensors")
    return _tensor_product(s, t, braided=True)


def braided_tensor_multiply_n(s: TensorElement, t: TensorElement) -> TensorElement:
    """Koszul-signed product on rank-r tensors (each slot of t crosses later slots of s)."""
    return _tensor_product(s, t, braided=True)


def plain_tensor_multiply(s: TensorElement, t: TensorElement) -> TensorElement:
    """Slotwise concatenation, no signs."""
    return _tensor_product(s, t, braided=False)


def braiding(v: Element, w: Element) -> TensorElement:
    """Symmetric braiding of Z2-graded spaces: v⊗w -> (-1)^{|v||w|} w⊗v."""
    if v.alphabet != w.alphabet:
        raise AlphabetMismatchError("braiding operands over different alphabets")
    if not v.is_homogeneous() or not w.is_homogeneous():
        raise HomogeneityError("braiding needs parity-homogeneous arguments")
    sign = -1 if (v.parity and w.parity) else 1
    return tensor(w, v).scale(sign)


def flip(t: TensorElement) -> TensorElement:
    """Signed flip applied termwise (linear extension of the braiding)."""
    if t.rank != 2:
        raise RankError("flip needs rank 2")
    par = t.alphabet.word_parity
    d = {}
    for (a, b), c in t.terms.items():
        _add_term(d, (b, a), -c if par(a) and par(b) else c)
    return TensorElement._raw(t.alphabet, 2, d)
