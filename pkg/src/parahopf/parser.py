"""Expression parser, pretty printer and the presentation text format.

Grammar (whitespace insensitive)::

    top     := ['-'] tensor (('+' | '-') tensor)*
    tensor  := product ('ox' product){0,2}
    expr    := ['-'] product (('+' | '-') product)*      inside brackets
    product := factor ('*' factor)*
    factor  := atom ('^' uint)*
    atom    := gen | scalar | '(' expr ')' | '[' expr ',' expr ']' | '{' expr ',' expr '}'
    gen     := ('b' | 'f') uint ('+' | '-') | 'g' | 'K+' | 'K-'
    scalar  := uint ('/' uint)?

``ox`` binds tighter than ``+`` and ``-``, and is only allowed at the top
level, so a tensor has rank at most three and never nests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .kernel import (
    Alphabet,
    ParahopfError,
    TensorElement,
    anticommutator,
    commutator,
    parse_generator,
    tensor,
)
from .quotient import Presentation, TruncationError, normal_form, tensor_normal_form
from .superhopf import BRAIDED, PLAIN, StructureMaps, structure_maps


class ParseError(ParahopfError, ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Scalar:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    token: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Commutator:
    left: object
    right: object


@dataclass(frozen=True)
class Anticommutator:
    left: object
    right: object


@dataclass(frozen=True)
class Tensor:
    factors: tuple


# ---------------------------------------------------------------------------
# tokenizer

_TOKENS = re.compile(
    r"""(?P<ws>\s+)
      | (?P<gen>[bf]\d+[+-]|K[+-]|g(?![A-Za-z0-9]))
      | (?P<ox>ox(?![A-Za-z0-9])|⊗)
      | (?P<num>\d+)
      | (?P<op>[-+*/^\[\]{}(),])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _position(src: str, pos: int) -> tuple:
    line = src.count("\n", 0, pos) + 1
    col = pos - (src.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(src: str) -> list:
    out, pos = [], 0
    while pos < len(src):
        m = _TOKENS.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", *_position(src, pos))
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    out.append(_Tok("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, alphabet: Alphabet | None):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0
        self.alphabet = alphabet

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, *_position(self.src, tok.pos))

    def take(self, text: str | None = None, kind: str | None = None) -> _Tok:
        t = self.peek()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text else kind
            got = repr(t.text) if t.text else "end of input"
            self.error(f"expected {want}, found {got}")
        self.i += 1
        return t

    def at(self, *texts) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text in texts

    def top(self):
        node = self.sum(self.tensor)
        if self.peek().kind != "end":
            t = self.peek()
            if t.text in ")]}":
                self.error(f"unbalanced {t.text!r}")
            self.error(f"unexpected {t.text!r}")
        return node

    def sum(self, operand):
        if self.at("-"):
            self.take("-")
            node = Neg(operand())
        else:
            node = operand()
        while self.at("+", "-"):
            op = self.take().text
            rhs = operand()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def tensor(self):
        first = self.product()
        if self.peek().kind != "ox":
            return first
        factors = [first]
        while self.peek().kind == "ox":
            tok = self.take(kind="ox")
            if len(factors) == TensorElement.MAX_RANK:
                self.error("tensor rank above 3", tok)
            factors.append(self.product())
        return Tensor(tuple(factors))

    def inner(self):
        node = self.sum(self.product)
        if self.peek().kind == "ox":
            self.error("tensor products are only allowed at the top level")
        return node

    def product(self):
        node = self.factor()
        while self.at("*"):
            self.take("*")
            node = Mul(node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        while self.at("^"):
            self.take("^")
            node = Pow(node, int(self.take(kind="num").text))
        return node

    def atom(self):
        t = self.peek()
        if t.kind == "gen":
            self.i += 1
            if self.alphabet is not None and not self.alphabet.has(t.text):
                self.error(f"unknown generator {t.text!r}", t)
            return Gen(t.text)
        if t.kind == "num":
            self.i += 1
            num = int(t.text)
            if self.at("/"):
                self.take("/")
                den = self.take(kind="num")
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                return Scalar(Fraction(num, int(den.text)))
            return Scalar(Fraction(num))
        if self.at("("):
            self.take("(")
            node = self.inner()
            self.close(")", t)
            return node
        if self.at("[", "{"):
            opening = self.take().text
            a = self.inner()
            if self.peek().kind == "end":
                self.close(",", t)
            self.take(",")
            b = self.inner()
            if opening == "[":
                self.close("]", t)
                return Commutator(a, b)
            self.close("}", t)
            return Anticommutator(a, b)
        got = repr(t.text) if t.text else "end of input"
        self.error(f"expected a generator, number or bracket, found {got}")

    def close(self, text: str, opening: _Tok):
        if self.peek().text != text:
            line, col = _position(self.src, opening.pos)
            self.error(f"unbalanced {opening.text!r} opened at line {line}, column {col}")
        self.i += 1


def parse(source: str, p: Presentation | Alphabet | None = None):
    """Parse an expression; with ``p`` given, generator tokens are resolved."""
    if not source or not source.strip():
        raise ParseError("empty expression")
    alpha = p.alphabet if isinstance(p, Presentation) else p
    return _Parser(source, alpha).top()


# ---------------------------------------------------------------------------
# printing

# precedence levels: sum 0, tensor 1, product 2, power 3, atom 4
def _fmt(node, level: int) -> str:
    if isinstance(node, Gen):
        return node.token
    if isinstance(node, Scalar):
        v = node.value
        if v < 0:
            return _wrap(f"-{_fmt(Scalar(-v), 4)}", 0, level)
        return str(v)
    if isinstance(node, Commutator):
        return f"[{_fmt(node.left, 0)},{_fmt(node.right, 0)}]"
    if isinstance(node, Anticommutator):
        return f"{{{_fmt(node.left, 0)},{_fmt(node.right, 0)}}}"
    if isinstance(node, Pow):
        return f"{_fmt(node.base, 4)}^{node.exponent}"
    if isinstance(node, Mul):
        return _wrap(f"{_fmt(node.left, 2)}*{_fmt(node.right, 3)}", 2, level)
    if isinstance(node, Tensor):
        return _wrap(" ox ".join(_fmt(f, 2) for f in node.factors), 1, level)
    if isinstance(node, Neg):
        return _wrap(f"-{_fmt(node.operand, 1)}", 0, level)
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        return _wrap(f"{_fmt(node.left, 0)}{op}{_fmt(node.right, 1)}", 0, level)
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(s: str, own: int, level: int) -> str:
    return f"({s})" if own < level else s


def format_ast(node) -> str:
    """Print an AST so that parsing the result gives the same AST back."""
    return _fmt(node, 0)


# ---------------------------------------------------------------------------
# evaluation


def lower(node, alphabet: Alphabet):
    """Turn an AST into an Element or TensorElement (no reduction)."""
    if isinstance(node, Gen):
        if not alphabet.has(node.token):
            raise ParseError(f"unknown generator {node.token!r}")
        return alphabet.gen(node.token)
    if isinstance(node, Scalar):
        return alphabet.scalar(node.value)
    if isinstance(node, Neg):
        return -lower(node.operand, alphabet)
    if isinstance(node, Tensor):
        parts = [lower(f, alphabet) for f in node.factors]
        return tensor(*parts)
    if isinstance(node, Pow):
        return lower(node.base, alphabet) ** node.exponent
    a, b = lower(node.left, alphabet), lower(node.right, alphabet)
    if isinstance(node, (Add, Sub)):
        if isinstance(a, TensorElement) != isinstance(b, TensorElement):
            raise ParseError("cannot add a tensor and a plain element")
        return a + b if isinstance(node, Add) else a - b
    if isinstance(node, Mul):
        return a * b
    if isinstance(node, Commutator):
        return commutator(a, b)
    if isinstance(node, Anticommutator):
        return anticommutator(a, b)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(ast, p: Presentation, D: int | None = None):
    """Lower ``ast`` (or source text) and reduce it modulo the relations of ``p``.

    With D omitted the truncation is the larger of the presentation's default
    and the degree of the expression.
    """
    if isinstance(ast, str):
        ast = parse(ast, p)
    x = lower(ast, p.alphabet)
    if D is None:
        D = max(p.degree, x.degree)
    elif x.degree > D:
        raise TruncationError(x.degree, D)
    if isinstance(x, TensorElement):
        return tensor_normal_form(x, p, D)
    return normal_form(x, p, D)


# ---------------------------------------------------------------------------
# presentation text format


def dump_presentation(p: Presentation, maps: StructureMaps | None = None) -> str:
    """Line-oriented text: header, generators, relations, then optional maps."""
    lines = [f"algebra {p.name}", f"degree {p.degree}"]
    for g in p.generators:
        lines.append(f"generator {g.token} parity={'odd' if g.parity else 'even'}")
    for r in p.relations:
        lines.append(f"relation {r}")
    if maps is not None:
        lines.append(f"flavor {maps.flavor}")
        for i, g in enumerate(p.generators):
            lines.append(f"coproduct {g.token} = {maps.coproduct[i]}")
            lines.append(f"counit {g.token} = {maps.counit[i]}")
            lines.append(f"antipode {g.token} = {maps.antipode[i]}")
    return "\n".join(lines) + "\n"


def presentation_to_dict(p: Presentation, maps: StructureMaps | None = None) -> dict:
    d = {
        "name": p.name,
        "degree": p.degree,
        "generators": [{"token": g.token, "parity": "odd" if g.parity else "even"}
                       for g in p.generators],
        "relations": [str(r) for r in p.relations],
    }
    if maps is not None:
        d["flavor"] = maps.flavor
        d["maps"] = [
            {"generator": g.token, "coproduct": str(maps.coproduct[i]),
             "counit": str(maps.counit[i]), "antipode": str(maps.antipode[i])}
            for i, g in enumerate(p.generators)
        ]
    return d


_PARITY = {"even": 0, "odd": 1}


def load_presentation(text: str):
    """Inverse of :func:`dump_presentation`; returns (presentation, maps or None)."""
    name, degree, flavor = None, 4, PLAIN
    gens, rels, maps = [], [], {"coproduct": {}, "counit": {}, "antipode": {}}
    alphabet = None

    def fail(msg, lineno, col=1):
        raise ParseError(msg, lineno, col)

    def expr(src, lineno, col):
        try:
            return parse(src, alphabet)
        except ParseError as e:
            raise ParseError(str(e).rsplit(" (line", 1)[0], lineno, col + e.column - 1)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        key, _, rest = line.strip().partition(" ")
        offset = len(raw) - len(raw.lstrip()) + len(key) + 2
        rest = rest.strip()
        if key == "algebra":
            name = rest
        elif key == "degree":
            if not rest.isdigit():
                fail("degree must be a non-negative integer", lineno, offset)
            degree = int(rest)
        elif key == "generator":
            if alphabet is not None:
                fail("generators must precede relations and maps", lineno)
            parts = rest.split()
            if len(parts) != 2 or not parts[1].startswith("parity="):
                fail("expected 'generator <token> parity=even|odd'", lineno, offset)
            par = _PARITY.get(parts[1][len("parity="):])
            if par is None:
                fail("parity must be even or odd", lineno, offset)
            try:
                gens.append(parse_generator(parts[0], par))
            except ValueError as e:
                fail(str(e), lineno, offset)
        elif key in ("relation", "coproduct", "counit", "antipode", "flavor"):
            if alphabet is None:
                if not gens:
                    fail("no generators declared", lineno)
                alphabet = Alphabet(gens)
            if key == "relation":
                rels.append(lower(expr(rest, lineno, offset), alphabet))
            elif key == "flavor":
                if rest not in (BRAIDED, PLAIN):
                    fail(f"flavor must be {BRAIDED} or {PLAIN}", lineno, offset)
                flavor = rest
            else:
                tok, eq, body = rest.partition("=")
                tok = tok.strip()
                if not eq or not alphabet.has(tok):
                    fail(f"expected '{key} <generator> = <expr>'", lineno, offset)
                val = lower(expr(body, lineno, offset + len(tok) + 2), alphabet)
                if key == "counit":
                    if val.degree > 0:
                        fail("counit image must be a scalar", lineno, offset)
                    val = val.coefficient(())
                elif key == "coproduct" and not isinstance(val, TensorElement):
                    if val.is_zero():
                        val = TensorElement(alphabet, 2)
                    else:
                        fail("coproduct image must be a rank-2 tensor", lineno, offset)
                maps[key][tok] = val
        else:
            fail(f"unknown directive {key!r}", lineno)
    if name is None:
        raise ParseError("missing 'algebra <name>' header")
    if alphabet is None:
        if not gens:
            raise ParseError("no generators declared")
        alphabet = Alphabet(gens)
    p = Presentation(name, alphabet, tuple(rels), degree)
    if not any(maps.values()):
        return p, None
    return p, structure_maps(p, maps["coproduct"], maps["counit"], maps["antipode"], flavor)
