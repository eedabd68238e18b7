"""Sparse integer polynomials in the fundamental-character variables z1..zr.

Every character and every operator coefficient in this package is carried by
:class:`ZPolynomial`: a map from exponent vectors to nonzero arbitrary-precision
integer coefficients.  The module also owns the plain-text grammar used by the
fixture files and the CLI (``-1 - z1 - z7 - z8 + z8^2`` style), including the
one-level factored form ``-4*(31 + 7*z1 + ...)`` used by operator tables.

Canonical emission order: terms are sorted ascending by the *reversed*
exponent vector, which reproduces the layout of the golden tables
(constants first, highest variable weighted last).
"""

from __future__ import annotations

import re
from typing import NamedTuple, Sequence

from .errors import ParseError, RankMismatchError

__all__ = [
    "ZPolynomial",
    "parse_poly",
    "print_poly",
    "FixtureRecord",
    "read_fixture_text",
    "read_fixture_file",
    "format_fixture_record",
]


def _term_key(exponents):
    return exponents[::-1]


class ZPolynomial:
    """Immutable sparse polynomial with big-integer coefficients."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms=None):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != rank:
                    raise RankMismatchError(
                        f"exponent vector {exps} does not have rank {rank}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                coeff = int(coeff)
                if coeff:
                    clean[exps] = clean.get(exps, 0) + coeff
                    if clean[exps] == 0:
                        del clean[exps]
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, rank: int) -> "ZPolynomial":
        return cls(rank)

    @classmethod
    def const(cls, rank: int, value: int) -> "ZPolynomial":
        p = cls(rank)
        if value:
            p._terms[(0,) * rank] = int(value)
        return p

    @classmethod
    def variable(cls, rank: int, index: int) -> "ZPolynomial":
        """The monomial z_index, 1-based."""
        if not 1 <= index <= rank:
            raise ValueError(f"variable index {index} out of range 1..{rank}")
        p = cls(rank)
        exps = [0] * rank
        exps[index - 1] = 1
        p._terms[tuple(exps)] = 1
        return p

    @classmethod
    def monomial(cls, rank: int, exponents: Sequence[int], coeff: int = 1) -> "ZPolynomial":
        return cls(rank, {tuple(exponents): coeff})

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> "ZPolynomial":
        # trusted constructor: terms already normalized
        p = cls.__new__(cls)
        p.rank = rank
        p._terms = terms
        return p

    # -- accessors ----------------------------------------------------

    @property
    def terms(self) -> dict:
        """Copy of the exponent-vector -> coefficient map."""
        return dict(self._terms)

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self._terms.get(tuple(exponents), 0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def sorted_terms(self):
        """Terms in canonical emission order."""
        return [(e, self._terms[e]) for e in sorted(self._terms, key=_term_key)]

    # -- ring operations ----------------------------------------------

    def _check_rank(self, other: "ZPolynomial"):
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other):
        if isinstance(other, int):
            other = ZPolynomial.const(self.rank, other)
        self._check_rank(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            val = terms.get(exps, 0) + coeff
            if val:
                terms[exps] = val
            elif exps in terms:
                del terms[exps]
        return ZPolynomial._raw(self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return ZPolynomial._raw(self.rank, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = ZPolynomial.const(self.rank, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZPolynomial(self.rank)
            return ZPolynomial._raw(
                self.rank, {e: c * other for e, c in self._terms.items()})
        self._check_rank(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(map(int.__add__, e1, e2))
                val = out.get(key, 0) + c1 * c2
                if val:
                    out[key] = val
                elif key in out:
                    del out[key]
        return ZPolynomial._raw(self.rank, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ZPolynomial.const(self.rank, other)._terms
        if not isinstance(other, ZPolynomial):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        return f"ZPolynomial(rank={self.rank}, {print_poly(self)!r})"

    # -- calculus and evaluation ---------------------------------------

    def partial_derivative(self, index: int) -> "ZPolynomial":
        """Formal derivative with respect to z_index (1-based)."""
        if not 1 <= index <= self.rank:
            raise ValueError(f"variable index {index} out of range 1..{self.rank}")
        i = index - 1
        out = {}
        for exps, coeff in self._terms.items():
            e = exps[i]
            if e:
                key = exps[:i] + (e - 1,) + exps[i + 1:]
                out[key] = out.get(key, 0) + coeff * e
        return ZPolynomial._raw(self.rank, {k: v for k, v in out.items() if v})

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.rank:
            raise RankMismatchError(
                f"point of length {len(point)} for rank {self.rank}")
        point = [int(x) for x in point]
        total = 0
        for exps, coeff in self._terms.items():
            val = coeff
            for x, e in zip(point, exps):
                if e:
                    val *= x ** e
            total += val
        return total


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+|\\,)|(?P<int>\d+)|z(?P<var>\d+)|(?P<op>[+\-*^()])")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("ws") is None:
            if m.group("int") is not None:
                tokens.append(("int", int(m.group("int")), m.start()))
            elif m.group("var") is not None:
                tokens.append(("var", int(m.group("var")), m.start()))
            else:
                tokens.append((m.group("op"), None, m.start()))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


def parse_poly(text: str, rank: int) -> ZPolynomial:
    """Parse polynomial text into a :class:`ZPolynomial`.

    Grammar: a signed sum of terms; a term is a product of integer
    coefficients and factors ``zN`` / ``zN^E`` joined by ``*`` or plain
    juxtaposition, or an integer-scaled parenthesized sum (one level only).
    ``\\,`` and whitespace are ignored.  Errors carry the byte offset.
    """
    if rank < 1:
        raise ValueError("rank must be positive")
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def parse_term(sign: int, in_paren: bool) -> dict:
        nonlocal pos
        coeff = sign
        exps = [0] * rank
        saw_factor = False
        while True:
            kind, value, off = peek()
            if kind == "int":
                pos += 1
                coeff *= value
                saw_factor = True
                if peek()[0] == "^":
                    raise ParseError("exponent applies only to variables",
                                     peek()[2])
            elif kind == "var":
                if not 1 <= value <= rank:
                    raise ParseError(f"variable z{value} exceeds rank {rank}", off)
                pos += 1
                exp = 1
                if peek()[0] == "^":
                    pos += 1
                    k2, v2, o2 = peek()
                    if k2 != "int":
                        raise ParseError("expected integer exponent", o2)
                    pos += 1
                    exp = v2
                exps[value - 1] += exp
                saw_factor = True
            elif kind == "(":
                if in_paren:
                    raise ParseError("nested parentheses are not allowed", off)
                if any(exps):
                    raise ParseError(
                        "parenthesized sum must be scaled by a plain integer", off)
                pos += 1
                inner = parse_sum(True)
                k2, _, o2 = peek()
                if k2 != ")":
                    raise ParseError("expected ')'", o2)
                pos += 1
                k3, _, o3 = peek()
                if k3 not in ("+", "-", "end"):
                    raise ParseError("unexpected token after ')'", o3)
                return {e: coeff * c for e, c in inner.items()}
            elif kind == "*":
                pos += 1
                if peek()[0] not in ("int", "var", "("):
                    raise ParseError("expected factor after '*'", peek()[2])
            else:
                break
        if not saw_factor:
            raise ParseError("expected term", peek()[2])
        return {tuple(exps): coeff}

    def parse_sum(in_paren: bool) -> dict:
        nonlocal pos
        acc: dict = {}
        sign = 1
        kind, _, _ = peek()
        if kind == "-":
            sign = -1
            pos += 1
        elif kind == "+":
            pos += 1
        while True:
            for exps, coeff in parse_term(sign, in_paren).items():
                val = acc.get(exps, 0) + coeff
                if val:
                    acc[exps] = val
                elif exps in acc:
                    del acc[exps]
            kind, _, _ = peek()
            if kind == "+":
                sign = 1
                pos += 1
            elif kind == "-":
                sign = -1
                pos += 1
            else:
                break
        return acc

    result = parse_sum(False)
    kind, _, off = peek()
    if kind != "end":
        raise ParseError("unexpected trailing input", off)
    return ZPolynomial._raw(rank, result)


def _format_monomial(exponents) -> str:
    parts = []
    for i, e in enumerate(exponents):
        if e == 1:
            parts.append(f"z{i + 1}")
        elif e > 1:
            parts.append(f"z{i + 1}^{e}")
    return "*".join(parts)


def print_poly(p: ZPolynomial) -> str:
    """Canonical text form; ``parse_poly(print_poly(p), p.rank) == p``."""
    if p.is_zero:
        return "0"
    pieces = []
    for exps, coeff in p.sorted_terms():
        mono = _format_monomial(exps)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"{'-' if coeff < 0 else '+'} {body}")
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# fixture records
# ---------------------------------------------------------------------------

class FixtureRecord(NamedTuple):
    """One ``chi[...]`` / ``a[j,k]`` / ``b[j]`` block of a fixture file."""

    kind: str            # "chi" | "a" | "b"
    index: tuple         # weight labels for chi, (j, k) for a, (j,) for b
    poly: ZPolynomial


_HEADER_RE = re.compile(r"^\s*(chi|a|b)\s*\[([0-9,\s]+)\]\s*=\s*(.*)$", re.S)


def read_fixture_text(text: str, rank: int) -> list[FixtureRecord]:
    """Parse a fixture file: blank-line-separated records, ``#`` comments."""
    stripped_lines = []
    for line in text.splitlines():
        hash_pos = line.find("#")
        if hash_pos >= 0:
            line = line[:hash_pos]
        stripped_lines.append(line)
    blocks = re.split(r"\n\s*\n", "\n".join(stripped_lines))
    records = []
    for block in blocks:
        if not block.strip():
            continue
        m = _HEADER_RE.match(block)
        if m is None:
            offset = text.find(block.strip()[:20])
            raise ParseError("fixture block does not start with a "
                             "chi[...]/a[...]/b[...] header", max(offset, 0))
        kind, index_text, body = m.groups()
        index = tuple(int(x) for x in index_text.split(","))
        if kind == "chi":
            if len(index) != rank:
                raise ParseError(
                    f"chi record has {len(index)} labels, expected {rank}",
                    text.find(block))
        elif kind == "a":
            if len(index) != 2 or not all(1 <= j <= rank for j in index):
                raise ParseError("a record needs two indices within rank",
                                 text.find(block))
        else:
            if len(index) != 1 or not 1 <= index[0] <= rank:
                raise ParseError("b record needs one index within rank",
                                 text.find(block))
        poly = parse_poly(body, rank)
        records.append(FixtureRecord(kind, index, poly))
    return records


def read_fixture_file(path, rank: int) -> list[FixtureRecord]:
    with open(path, "r", encoding="utf-8") as handle:
        return read_fixture_text(handle.read(), rank)


def format_fixture_record(record: FixtureRecord) -> str:
    index = ",".join(str(x) for x in record.index)
    return f"{record.kind}[{index}] = {print_poly(record.poly)}"
