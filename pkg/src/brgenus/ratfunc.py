"""Rational functions in one variable, kept in factored form.

A :class:`RatFunc` is a nonzero constant times a product of powers of monic
irreducible polynomials, over Q (``modulus=None``) or F_p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, factor_mod_p, factor_over_q


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class RatFunc:
    const: object
    factors: tuple[tuple[Poly, int], ...] = ()
    modulus: int | None = None

    @classmethod
    def from_polys(cls, num: Poly, den: Poly | None = None) -> "RatFunc":
        den = den if den is not None else Poly([1], num.modulus)
        if not num or not den:
            raise ValueError("rational function entries must be nonzero")
        c1, f1 = _factor(num)
        c2, f2 = _factor(den)
        exps: dict[Poly, int] = {}
        for g, k in f1:
            exps[g] = exps.get(g, 0) + k
        for g, k in f2:
            exps[g] = exps.get(g, 0) - k
        if num.modulus is None:
            const = Fraction(c1) / Fraction(c2)
        else:
            const = c1 * pow(c2, -1, num.modulus) % num.modulus
        return cls._make(const, exps, num.modulus)

    @classmethod
    def _make(cls, const, exps, modulus):
        items = tuple(sorted(((g, k) for g, k in exps.items() if k), key=lambda t: _key(t[0])))
        return cls(const, items, modulus)

    @classmethod
    def constant(cls, c, modulus=None):
        if c == 0:
            raise ValueError("zero is not allowed")
        return cls(Fraction(c) if modulus is None else c % modulus, (), modulus)

    def exponent(self, pi: Poly) -> int:
        return dict(self.factors).get(pi, 0)

    @property
    def degree(self) -> int:
        """deg(numerator) - deg(denominator)."""
        return sum(g.degree * k for g, k in self.factors)

    def support(self) -> list[Poly]:
        return [g for g, _ in self.factors]

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        exps = dict(self.factors)
        for g, k in other.factors:
            exps[g] = exps.get(g, 0) + k
        if self.modulus is None:
            const = self.const * other.const
        else:
            const = self.const * other.const % self.modulus
        return RatFunc._make(const, exps, self.modulus)

    def __pow__(self, k: int) -> "RatFunc":
        if self.modulus is None:
            const = Fraction(self.const) ** k
        else:
            const = pow(self.const, k, self.modulus)
        return RatFunc._make(const, {g: e * k for g, e in self.factors}, self.modulus)

    def inverse(self):
        return self**-1

    def __str__(self):
        parts = []
        if self.const != 1 or not self.factors:
            parts.append(str(self.const))
        for g, k in self.factors:
            parts.append(f"({g})" + (f"^{k}" if k != 1 else ""))
        return "*".join(parts)


def _key(g: Poly):
    return (g.degree, tuple(str(c) for c in reversed(g.coeffs)))


def _factor(f: Poly):
    if f.modulus is None:
        if f.degree == 0:
            return f.lc, []
        return factor_over_q(f)
    if f.degree == 0:
        return f.lc, []
    return f.lc, factor_mod_p(f)


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            out.append(("x", None))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    """expr := term (('+'|'-') term)*; term := factor (('*'|'/'|implicit) factor)*;
    factor := ('-'|'+') factor | atom ('^' int)?"""

    def __init__(self, tokens, modulus):
        self.toks = tokens
        self.i = 0
        self.mod = modulus

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def const(self, c):
        return (Poly([c], self.mod), Poly([1], self.mod))

    def parse(self):
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing tokens: {self.toks[self.i:]}")
        return val

    def expr(self):
        num, den = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            n2, d2 = self.term()
            if op == "-":
                n2 = -n2
            num, den = num * d2 + n2 * den, den * d2
        return num, den

    def term(self):
        num, den = self.factor()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                n2, d2 = self.factor()
                if tok[1] == "*":
                    num, den = num * n2, den * d2
                else:
                    if not n2:
                        raise ParseError("division by zero")
                    num, den = num * d2, den * n2
            elif tok[0] in ("num", "x") or tok == ("op", "("):
                n2, d2 = self.factor()
                num, den = num * n2, den * d2
            else:
                return num, den

    def factor(self):
        tok = self.peek()
        if tok in (("op", "-"), ("op", "+")):
            self.take()
            num, den = self.factor()
            return (-num if tok[1] == "-" else num), den
        num, den = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, k = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            k *= sign
            if k < 0:
                num, den = den, num
                k = -k
            num, den = num**k, den**k
        return num, den

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.const(val)
        if kind == "x":
            return (Poly([0, 1], self.mod), Poly([1], self.mod))
        if (kind, val) == ("op", "("):
            out = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return out
        raise ParseError(f"unexpected token {val!r}")


def parse_polys(text: str, modulus: int | None = None) -> tuple[Poly, Poly]:
    return _Parser(_tokenize(text), modulus).parse()


def parse_ratfunc(text: str, modulus: int | None = None) -> RatFunc:
    num, den = parse_polys(text, modulus)
    if not num:
        raise ParseError(f"{text!r} is zero")
    return RatFunc.from_polys(num, den)


def split_top_level(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]
