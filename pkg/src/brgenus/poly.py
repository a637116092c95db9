"""Dense univariate polynomials over Q and F_p.

Resultants use the Sylvester matrix with the rows of the first argument on
top, so ``resultant(x - a, x - b) == a - b``.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import product

from .arith import is_prime, valuation


class DomainError(ValueError):
    pass


class Poly:
    """Immutable polynomial; ``modulus`` is None over Q, else a prime p."""

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs, modulus: int | None = None):
        if modulus is None:
            cs = [Fraction(c) for c in coeffs]
        else:
            if not is_prime(modulus):
                raise DomainError(f"{modulus} is not prime")
            cs = [_to_fp(c, modulus) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.modulus = modulus

    # construction helpers
    @classmethod
    def x(cls, modulus=None):
        return cls([0, 1], modulus)

    @classmethod
    def const(cls, c, modulus=None):
        return cls([c], modulus)

    @classmethod
    def from_roots(cls, roots, modulus=None):
        f = cls([1], modulus)
        for r in roots:
            f = f * cls([-r, 1], modulus)
        return f

    def _same(self, coeffs):
        return Poly(coeffs, self.modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self._zero()

    def _zero(self):
        return Fraction(0) if self.modulus is None else 0

    def _one(self):
        return Fraction(1) if self.modulus is None else 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._same([other])
        return (
            isinstance(other, Poly)
            and self.modulus == other.modulus
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.modulus))

    def __repr__(self):
        dom = "Q" if self.modulus is None else f"F_{self.modulus}"
        return f"Poly({self}, {dom})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                cs = str(c)
                if mono and ("/" in cs):
                    cs = f"({cs})"
                terms.append(cs + ("*" + mono if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self._same([other])
        if not isinstance(other, Poly):
            return NotImplemented
        if other.modulus != self.modulus:
            raise DomainError("polynomials over different domains")
        return other

    def _norm(self, c):
        return c if self.modulus is None else c % self.modulus

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        zero = self._zero()
        return self._same(
            [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)]
        )

    __radd__ = __add__

    def __neg__(self):
        return self._same([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._same([])
        out = [self._zero()] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return self._same(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self._same([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _inv(self, c):
        if self.modulus is None:
            return 1 / Fraction(c)
        return pow(c, -1, self.modulus)

    def divmod(self, other: "Poly"):
        other = self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return self._same([]), self
        inv = self._inv(other.lc)
        quo = [self._zero()] * (dq + 1)
        od = other.degree
        for i in range(dq, -1, -1):
            c = self._norm(rem[i + od] * inv)
            quo[i] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] = self._norm(rem[i + j] - c * oc)
        return self._same(quo), self._same(rem[:od])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self:
            return self
        inv = self._inv(self.lc)
        return self._same([c * inv for c in self.coeffs])

    def scale(self, c):
        return self._same([c * a for a in self.coeffs])

    def derivative(self):
        return self._same([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.modulus is not None and isinstance(acc, int):
            acc %= self.modulus
        return acc

    def compose(self, g: "Poly"):
        acc = self._same([])
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def powmod(self, k: int, mod: "Poly"):
        result = self._same([1]) % mod
        base = self % mod
        while k:
            if k & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            k >>= 1
        return result


def _to_fp(c, p):
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise DomainError(f"denominator of {c} divisible by {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


def poly_gcd(f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, f % g
    return f.monic()


def xgcd(f: Poly, g: Poly):
    """Return (d, s, t) with s*f + t*g = d monic."""
    r0, r1 = f, g
    s0, s1 = f._same([1]), f._same([])
    t0, t1 = f._same([]), f._same([1])
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = r0._inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# ----------------------------------------------------------------- resultants


def sylvester_matrix(f: Poly, g: Poly):
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc, gc = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    zero = f._zero()
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def determinant(rows, modulus=None):
    """Determinant by Gaussian elimination over Q or F_p."""
    a = [list(r) if modulus is None else [v % modulus for v in r] for r in rows]
    n = len(a)
    det = Fraction(1) if modulus is None else 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0 * det
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        inv = 1 / Fraction(pv) if modulus is None else pow(pv, -1, modulus)
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            factor = a[r][col] * inv
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
                if modulus is not None:
                    a[r][c] %= modulus
        if modulus is not None:
            det %= modulus
    return det


def resultant(f: Poly, g: Poly):
    if f.modulus != g.modulus:
        raise DomainError("resultant of polynomials over different domains")
    if not f or not g:
        raise ValueError("resultant of a zero polynomial")
    if f.degree == 0 and g.degree == 0:
        return f._one()
    return determinant(sylvester_matrix(f, g), f.modulus)


def discriminant(f: Poly):
    d = f.degree
    if d < 1:
        raise ValueError("discriminant of a constant")
    if d == 1:
        return f._one()
    r = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    value = sign * r * f._inv(f.lc)
    return value % f.modulus if f.modulus is not None else value


# ----------------------------------------------------------------- valuations


def gauss_valuation(f: Poly, p: int) -> int:
    """Minimum p-adic valuation over the nonzero coefficients of f."""
    if f.modulus is not None:
        raise DomainError("Gauss valuation needs a polynomial over Q")
    if not f:
        raise ValueError("Gauss valuation of the zero polynomial")
    return min(valuation(c, p) for c in f.coeffs if c != 0)


def gauss_valuation_ratio(num: Poly, den: Poly, p: int) -> int:
    return gauss_valuation(num, p) - gauss_valuation(den, p)


def reduce_mod_p(f: Poly, p: int) -> Poly:
    if f.modulus is not None:
        raise DomainError("reduction needs a polynomial over Q")
    if f and gauss_valuation(f, p) < 0:
        raise DomainError(f"negative Gauss valuation at {p}; reduction undefined")
    return Poly(f.coeffs, p)


# ---------------------------------------------------------- rational roots


def clear_denominators(f: Poly) -> list[int]:
    from .arith import lcm

    den = lcm(*(c.denominator for c in f.coeffs))
    return [int(c * den) for c in f.coeffs]


def _homogeneous_value(cs, num, den) -> int:
    """den^d f(num/den) for integer coefficients cs, constant term first."""
    total, scale = 0, 1
    for c in reversed(cs):
        total = total * num + c * scale
        scale *= den
    return total


def rational_roots(f: Poly) -> list[Fraction]:
    """Distinct rational roots of f over Q, sorted."""
    from .arith import factor

    if f.modulus is not None:
        raise DomainError("rational roots need a polynomial over Q")
    if not f:
        raise ValueError("zero polynomial")
    cs = clear_denominators(f)
    roots = set()
    while cs and cs[0] == 0:
        roots.add(Fraction(0))
        cs = cs[1:]
    if len(cs) <= 1:
        return sorted(roots)

    def divisors(n):
        fac = factor(abs(n)).factors
        out = [1]
        for p, e in fac:
            out = [d * p**k for d in out for k in range(e + 1)]
        return out

    for q in divisors(cs[-1]):
        for pnum in divisors(cs[0]):
            if math.gcd(pnum, q) != 1:
                continue
            for num in (pnum, -pnum):
                if _homogeneous_value(cs, num, q) == 0:
                    roots.add(Fraction(num, q))
    return sorted(roots)


# ------------------------------------------------------- factoring over F_p


def _squarefree_fp(f: Poly):
    """Yield (g, k) with g squarefree and f = prod g**k (monic f)."""
    p = f.modulus
    out = []
    i = 1
    fp = f.derivative()
    if fp:
        c = poly_gcd(f, fp)
        w = f // c
        while w.degree > 0:
            y = poly_gcd(w, c)
            z = w // y
            if z.degree > 0:
                out.append((z, i))
            i += 1
            w, c = y, c // y
        if c.degree > 0:
            root = _pth_root(c)
            out.extend((g, k * p) for g, k in _squarefree_fp(root))
    else:
        root = _pth_root(f)
        out.extend((g, k * p) for g, k in _squarefree_fp(root))
    return out


def _pth_root(f):
    p = f.modulus
    return f._same([f.coeffs[i] for i in range(0, len(f.coeffs), p)])


def _ddf(f: Poly):
    p = f.modulus
    out = []
    x = Poly.x(p)
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(p, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _edf(f: Poly, d: int, rng: random.Random):
    p = f.modulus
    if f.degree == d:
        return [f]
    while True:
        r = Poly([rng.randrange(p) for _ in range(f.degree)], p)
        if r.degree < 1:
            continue
        if p == 2:
            t = r
            acc = r
            for _ in range(d - 1):
                t = (t * t) % f
                acc = acc + t
            g = poly_gcd(f, acc)
        else:
            g = poly_gcd(f, r.powmod((p**d - 1) // 2, f) - 1)
        if 0 < g.degree < f.degree:
            return _edf(g, d, rng) + _edf(f // g, d, rng)


def _sort_key(g: Poly):
    return (g.degree, tuple(reversed(g.coeffs)))


def factor_mod_p(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Monic irreducible factorization over F_p (Cantor-Zassenhaus).

    The output is sorted and independent of ``seed``; the seed only drives
    the random splitting.
    """
    if f.modulus is None:
        raise DomainError("factor_mod_p needs a polynomial over F_p")
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    f = f.monic()
    counts: dict[Poly, int] = {}
    if f.degree < 1:
        return []
    for g, k in _squarefree_fp(f):
        for h, d in _ddf(g):
            for irr in _edf(h, d, rng):
                counts[irr] = counts.get(irr, 0) + k
    return sorted(counts.items(), key=lambda t: _sort_key(t[0]))


def is_irreducible_mod_p(f: Poly) -> bool:
    fac = factor_mod_p(f)
    return len(fac) == 1 and fac[0][1] == 1


def brute_force_irreducible(f: Poly) -> bool:
    """Irreducibility over F_p by trial division by every monic polynomial."""
    p = f.modulus
    for d in range(1, f.degree // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = Poly(list(tail) + [1], p)
            if not (f % g):
                return False
    return f.degree >= 1


# -------------------------------------------------------- factoring over Q


def factor_over_q(f: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Factor f over Q as content times monic irreducible powers.

    Linear factors come from the rational root theorem on the squarefree
    part; a leftover piece of degree 2 or 3 without rational roots is
    irreducible, and anything larger is handed to sympy.
    """
    if f.modulus is not None:
        raise DomainError("factor_over_q needs a polynomial over Q")
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    content = f.lc
    g = f.monic()
    out: dict[Poly, int] = {}
    for r in rational_roots(g) if g.degree > 0 else []:
        lin = Poly([-r, 1])
        while not (g % lin):
            g = g // lin
            out[lin] = out.get(lin, 0) + 1
    if g.degree >= 1:
        for piece, k in _squarefree_q(g):
            if piece.degree <= 3:
                out[piece] = out.get(piece, 0) + k
            else:
                for irr in _sympy_irreducibles(piece):
                    out[irr] = out.get(irr, 0) + k
    return content, sorted(out.items(), key=lambda t: _sort_key(t[0]))


def _squarefree_q(f: Poly):
    out = []
    i = 1
    c = poly_gcd(f, f.derivative())
    w = f // c
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w, c = y, c // y
    return out


def _sympy_irreducibles(f: Poly) -> list[Poly]:
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(f.coeffs))
    _, factors = sympy.factor_list(expr, x)
    out = []
    for fac, mult in factors:
        coeffs = sympy.Poly(fac, x).all_coeffs()[::-1]
        piece = Poly([Fraction(int(c.p), int(c.q)) for c in coeffs]).monic()
        out.extend([piece] * int(mult))
    return out
