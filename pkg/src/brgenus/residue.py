"""Tame residues of symbol algebras over k(x), k = Q or F_p, and the
unit/Picard sequence for S-integers of Q.

The residue of the symbol (u, v) at a place with valuation w is the tame
symbol

    (-1)^(w(u) w(v)) * u^w(v) / v^w(u)   reduced into the residue field,

taken modulo n-th powers.  The degree place uses w(f) = deg(den) - deg(num).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .arith import factor, gcd_pair, is_nth_power, rational_nth_root
from .numfield import Q, PlaceSet, s_class_number, s_unit_quotient_size
from .poly import Poly, discriminant, factor_mod_p, factor_over_q, xgcd
from .ratfunc import RatFunc, parse_polys, parse_ratfunc, split_top_level


class UnsupportedResidueField(ValueError):
    pass


@dataclass(frozen=True)
class GeometricPlace:
    """A monic irreducible polynomial pi, or the degree place when pi is None."""

    pi: Poly | None
    modulus: int | None = None

    @classmethod
    def infinity(cls, modulus=None):
        return cls(None, modulus)

    @classmethod
    def of(cls, pi: Poly) -> "GeometricPlace":
        pi = pi.monic()
        if pi.degree < 1:
            raise ValueError("a place needs a nonconstant polynomial")
        if pi.modulus is None:
            _, parts = factor_over_q(pi)
        else:
            parts = factor_mod_p(pi)
        if len(parts) != 1 or parts[0][1] != 1:
            raise ValueError(f"{pi} is not irreducible")
        return cls(pi, pi.modulus)

    @classmethod
    def parse(cls, text: str, modulus=None) -> "GeometricPlace":
        if text.strip().lower() in ("inf", "infinity", "oo"):
            return cls.infinity(modulus)
        num, den = parse_polys(text, modulus)
        if den.degree != 0:
            raise ValueError("a place is given by a polynomial")
        return cls.of(num)

    @property
    def is_infinite(self):
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.degree

    def valuation(self, f: RatFunc) -> int:
        if self.pi is None:
            return -f.degree
        return f.exponent(self.pi)

    def __str__(self):
        return "inf" if self.pi is None else str(self.pi)


# ------------------------------------------------------------- residue fields


@dataclass(frozen=True)
class ResidueField:
    """k[x]/(pi); pi None means the residue field is k itself."""

    modulus: int | None
    pi: Poly | None

    @property
    def degree(self):
        return 1 if self.pi is None else self.pi.degree

    @property
    def size(self):
        return None if self.modulus is None else self.modulus**self.degree

    def reduce(self, f: Poly) -> Poly:
        return f if self.pi is None else f % self.pi

    def one(self):
        return Poly([1], self.modulus)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.reduce(a * b)

    def inv(self, a: Poly) -> Poly:
        if not a:
            raise ZeroDivisionError("zero in residue field")
        if self.pi is None:
            return a._same([a._inv(a.lc)])
        d, s, _ = xgcd(a, self.pi)
        if d.degree != 0:
            raise ZeroDivisionError("not invertible")
        return self.reduce(s)

    def power(self, a: Poly, k: int) -> Poly:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.one()
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def is_nth_power(self, a: Poly, n: int) -> bool:
        a = self.reduce(a)
        if not a:
            raise ValueError("zero is not in the unit group")
        if self.modulus is not None:
            q = self.size
            return self.power(a, (q - 1) // math.gcd(n, q - 1)) == self.one()
        if self.degree == 1:
            return is_nth_power(self._as_rational(a), n)
        if self.degree == 2 and n == 2:
            return _is_square_quadratic(a, self.pi)
        raise UnsupportedResidueField(
            f"n-th power test in Q[x]/({self.pi}) with n = {n} is not supported"
        )

    def _as_rational(self, a: Poly) -> Fraction:
        # degree-one pi = x - r: the reduction is a constant
        return a.coeffs[0] if a.coeffs else Fraction(0)

    def describe(self):
        if self.pi is None:
            return "Q" if self.modulus is None else f"F_{self.modulus}"
        if self.modulus is None:
            return "Q" if self.degree == 1 else f"Q[x]/({self.pi})"
        return f"F_{self.modulus}^{self.degree}" if self.degree > 1 else f"F_{self.modulus}"


def _is_square_quadratic(a: Poly, pi: Poly) -> bool:
    """Square test in the quadratic field Q[x]/(pi)."""
    c0, c1 = pi.coeffs[0], pi.coeffs[1]
    delta = discriminant(pi)
    if a.degree <= 0:
        s = a.coeffs[0]
        return is_nth_power(s, 2) or is_nth_power(s * delta, 2)
    s, t = a.coeffs[0], a.coeffs[1]
    # theta + theta' = -c1, theta theta' = c0
    trace = 2 * s - t * c1
    norm = s * s - s * t * c1 + t * t * c0
    m = rational_nth_root(norm, 2) if norm > 0 else None
    if m is None:
        return False
    for root_norm in (m, -m):
        tt = trace + 2 * root_norm
        if tt <= 0:
            continue
        T = rational_nth_root(tt, 2)
        if T is None:
            continue
        beta = Poly([s + root_norm, t]).scale(1 / T)
        if (beta * beta) % pi == a:
            return True
    return False


@dataclass(frozen=True)
class ResidueClass:
    """An element of kappa^x modulo n-th powers."""

    field: ResidueField
    rep: Poly
    n: int

    def is_trivial(self) -> bool:
        return self.field.is_nth_power(self.rep, self.n)

    def __mul__(self, other: "ResidueClass") -> "ResidueClass":
        self._same(other)
        return ResidueClass(self.field, self.field.mul(self.rep, other.rep), self.n)

    def inverse(self) -> "ResidueClass":
        return ResidueClass(self.field, self.field.inv(self.rep), self.n)

    def _same(self, other):
        if other.field != self.field or other.n != self.n:
            raise ValueError("residue classes live in different groups")

    def __eq__(self, other):
        if not isinstance(other, ResidueClass):
            return NotImplemented
        self._same(other)
        return self.field.is_nth_power(self.field.mul(self.rep, self.field.inv(other.rep)), self.n)

    def __hash__(self):
        return hash((self.field, self.n))

    def __str__(self):
        rep = self.rep.coeffs[0] if self.rep.degree <= 0 else self.rep
        return f"class of {rep}"


def _unit_residue(f: RatFunc, place: GeometricPlace, kappa: ResidueField) -> Poly:
    """Image in kappa of f * pi^(-w(f))."""
    if place.is_infinite:
        return Poly([f.const], f.modulus)
    out = kappa.reduce(Poly([f.const], f.modulus))
    for g, k in f.factors:
        if g == place.pi:
            continue
        out = kappa.mul(out, kappa.power(kappa.reduce(g), k))
    return out


def residue_field(place: GeometricPlace) -> ResidueField:
    return ResidueField(place.modulus, place.pi)


def tame_residue(u: RatFunc, v: RatFunc, place: GeometricPlace, n: int) -> ResidueClass:
    if u.modulus != v.modulus or u.modulus != place.modulus:
        raise ValueError("entries and place live over different base fields")
    if n < 2:
        raise ValueError("n must be at least 2")
    if place.modulus is not None and math.gcd(place.modulus, n) != 1:
        raise ValueError("wild place: residue characteristic divides n")
    kappa = residue_field(place)
    a, b = place.valuation(u), place.valuation(v)
    ubar = _unit_residue(u, place, kappa)
    vbar = _unit_residue(v, place, kappa)
    val = kappa.mul(kappa.power(ubar, b), kappa.power(vbar, -a))
    if (a * b) % 2:
        val = kappa.reduce(-val)
    return ResidueClass(kappa, val, n)


# ----------------------------------------------------------- symbol algebras


@dataclass(frozen=True)
class SymbolAlgebra:
    """Tensor product of symbol algebras (u_i, v_i) of degree n."""

    n: int
    slots: tuple[tuple[RatFunc, RatFunc], ...]

    @classmethod
    def parse(cls, text: str, n: int, modulus=None) -> "SymbolAlgebra":
        slots = []
        for chunk in split_top_level(text.replace("⊗", ";"), ";"):
            if not chunk:
                continue
            if not (chunk.startswith("(") and chunk.endswith(")")):
                raise ValueError(f"symbol {chunk!r} must look like (u, v)")
            pieces = split_top_level(chunk[1:-1], ",")
            if len(pieces) != 2:
                raise ValueError(f"symbol {chunk!r} needs exactly two entries")
            slots.append(tuple(parse_ratfunc(p, modulus) for p in pieces))
        if not slots:
            raise ValueError("empty symbol algebra")
        return cls(n, tuple(slots))

    @property
    def modulus(self):
        return self.slots[0][0].modulus

    def residue(self, place: GeometricPlace) -> ResidueClass:
        out = None
        for u, v in self.slots:
            r = tame_residue(u, v, place, self.n)
            out = r if out is None else out * r
        return out

    def candidate_places(self) -> list[GeometricPlace]:
        polys = {}
        for u, v in self.slots:
            for g in u.support() + v.support():
                polys[g] = None
        places = [GeometricPlace(g, self.modulus) for g in polys]
        places.sort(key=lambda pl: (pl.degree, str(pl)))
        return places + [GeometricPlace.infinity(self.modulus)]


def ramification_set(A: SymbolAlgebra, places=None) -> list[GeometricPlace]:
    """Places with nontrivial residue; by default every place in the support plus infinity."""
    places = A.candidate_places() if places is None else list(places)
    return [pl for pl in places if not A.residue(pl).is_trivial()]


def ramification_count(A: SymbolAlgebra | None = None, asserted_r: int | None = None):
    """Return (r, provenance); an asserted r wins when given."""
    if asserted_r is not None:
        if asserted_r < 0:
            raise ValueError("r must be nonnegative")
        return asserted_r, "asserted"
    if A is None:
        raise ValueError("need a symbol algebra or an asserted r")
    return len(ramification_set(A)), "computed"


# ------------------------------------------------ unit / Picard sequence over Q


def unramified_exponent_set(S_primes, n: int, candidates) -> list[Fraction]:
    """Candidates whose valuation is divisible by n at every prime outside S."""
    S_primes = set(S_primes)
    out = []
    for c in candidates:
        c = Fraction(c)
        if c == 0:
            continue
        ok = True
        for part in (c.numerator, c.denominator):
            for p, e in factor(abs(part)).factors:
                if p not in S_primes and e % n:
                    ok = False
        if ok:
            out.append(c)
    return out


def _class_key(x: Fraction, n: int):
    """Canonical representative of x in Q^x / Q^(x n)."""
    sign = -1 if (x < 0 and n % 2 == 0) else 1
    exps = {}
    for part, s in ((x.numerator, 1), (x.denominator, -1)):
        for p, e in factor(abs(part)).factors:
            r = (s * e) % n
            if r:
                exps[p] = r
    return sign, tuple(sorted(exps.items()))


@dataclass(frozen=True)
class SequenceReport:
    S: tuple[int, ...]
    n: int
    d_order: int
    unit_quotient: int
    pic_torsion_bound: int
    holds: bool
    samples_checked: int


def verify_unit_pic_sequence(S_primes, n: int, samples: int = 50, seed: int = 0) -> SequenceReport:
    """Check |D(T, n)| = |U(T)/U(T)^n| * |nPic(T)| over Q.

    D(T, n) is enumerated as the image in Q^x/Q^(x n) of -1 and the primes
    of S.  Random elements of E(T, n) are then checked to land in it.
    """
    S_primes = tuple(sorted(set(S_primes)))
    gens = [Fraction(-1)] + [Fraction(p) for p in S_primes]
    classes = set()
    for exps in product(*([range(2)] + [range(n)] * len(S_primes))):
        x = Fraction(1)
        for g, e in zip(gens, exps):
            x *= g**e
        classes.add(_class_key(x, n))
    rng = random.Random(seed)
    outside = [q for q in (5, 7, 11, 13, 17, 19, 23, 29, 31) if q not in S_primes]
    for _ in range(samples):
        x = Fraction(rng.choice((-1, 1)))
        for p in S_primes:
            x *= Fraction(p) ** rng.randint(-3 * n, 3 * n)
        for q in rng.sample(outside, 2):
            x *= Fraction(q) ** (n * rng.randint(-2, 2))
        assert unramified_exponent_set(S_primes, n, [x]) == [x]
        if _class_key(x, n) not in classes:
            raise AssertionError(f"{x} lies in E(T, n) but not in the enumerated D(T, n)")
    S = PlaceSet.over_q(S_primes)
    units = s_unit_quotient_size(Q, S, n)
    # Z localized at S is a PID, so Pic(T) is trivial
    pic = gcd_pair(s_class_number(Q, S), n) if s_class_number(Q, S) > 1 else 1
    return SequenceReport(S_primes, n, len(classes), units, pic, len(classes) == units * pic, samples)
