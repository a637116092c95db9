"""Small number fields, their places, class numbers and S-unit data.

Supported fields are Q and quadratic fields (Q(zeta_3) and Q(zeta_4) are the
quadratic fields of discriminant -3 and -4).  Class groups of imaginary
quadratic fields are computed with reduced binary quadratic forms under Gauss
composition.  Anything else enters through a :class:`FieldCertificate` whose
contents are taken on trust and flagged as asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .arith import factor, is_prime, kronecker, sqrt_mod
from .poly import Poly, factor_mod_p


class UnsupportedField(ValueError):
    """The requested computation is not available for this field."""


@dataclass(frozen=True)
class FieldCertificate:
    degree: int
    a: int
    c: int
    w: int
    h: int
    # ((p, ((e, f), ...)), ...)
    primes: tuple = ()
    label: str = "certified"

    def __post_init__(self):
        if self.degree != self.a + 2 * self.c:
            raise ValueError("certificate: degree must equal a + 2c")
        if self.w < 2 or self.w % 2 or self.h < 1:
            raise ValueError("certificate: need even w >= 2 and h >= 1")
        for p, pieces in self.primes:
            if not is_prime(p):
                raise ValueError(f"certificate: {p} is not prime")
            if sum(e * f for e, f in pieces) != self.degree:
                raise ValueError(f"certificate: sum of e*f above {p} != degree")

    @classmethod
    def from_dict(cls, data: dict) -> "FieldCertificate":
        primes = tuple(
            sorted(
                (int(p), tuple(tuple(int(v) for v in ef) for ef in pieces))
                for p, pieces in _prime_items(data.get("primes", []))
            )
        )
        return cls(
            degree=int(data["degree"]),
            a=int(data["a"]),
            c=int(data["c"]),
            w=int(data["w"]),
            h=int(data["h"]),
            primes=primes,
            label=str(data.get("label", "certified")),
        )

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "a": self.a,
            "c": self.c,
            "w": self.w,
            "h": self.h,
            "primes": [[p, [list(ef) for ef in pieces]] for p, pieces in self.primes],
            "label": self.label,
        }


def _prime_items(raw):
    if isinstance(raw, dict):
        return raw.items()
    return [(p, pieces) for p, pieces in raw]


@dataclass(frozen=True)
class NumberField:
    """One of Q, Q(sqrt d), or a certified field.

    ``d`` is the squarefree radicand for quadratic fields; d = -3 is
    Q(zeta_3) and d = -1 is Q(zeta_4).
    """

    kind: str
    d: int | None = None
    certificate: FieldCertificate | None = None

    @classmethod
    def rationals(cls):
        return cls("rationals")

    @classmethod
    def quadratic(cls, d: int):
        if d in (0, 1) or any(e > 1 for _, e in factor(d).factors):
            raise ValueError(f"{d} is not a squarefree integer other than 0, 1")
        if d == -3:
            return cls("zeta3", -3)
        if d == -1:
            return cls("zeta4", -1)
        return cls("quadratic", d)

    @classmethod
    def zeta3(cls):
        return cls.quadratic(-3)

    @classmethod
    def zeta4(cls):
        return cls.quadratic(-1)

    @classmethod
    def certified(cls, cert: FieldCertificate):
        return cls("certified", None, cert)

    @property
    def is_certified(self):
        return self.kind == "certified"

    @property
    def is_rationals(self):
        return self.kind == "rationals"

    @property
    def degree(self) -> int:
        if self.is_certified:
            return self.certificate.degree
        return 1 if self.is_rationals else 2

    @property
    def discriminant(self) -> int:
        if self.is_rationals:
            return 1
        if self.is_certified:
            raise UnsupportedField("discriminant of a certified field is not tracked")
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def a(self) -> int:
        """Number of real places."""
        if self.is_certified:
            return self.certificate.a
        if self.is_rationals:
            return 1
        return 2 if self.d > 0 else 0

    @property
    def c(self) -> int:
        """Number of complex places."""
        if self.is_certified:
            return self.certificate.c
        if self.is_rationals:
            return 0
        return 0 if self.d > 0 else 1

    @property
    def w(self) -> int:
        """Order of the group of roots of unity."""
        if self.is_certified:
            return self.certificate.w
        return {-3: 6, -1: 4}.get(self.d, 2)

    @property
    def defining_polynomial(self) -> Poly:
        """Monic generator of the ring of integers."""
        if self.is_rationals:
            return Poly([0, 1])
        if self.is_certified:
            raise UnsupportedField("certified fields carry no defining polynomial")
        if self.d == -3:
            return Poly([1, 1, 1])
        if self.d % 4 == 1:
            return Poly([(1 - self.d) // 4, -1, 1])
        return Poly([-self.d, 0, 1])

    @property
    def is_imaginary_quadratic(self):
        return self.kind in ("quadratic", "zeta3", "zeta4") and self.d < 0

    def __str__(self):
        if self.is_rationals:
            return "Q"
        if self.kind == "zeta3":
            return "Q(zeta_3)"
        if self.kind == "zeta4":
            return "Q(zeta_4)"
        if self.is_certified:
            return f"<{self.certificate.label}>"
        return f"Q(sqrt({self.d}))"

    def to_dict(self) -> dict:
        if self.is_certified:
            return {"kind": "certified", "certificate": self.certificate.to_dict()}
        return {"kind": self.kind, "d": self.d}

    @classmethod
    def from_dict(cls, data: dict) -> "NumberField":
        kind = data["kind"]
        if kind == "rationals":
            return cls.rationals()
        if kind == "certified":
            return cls.certified(FieldCertificate.from_dict(data["certificate"]))
        if kind == "zeta3":
            return cls.zeta3()
        if kind == "zeta4":
            return cls.zeta4()
        return cls.quadratic(int(data["d"]))


Q = NumberField.rationals()


# ------------------------------------------------------------------ places


@dataclass(frozen=True, order=True)
class FinitePlace:
    """``count`` conjugate primes above p, each with ramification e and residue degree f."""

    p: int
    e: int
    f: int
    count: int = 1


@dataclass(frozen=True)
class PlaceSet:
    """A finite set of places containing every archimedean place."""

    field: NumberField
    finite: tuple[FinitePlace, ...] = ()

    @classmethod
    def over_q(cls, primes=()):
        return cls(Q, tuple(FinitePlace(p, 1, 1, 1) for p in sorted(set(primes))))

    @property
    def archimedean(self) -> int:
        return self.field.a + self.field.c

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({pl.p for pl in self.finite}))

    @property
    def finite_count(self) -> int:
        return sum(pl.count for pl in self.finite)

    @property
    def size(self) -> int:
        return self.archimedean + self.finite_count

    def __len__(self):
        return self.size

    def with_primes(self, extra) -> "PlaceSet":
        if not self.field.is_rationals:
            raise UnsupportedField("with_primes only applies to place sets over Q")
        return PlaceSet.over_q(set(self.primes) | set(extra))

    def __str__(self):
        return "{" + ", ".join(["inf"] + [str(p) for p in self.primes]) + "}"

    def to_dict(self):
        return {
            "field": self.field.to_dict(),
            "archimedean": self.archimedean,
            "finite": [[pl.p, pl.e, pl.f, pl.count] for pl in self.finite],
            "size": self.size,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            NumberField.from_dict(data["field"]),
            tuple(FinitePlace(*map(int, row)) for row in data["finite"]),
        )


_split_store = None


def set_split_store(store) -> None:
    """Install an object with ``lookup_split`` and ``record_split`` (or None)."""
    global _split_store
    _split_store = store


@lru_cache(maxsize=4096)
def _split_cached(nf: NumberField, p: int, seed: int):
    if _split_store is not None and not nf.is_certified:
        known = _split_store.lookup_split(nf, p)
        if known is not None:
            return known
    out = _split_uncached(nf, p, seed)
    if _split_store is not None and not nf.is_certified:
        _split_store.record_split(nf, p, out)
    return out


def _split_uncached(nf: NumberField, p: int, seed: int):
    if nf.is_certified:
        table = dict(nf.certificate.primes)
        if p not in table:
            raise UnsupportedField(f"certificate has no splitting data above {p}")
        pieces = table[p]
    else:
        reduced = Poly(nf.defining_polynomial.coeffs, p)
        pieces = [(k, g.degree) for g, k in factor_mod_p(reduced, seed=seed)]
    grouped: dict[tuple[int, int], int] = {}
    for e, f in pieces:
        grouped[(e, f)] = grouped.get((e, f), 0) + 1
    return tuple(sorted((e, f, g) for (e, f), g in grouped.items()))


def split_prime(nf: NumberField, p: int, seed: int = 0) -> list[tuple[int, int, int]]:
    """Decomposition of p in nf as a list of (e, f, number of such primes).

    The ring of integers is monogenic for every supported field, so factoring
    the defining polynomial mod p gives the splitting at all primes,
    including those dividing the discriminant.
    """
    if nf.is_rationals:
        raise ValueError("split_prime needs a proper extension of Q")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return list(_split_cached(nf, p, seed))


def extend_place_set(S: PlaceSet, ell: NumberField, seed: int = 0) -> PlaceSet:
    """All places of ell above the places of S."""
    if not S.field.is_rationals:
        raise ValueError("extend_place_set expects a place set over Q")
    if ell.is_rationals:
        return S
    finite = []
    for p in S.primes:
        for e, f, g in split_prime(ell, p, seed):
            finite.append(FinitePlace(p, e, f, g))
    return PlaceSet(ell, tuple(sorted(finite)))


# ------------------------------------------------------ binary quadratic forms


@dataclass(frozen=True, order=True)
class Form:
    """Positive definite binary quadratic form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self):
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduce(self) -> "Form":
        a, b, c = self.a, self.b, self.c
        while True:
            if not (-a < b <= a):
                r = (a - b) // (2 * a)
                b, c = b + 2 * r * a, a * r * r + b * r + c
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return Form(a, b, c)

    def inverse(self) -> "Form":
        return Form(self.a, -self.b, self.c).reduce()

    def __mul__(self, other: "Form") -> "Form":
        return compose(self, other)


def compose(f1: Form, f2: Form) -> Form:
    """Gauss composition of primitive forms of equal discriminant, reduced."""
    if f1.disc != f2.disc:
        raise ValueError("composition needs equal discriminants")
    if f1.a > f2.a:
        f1, f2 = f2, f1
    a1, b1, _ = f1.a, f1.b, f1.c
    a2, b2, c2 = f2.a, f2.b, f2.c
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return Form(a3, b3, c3).reduce()


def _xgcd(a, b):
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def identity_form(D: int) -> Form:
    return Form(1, D % 2, (D % 2 - D) // 4)


def reduced_forms(D: int) -> list[Form]:
    """All reduced primitive forms of negative discriminant D."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            out.append(Form(a, b, c))
        a += 1
    return sorted(out)


def prime_form(D: int, p: int) -> Form | None:
    """Reduced form of a prime ideal above p, or None when p is inert."""
    k = kronecker(D, p)
    if k == -1:
        return None
    if p == 2:
        b = next(b for b in range(4) if (b * b - D) % 8 == 0)
    else:
        b = sqrt_mod(D % p, p)
        if (b - D) % 2:
            b = p - b
    return Form(p, b, (b * b - D) // (4 * p)).reduce()


def class_number(nf: NumberField) -> int:
    if nf.is_rationals:
        return 1
    if nf.is_certified:
        return nf.certificate.h
    if not nf.is_imaginary_quadratic:
        raise UnsupportedField(
            f"class number of the real quadratic field {nf} needs a certificate"
        )
    return len(reduced_forms(nf.discriminant))


def subgroup_generated(gens: list[Form], D: int) -> set[Form]:
    one = identity_form(D)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def s_class_number(nf: NumberField, S: PlaceSet) -> int:
    """Class number of the ring of S-integers: |Cl| / |<classes of primes in S>|."""
    if nf.is_rationals:
        return 1
    h = class_number(nf)
    if nf.is_certified:
        return h
    D = nf.discriminant
    gens = [f for f in (prime_form(D, p) for p in S.primes) if f is not None]
    return h // len(subgroup_generated(gens, D))


def s_unit_quotient_size(nf: NumberField, S: PlaceSet, n: int) -> int:
    """|U/U^n| for the S-units, which are mu(k) x Z^(|S|-1)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if S.size < S.archimedean or S.size < 1:
        raise ValueError("S must contain the archimedean places")
    return math.gcd(n, nf.w) * n ** (S.size - 1)
