"""Elliptic and hyperelliptic curve models over Q and their reduction data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import factor, lcm, prime_support, rational_nth_root, squarefree_part, valuation
from .numfield import Q, NumberField, PlaceSet
from .poly import Poly, discriminant, factor_over_q, rational_roots


class SingularCurve(ValueError):
    pass


class CertificateRequired(ValueError):
    """The computation needs data the library cannot derive on its own."""


COMPUTED = "computed"
PAPER_ASSERTED = "paper-asserted"
USER_ASSERTED = "user-asserted"


@dataclass(frozen=True)
class TorsionFieldData:
    """The field generated by the p-torsion, with how we know it.

    ``field`` is None when the library could not name the field and a
    certificate is needed.  ``verified`` records the outcome of the
    division-polynomial check when one was run.
    """

    p: int
    field: NumberField | None
    provenance: str
    shape: str = ""
    galois_order: int | None = None
    galois_generators: int | None = None
    verified: bool | None = None
    note: str = ""

    def to_dict(self):
        return {
            "p": self.p,
            "field": None if self.field is None else self.field.to_dict(),
            "provenance": self.provenance,
            "shape": self.shape,
            "galois_order": self.galois_order,
            "galois_generators": self.galois_generators,
            "verified": self.verified,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            p=data["p"],
            field=None if data["field"] is None else NumberField.from_dict(data["field"]),
            provenance=data["provenance"],
            shape=data.get("shape", ""),
            galois_order=data.get("galois_order"),
            galois_generators=data.get("galois_generators"),
            verified=data.get("verified"),
            note=data.get("note", ""),
        )


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + a x + b over Q."""

    a: Fraction
    b: Fraction
    k: NumberField = Q
    label: str = ""
    # x_old = x_new + shift when built from a split cubic
    shift: Fraction = Fraction(0)
    torsion: tuple[TorsionFieldData, ...] = field(default=(), compare=False)
    family_disc: Fraction | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not self.k.is_rationals:
            raise CertificateRequired("curves are supported over Q only")
        if self.disc == 0:
            raise SingularCurve(f"y^2 = x^3 + ({self.a})x + ({self.b}) is singular")

    genus = 1

    @property
    def disc(self) -> Fraction:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    @property
    def cubic(self) -> Poly:
        return Poly([self.b, self.a, 0, 1])

    @classmethod
    def from_roots(cls, e1, e2, e3, label=""):
        """y^2 = (x - e1)(x - e2)(x - e3), moved to short form by x -> x + s/3."""
        e1, e2, e3 = Fraction(e1), Fraction(e2), Fraction(e3)
        s1 = e1 + e2 + e3
        s2 = e1 * e2 + e1 * e3 + e2 * e3
        s3 = e1 * e2 * e3
        t = s1 / 3
        a = s2 - s1 * s1 / 3
        b = -2 * s1**3 / 27 + s1 * s2 / 3 - s3
        return cls(a, b, label=label, shift=t)

    def integral_model(self) -> tuple[int, int, int]:
        """Smallest u with u^4 a and u^6 b integral; returns (u, u^4 a, u^6 b)."""
        u = 1
        for p in set(factor(self.a.denominator).primes()) | set(
            factor(self.b.denominator).primes()
        ):
            need = 0
            if self.a:
                need = max(need, _ceil_div(-valuation(self.a, p), 4))
            if self.b:
                need = max(need, _ceil_div(-valuation(self.b, p), 6))
            u *= p**need
        A, B = self.a * u**4, self.b * u**6
        return u, int(A), int(B)

    def __str__(self):
        return f"y^2 = x^3 + ({self.a})*x + ({self.b})"


def _ceil_div(a, b):
    return -((-a) // b)


@dataclass(frozen=True)
class HyperellipticCurve:
    """y^2 = f(x) with f separable of degree m >= 3 over Q."""

    f: Poly
    k: NumberField = Q
    label: str = ""
    factored: tuple[Poly, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.f.modulus is not None:
            raise ValueError("f must have rational coefficients")
        if self.f.degree < 3:
            raise ValueError("hyperelliptic curves need deg f >= 3")
        if discriminant(self.f) == 0:
            raise SingularCurve("f is not separable")

    @property
    def m(self) -> int:
        return self.f.degree

    @property
    def genus(self) -> int:
        return hyperelliptic_genus(self.m)

    @classmethod
    def from_factors(cls, factors, label=""):
        f = Poly([1])
        for g in factors:
            f = f * g
        return cls(f, label=label, factored=tuple(factors))

    def __str__(self):
        return f"y^2 = {self.f}"


def hyperelliptic_genus(m: int) -> int:
    if m < 3:
        raise ValueError("degree must be at least 3")
    return (m - 1) // 2


def bad_primes(curve) -> set[int]:
    """Primes that may be of bad reduction.

    Support of the discriminant of an integral model (plus the leading
    coefficient and 2 for hyperelliptic curves).  This contains the true
    bad set, which is all that S has to do.
    """
    if isinstance(curve, EllipticCurve):
        u, A, B = curve.integral_model()
        d = -16 * (4 * A**3 + 27 * B**2)
        return set(factor(d).primes())
    if isinstance(curve, HyperellipticCurve):
        den = lcm(*(c.denominator for c in curve.f.coeffs))
        g = curve.f.scale(den)
        primes = prime_support(discriminant(g)) | prime_support(g.lc) | {2}
        return primes
    raise TypeError(f"unsupported curve type {type(curve).__name__}")


def build_S(curve, n: int) -> PlaceSet:
    """Archimedean place, primes dividing n, and the bad primes."""
    if n < 2:
        raise ValueError("n must be an integer > 1")
    return PlaceSet.over_q(set(factor(n).primes()) | bad_primes(curve))


# ---------------------------------------------------------------- Paladino


def paladino_coefficients(beta, h):
    beta, h = Fraction(beta), Fraction(h)
    a = (
        -27 * beta**4 / h**4
        + 18 * beta**3 / h**2
        - 9 * beta**2 / 2
        + 3 * beta * h**2 / 2
        - 3 * h**4 / 16
    )
    b = (
        54 * beta**6 / h**6
        - 54 * beta**5 / h**4
        + 45 * beta**4 / (2 * h**2)
        - 15 * beta**2 * h**2 / 8
        - 3 * beta * h**4 / 8
        - 1 / (32 * h**6)
    )
    return a, b


def paladino_family_disc(beta, h) -> Fraction:
    beta, h = Fraction(beta), Fraction(h)
    return -216 * beta**3 * (h**4 - 6 * beta**2 * h**2 + 12 * beta**3) / h**6


def paladino_curve(beta, h) -> EllipticCurve:
    """Member of the two-parameter family whose 3-torsion field is asserted to be Q(zeta_3).

    The printed family discriminant is stored alongside the model but is not
    the discriminant of the model; the torsion field is attached as asserted,
    with the outcome of the 3-division polynomial check recorded.
    """
    beta, h = Fraction(beta), Fraction(h)
    if beta == 0 or h == 0:
        raise ValueError("beta and h must be nonzero")
    fam = paladino_family_disc(beta, h)
    if fam == 0:
        raise SingularCurve(f"degenerate parameters beta={beta}, h={h}")
    a, b = paladino_coefficients(beta, h)
    base = EllipticCurve(a, b, label=f"paladino({beta},{h})")
    ell = NumberField.zeta3()
    ok = verify_three_torsion_field(base, ell)
    tors = TorsionFieldData(
        p=3,
        field=ell,
        provenance=PAPER_ASSERTED,
        shape="asserted",
        galois_order=2,
        galois_generators=1,
        verified=ok,
        note="" if ok else "3-division polynomial does not split over Q(zeta_3)",
    )
    return EllipticCurve(a, b, label=base.label, torsion=(tors,), family_disc=fam)


# ------------------------------------------------------------ torsion fields


def two_torsion_field(curve: EllipticCurve) -> TorsionFieldData:
    """Splitting field of x^3 + a x + b over Q."""
    roots = rational_roots(curve.cubic)
    if len(roots) == 3:
        return TorsionFieldData(2, Q, COMPUTED, "split", 1, 0, True)
    if len(roots) == 1:
        r = roots[0]
        # x^2 + r x + (a + r^2) is irreducible, so delta is not a square
        delta = -3 * r * r - 4 * curve.a
        d = squarefree_part(delta.numerator * delta.denominator)
        return TorsionFieldData(2, NumberField.quadratic(d), COMPUTED, "quadratic", 2, 1, True)
    disc = -4 * curve.a**3 - 27 * curve.b**2
    if disc > 0 and rational_nth_root(disc, 2) is not None:
        return TorsionFieldData(
            2, None, COMPUTED, "cyclic-cubic", 3, 1, None, "cyclic cubic field; certificate required"
        )
    return TorsionFieldData(
        2, None, COMPUTED, "S3", 6, 2, None, "S3 sextic field; certificate required"
    )


def division_polynomial_3(curve: EllipticCurve) -> Poly:
    a, b = curve.a, curve.b
    return Poly([-a * a, 12 * b, 6 * a, 0, 3])


def splits_over(f: Poly, ell: NumberField) -> bool:
    """Whether f splits into linear factors over ell (Q or quadratic)."""
    _, parts = factor_over_q(f)
    for g, _ in parts:
        if g.degree == 1:
            continue
        if g.degree > 2 or ell.is_rationals:
            return False
        if ell.is_certified:
            raise CertificateRequired("cannot test splitting over a certified field")
        c, b1 = g.coeffs[0], g.coeffs[1]
        disc = b1 * b1 - 4 * c
        if squarefree_part(disc.numerator * disc.denominator) != ell.d:
            return False
    return True


def verify_three_torsion_field(curve: EllipticCurve, ell: NumberField) -> bool:
    """Check that ell contains zeta_3 and the x-coordinates of the 3-torsion.

    With zeta_3 in ell, the Weil pairing forces ell(E[3]) to be at most a
    quadratic extension of the x-coordinate field; the check is the one the
    torsion-field verifier is asked to perform.
    """
    if ell.is_certified:
        raise CertificateRequired("cannot verify over a certified field")
    if ell.d != -3:
        return False
    return splits_over(division_polynomial_3(curve), ell)


def is_split_hyperelliptic(curve: HyperellipticCurve) -> bool:
    if curve.factored is not None:
        return all(g.degree == 1 for g in curve.factored)
    if not curve.k.is_rationals:
        raise CertificateRequired("splitting over this base field needs factored input")
    return len(rational_roots(curve.f)) == curve.m


def has_rational_point(curve) -> bool | None:
    """True when a rational point is visible, None when undetermined."""
    if isinstance(curve, EllipticCurve):
        return True
    if curve.m % 2 == 1:
        return True
    if rational_roots(curve.f):
        return True
    if curve.f.lc > 0 and rational_nth_root(curve.f.lc, 2) is not None:
        return True
    return None
