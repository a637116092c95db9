"""Explicit divisibility bounds for unramified Brauer groups and genus sizes.

Every value is an upper bound in the divisibility sense; nothing here claims
an exact group order.  :func:`run_pipeline` evaluates the bounds for one
curve and returns a :class:`BoundReport` whose divisibility claims have all
been re-checked by exact integer division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .arith import Factorization, euler_phi, factor, gcd_pair, n_part
from .cohom import FiniteModule, MatrixGroup, h1
from .curves import (
    COMPUTED,
    USER_ASSERTED,
    CertificateRequired,
    EllipticCurve,
    HyperellipticCurve,
    TorsionFieldData,
    build_S,
    has_rational_point,
    is_split_hyperelliptic,
    two_torsion_field,
)
from .numfield import (
    Q,
    FieldCertificate,
    NumberField,
    PlaceSet,
    extend_place_set,
    s_class_number,
    s_unit_quotient_size,
)


class HypothesisError(ValueError):
    """A bound was requested without the hypotheses it rests on."""


class AuditFailure(AssertionError):
    pass


def _f(n: int) -> Factorization:
    return factor(n)


# ------------------------------------------------------------------ formulas


def beta(n: int, a: int, b: int) -> int:
    """Order of the n-torsion of Br(k) unramified outside S.

    a is the number of real places of k and b the number of finite places
    in S.
    """
    if n < 2 or a < 0 or b < 0:
        raise ValueError("need n >= 2 and a, b >= 0")
    g2 = gcd_pair(n, 2)
    if b > 0:
        value = g2**a * n ** (b - 1)
    elif a > 0:
        value = g2 ** (a - 1)
    else:
        value = 1
    if (g2**a * n**b) % value:
        raise AuditFailure("beta does not divide (n,2)^a n^b")
    return value


def h1_unramified_bound(
    n: int, d: int, s_ell: int, w_ell: int, h_ell: int, h1_factor: int
) -> Factorization:
    """|H^1(l/k, M)| * (|U/U^n| * |nPic|)^d over l with S^l of size s_ell."""
    if min(n - 1, s_ell, w_ell, h_ell, h1_factor) < 1 or d < 0:
        raise ValueError("all inputs must be positive")
    units = gcd_pair(n, w_ell) * n ** (s_ell - 1)
    pic = n_part(h_ell, n)
    return _f(h1_factor) * _f(units * pic) ** d


def rational_torsion_bound(
    n: int,
    a: int,
    b: int,
    g: int,
    S_size: int,
    h: int,
    c_nonempty: bool = True,
    rational_torsion: bool = True,
) -> tuple[Factorization, Factorization]:
    """(n,2)^a n^(b + 2g|S|) h^(2g) and its coarsening n^((2g+1)|S|) h^(2g).

    Valid when the curve has a k-point and its Jacobian has k-rational
    n-torsion.
    """
    if not c_nonempty:
        raise HypothesisError("the bound needs a k-rational point on C")
    if not rational_torsion:
        raise HypothesisError("the bound needs k-rational n-torsion on the Jacobian")
    if a + b > S_size:
        raise ValueError("a + b cannot exceed |S|")
    precise = _f(gcd_pair(n, 2)) ** a * _f(n) ** (b + 2 * g * S_size) * _f(h) ** (2 * g)
    simplified = _f(n) ** ((2 * g + 1) * S_size) * _f(h) ** (2 * g)
    if not precise.divides(simplified):
        raise AuditFailure("precise bound does not divide the simplified one")
    return precise, simplified


def elliptic_prime_bound(p: int, a: int, b: int, s_ell: int, h_ell: int) -> Factorization:
    """Bound for p-torsion of the unramified Brauer group of an elliptic function field."""
    if not factor(p).factors or factor(p).factors != ((p, 1),):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return _f(2) ** (a + b + 2 * s_ell) * _f(h_ell) ** 2
    return _f(p) ** (1 + b + 2 * s_ell) * _f(h_ell) ** 2


def hyperelliptic_bound(
    split: bool,
    g: int,
    a: int = 0,
    b: int = 0,
    S_size: int = 0,
    h: int = 1,
    s_ell: int | None = None,
    h_ell: int | None = None,
) -> Factorization:
    """n = 2 bound for y^2 = f(x): split f, or the generic S_m Galois group."""
    if split:
        return _f(2) ** (a + b + 2 * g * S_size) * _f(h) ** (2 * g)
    if s_ell is None or h_ell is None:
        raise CertificateRequired("the generic case needs |S^l| and h_l(S^l)")
    return _f(2) ** (2 * g * (s_ell + 2)) * _f(h_ell) ** (2 * g)


@dataclass(frozen=True)
class GenusBound:
    """phi(n)^r times a Brauer bound, with r possibly left symbolic."""

    phi: int
    brauer: Factorization
    r: int | None = None
    r_provenance: str = "symbolic"

    @property
    def value(self) -> Factorization | None:
        if self.r is None:
            return None
        return _f(self.phi) ** self.r * self.brauer

    def __str__(self):
        if self.r is not None:
            return str(self.value)
        if self.phi == 1:
            return str(self.brauer)
        base = f"{self.phi}^r" if self.phi > 1 else ""
        return f"{base} · {self.brauer}"


def genus_bound(n: int, brauer: Factorization, r: int | None = None, r_provenance="asserted") -> GenusBound:
    if r is not None and r < 0:
        raise ValueError("r must be nonnegative")
    return GenusBound(euler_phi(n), brauer, r, r_provenance if r is not None else "symbolic")


# ------------------------------------------------------------------ reports


@dataclass(frozen=True)
class Claim:
    """lhs divides rhs."""

    lhs: str
    rhs: str
    lhs_value: Factorization
    rhs_value: Factorization

    def holds(self) -> bool:
        return self.rhs_value.value % self.lhs_value.value == 0


@dataclass
class BoundReport:
    inputs: dict
    route: str
    S: PlaceSet
    S_overridden: bool
    torsion: TorsionFieldData | None
    S_ell: PlaceSet | None
    a: int
    b: int
    c: int
    g: int
    w: int
    h_k: int
    h_ell: int
    provenance: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    claims: list = field(default_factory=list)
    genus: GenusBound | None = None
    notes: list = field(default_factory=list)

    @property
    def brauer_bound(self) -> Factorization:
        return self.values["brauer_bound"]

    def audit(self) -> None:
        bad = [c for c in self.claims if not c.holds()]
        if bad:
            raise AuditFailure(
                "; ".join(f"{c.lhs} = {c.lhs_value} does not divide {c.rhs} = {c.rhs_value}" for c in bad)
            )

    def summary(self) -> str:
        return f"Brauer bound: {self.brauer_bound}; genus bound: {self.genus}"


@dataclass
class BoundConfig:
    curve: Any
    n: int
    S_override: list | None = None
    extra_primes: list = field(default_factory=list)
    r: int | None = None
    ell_certificate: FieldCertificate | None = None
    galois_action: list | None = None
    galois_generators: int | None = None
    c_nonempty: bool | None = None
    n_torsion_rational: bool | None = None
    generic_galois: bool = False
    phi_order: int = 1
    seed: int = 0


def _place_set(cfg: BoundConfig) -> tuple[PlaceSet, bool, list]:
    notes = []
    required = set(factor(cfg.n).primes())
    if cfg.S_override is not None:
        primes = set(cfg.S_override)
        missing = required - primes
        if missing:
            raise HypothesisError(f"S must contain the primes dividing n; missing {sorted(missing)}")
        notes.append("S forced by override; good reduction outside S is not verified")
        S = PlaceSet.over_q(primes)
    else:
        S = build_S(cfg.curve, cfg.n)
    if cfg.extra_primes:
        S = S.with_primes(cfg.extra_primes)
    return S, cfg.S_override is not None, notes


def _curve_inputs(curve) -> dict:
    if isinstance(curve, EllipticCurve):
        out = {"type": "elliptic", "a": str(curve.a), "b": str(curve.b)}
        if curve.shift:
            out["shift"] = str(curve.shift)
        if curve.family_disc is not None:
            out["family_disc"] = str(curve.family_disc)
    else:
        out = {"type": "hyperelliptic", "f": [str(c) for c in curve.f.coeffs]}
    if curve.label:
        out["label"] = curve.label
    return out


def _h1_factor(cfg, ell_data, n, d, notes):
    """Bound for |H^1(l/k, M(l))| with its provenance."""
    if cfg.galois_action:
        gens = [tuple(tuple(row) for row in m) for m in cfg.galois_action]
        G = MatrixGroup(gens, n)
        value = h1(G, FiniteModule(n, d)).h1_order
        return value, "computed from the supplied Galois action"
    prime = factor(n).factors == ((n, 1),)
    if prime and d == 2:
        return (1 if n == 2 else n), "H^1 of a subgroup of GL_2(F_p) on F_p^2 has order 1 or p (1 for p = 2)"
    s = cfg.galois_generators or (ell_data.galois_generators if ell_data else None)
    if s is None:
        raise CertificateRequired("need the number of generators of Gal(l/k) or its action")
    notes.append(f"H^1(l/k) bounded by |M|^s with s = {s}")
    return n ** (d * s), f"cocycle embedding into M^{s}"


def run_pipeline(cfg: BoundConfig) -> BoundReport:
    n = cfg.n
    if n < 2:
        raise ValueError("n must be an integer > 1")
    curve = cfg.curve
    S, overridden, notes = _place_set(cfg)
    a, c = Q.a, Q.c
    b = len(S.primes)
    g = curve.genus
    provenance: dict[str, str] = {}
    values: dict[str, Factorization] = {}
    claims: list[Claim] = []

    point = has_rational_point(curve)
    if point:
        provenance["C(k) nonempty"] = COMPUTED
    elif cfg.c_nonempty:
        provenance["C(k) nonempty"] = USER_ASSERTED
    else:
        raise HypothesisError("C(k) must be nonempty (supply the flag if a point is known)")
    provenance["Phi(C,k)"] = COMPUTED if cfg.phi_order == 1 else USER_ASSERTED
    h_k = s_class_number(Q, S)
    provenance["h_k(S)"] = COMPUTED

    iota = _f(gcd_pair(n, 2)) ** a * _f(n) ** b
    values["beta"] = _f(beta(n, a, b))
    values["iota_bound"] = iota
    claims.append(Claim("beta", "iota_bound", values["beta"], iota))

    route, torsion = _choose_route(cfg, curve, n, notes, provenance)

    if route in ("rational-torsion", "hyperelliptic-split"):
        ell, S_ell, w, h_ell = Q, S, Q.w, h_k
        precise, simplified = rational_torsion_bound(n, a, b, g, S.size, h_k)
        values["closed_form"] = precise
        values["closed_form_simplified"] = simplified
        claims.append(Claim("closed_form", "closed_form_simplified", precise, simplified))
        h1_fac, why = 1, "l = k"
        if route == "hyperelliptic-split":
            lit = hyperelliptic_bound(True, g, a, b, S.size, h_k)
            values["hyperelliptic_split"] = lit
            claims.append(Claim("closed_form", "hyperelliptic_split", precise, lit))
            claims.append(Claim("hyperelliptic_split", "closed_form", lit, precise))
        if n == 2 and g == 1:
            ep = elliptic_prime_bound(2, a, b, S.size, h_k)
            values["elliptic_prime"] = ep
            claims.append(Claim("closed_form", "elliptic_prime", precise, ep))
    else:
        ell = torsion.field
        S_ell = extend_place_set(S, ell, cfg.seed)
        w = ell.w
        if w % n:
            raise HypothesisError(f"{ell} does not contain the {n}-th roots of unity")
        h_ell = s_class_number(ell, S_ell)
        provenance["h_l(S^l)"] = USER_ASSERTED if ell.is_certified else COMPUTED
        provenance["S^l"] = USER_ASSERTED if ell.is_certified else COMPUTED
        h1_fac, why = _h1_factor(cfg, torsion, n, 2 * g, notes)
        if route == "elliptic-prime":
            closed = elliptic_prime_bound(n, a, b, S_ell.size, h_ell)
            values["closed_form"] = closed
        elif route == "hyperelliptic-generic":
            lit = hyperelliptic_bound(False, g, s_ell=S_ell.size, h_ell=h_ell)
            values["hyperelliptic_generic"] = lit
            # the generic closed form omits the (n,2)^a n^b factor from Br(k)
            values["closed_form"] = iota * lit
            notes.append("generic hyperelliptic bound multiplied by (2,2)^a 2^b for the constant part")
    provenance["H^1(l/k) factor"] = why

    d = 2 * g
    units = s_unit_quotient_size(ell, S_ell, n)
    values["unit_quotient"] = _f(units)
    values["unit_quotient_cap"] = _f(n) ** S_ell.size
    claims.append(Claim("unit_quotient", "unit_quotient_cap", values["unit_quotient"], values["unit_quotient_cap"]))
    values["pic_bound"] = _f(n_part(h_ell, n))
    values["h_l"] = _f(h_ell)
    claims.append(Claim("pic_bound", "h_l", values["pic_bound"], values["h_l"]))
    values["h1_factor"] = _f(h1_fac)
    values["h1_bound"] = h1_unramified_bound(n, d, S_ell.size, w, h_ell, h1_fac)
    values["phi_order"] = _f(cfg.phi_order)
    values["brauer_general"] = iota * values["h1_bound"] * values["phi_order"] ** 2
    if cfg.phi_order != 1:
        notes.append("|Phi(C,k)|^2 factor from the relative Brauer group included")

    if "closed_form" in values and cfg.phi_order == 1:
        claims.append(Claim("brauer_general", "closed_form", values["brauer_general"], values["closed_form"]))
        values["brauer_bound"] = values["closed_form"]
    else:
        values["brauer_bound"] = values["brauer_general"]
    if "closed_form_simplified" in values and cfg.phi_order == 1:
        gb_simpl = values["closed_form_simplified"]
    else:
        gb_simpl = values["brauer_bound"]

    genus = genus_bound(n, gb_simpl, cfg.r, "asserted")
    values["genus_brauer"] = gb_simpl
    claims.append(Claim("brauer_bound", "genus_brauer", values["brauer_bound"], gb_simpl))
    if genus.value is not None:
        values["genus_bound"] = genus.value

    report = BoundReport(
        inputs={
            "curve": _curve_inputs(curve),
            "n": n,
            "k": "Q",
            "S_override": sorted(cfg.S_override) if cfg.S_override is not None else None,
            "extra_primes": sorted(cfg.extra_primes),
            "r": cfg.r,
            "seed": cfg.seed,
        },
        route=route,
        S=S,
        S_overridden=overridden,
        torsion=torsion,
        S_ell=S_ell,
        a=a,
        b=b,
        c=c,
        g=g,
        w=w,
        h_k=h_k,
        h_ell=h_ell,
        provenance=provenance,
        values=values,
        claims=claims,
        genus=genus,
        notes=notes,
    )
    report.audit()
    return report


def _choose_route(cfg, curve, n, notes, provenance):
    if isinstance(curve, EllipticCurve):
        if cfg.n_torsion_rational:
            provenance["n-torsion rational"] = USER_ASSERTED
            return "rational-torsion", None
        torsion = None
        if cfg.ell_certificate is not None:
            torsion = TorsionFieldData(
                n, NumberField.certified(cfg.ell_certificate), USER_ASSERTED,
                galois_generators=cfg.galois_generators,
            )
        elif n == 2:
            torsion = two_torsion_field(curve)
            if torsion.shape == "split":
                provenance["n-torsion rational"] = COMPUTED
                return "rational-torsion", torsion
        else:
            torsion = next((t for t in curve.torsion if t.p == n), None)
        if torsion is None or torsion.field is None:
            detail = torsion.note if torsion is not None else f"no {n}-torsion field data"
            raise CertificateRequired(f"{detail}; supply an l-certificate")
        provenance["l"] = torsion.provenance
        if torsion.verified is False:
            notes.append(f"torsion field check failed: {torsion.note}")
        prime = factor(n).factors == ((n, 1),)
        return ("elliptic-prime" if prime else "torsion-field"), torsion
    if isinstance(curve, HyperellipticCurve):
        if cfg.n_torsion_rational:
            provenance["n-torsion rational"] = USER_ASSERTED
            return "rational-torsion", None
        if n != 2:
            raise HypothesisError("hyperelliptic curves are handled for n = 2 only")
        try:
            split = is_split_hyperelliptic(curve)
        except CertificateRequired:
            split = False
        if split:
            provenance["n-torsion rational"] = COMPUTED
            return "hyperelliptic-split", None
        if cfg.ell_certificate is None:
            raise CertificateRequired("non-split f needs a splitting-field certificate")
        if not cfg.generic_galois and not cfg.galois_action and not cfg.galois_generators:
            raise CertificateRequired("non-split f needs the generic-Galois flag or Galois data")
        gens = cfg.galois_generators or 2
        torsion = TorsionFieldData(
            2, NumberField.certified(cfg.ell_certificate), USER_ASSERTED,
            shape="S_m" if cfg.generic_galois else "", galois_generators=gens,
        )
        provenance["l"] = USER_ASSERTED
        return ("hyperelliptic-generic" if cfg.generic_galois else "torsion-field"), torsion
    raise TypeError("unsupported curve")
