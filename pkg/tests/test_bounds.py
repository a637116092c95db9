import random

import pytest

from brgenus.arith import Factorization, factor
from brgenus.bounds import (
    AuditFailure,
    BoundConfig,
    Claim,
    HypothesisError,
    beta,
    elliptic_prime_bound,
    genus_bound,
    h1_unramified_bound,
    hyperelliptic_bound,
    rational_torsion_bound,
    run_pipeline,
)
from brgenus.curves import CertificateRequired, EllipticCurve, HyperellipticCurve, paladino_curve
from brgenus.numfield import FieldCertificate
from brgenus.poly import Poly

X = Poly.x()
ZETA3_CERT = FieldCertificate(degree=2, a=0, c=1, w=6, h=1, primes=((2, ((1, 2),)), (3, ((2, 1),))), label="Q(zeta_3)")


def test_beta_examples():
    assert beta(3, 1, 2) == 3
    assert beta(2, 1, 2) == 4
    assert beta(2, 1, 0) == 1
    assert beta(3, 0, 0) == 1
    assert beta(4, 2, 3) == 64
    assert beta(2, 3, 0) == 4
    with pytest.raises(ValueError):
        beta(1, 1, 1)


def test_beta_divides_naive_bound():
    for n in range(2, 13):
        for a in range(4):
            for b in range(5):
                assert (min(n, 2) ** a if n % 2 == 0 else 1) * n**b % beta(n, a, b) == 0


def test_h1_unramified_bound():
    assert str(h1_unramified_bound(3, 2, 3, 6, 1, 3)) == "3^7"
    assert h1_unramified_bound(3, 0, 3, 6, 1, 3) == factor(3)
    assert h1_unramified_bound(2, 2, 1, 2, 1, 1) == factor(4)
    # only the n-part of the class number enters
    assert h1_unramified_bound(2, 2, 1, 2, 6, 1) == factor(16)
    with pytest.raises(ValueError):
        h1_unramified_bound(2, 2, 0, 2, 1, 1)


def test_rational_torsion_bound():
    precise, simplified = rational_torsion_bound(2, 1, 1, 1, 2, 1)
    assert precise == simplified == factor(64)
    precise, simplified = rational_torsion_bound(3, 1, 2, 1, 3, 2)
    assert precise == factor(3**8 * 4) and simplified == factor(3**9 * 4)


def test_rational_torsion_bound_refuses_without_hypotheses():
    with pytest.raises(HypothesisError):
        rational_torsion_bound(2, 1, 1, 1, 2, 1, c_nonempty=False)
    with pytest.raises(HypothesisError):
        rational_torsion_bound(2, 1, 1, 1, 2, 1, rational_torsion=False)
    with pytest.raises(ValueError):
        rational_torsion_bound(2, 2, 2, 1, 3, 1)


def test_rational_torsion_precise_divides_simplified():
    rng = random.Random(7)
    for _ in range(1000):
        S_size = rng.randint(1, 6)
        a = rng.randint(0, 1)
        b = rng.randint(0, S_size - a)
        precise, simplified = rational_torsion_bound(
            rng.randint(2, 12), a, b, rng.randint(1, 4), S_size, rng.randint(1, 30)
        )
        assert precise.divides(simplified)


def test_elliptic_prime_bound():
    assert str(elliptic_prime_bound(3, 1, 2, 3, 1)) == "3^9"
    assert str(elliptic_prime_bound(2, 1, 1, 2, 1)) == "2^6"
    assert elliptic_prime_bound(2, 1, 1, 2, 2) == factor(2**8)
    with pytest.raises(ValueError):
        elliptic_prime_bound(4, 1, 1, 1, 1)


def test_hyperelliptic_bound():
    assert hyperelliptic_bound(False, 2, s_ell=4, h_ell=1) == factor(2**24)
    assert hyperelliptic_bound(True, 2, 1, 4, 5, 1) == factor(2**25)
    # for g = 1 the split bound is the n = 2 rational-torsion bound
    for S_size in range(1, 5):
        precise, _ = rational_torsion_bound(2, 1, S_size - 1, 1, S_size, 1)
        assert hyperelliptic_bound(True, 1, 1, S_size - 1, S_size, 1) == precise
    with pytest.raises(CertificateRequired):
        hyperelliptic_bound(False, 2)


def test_genus_bound():
    g = genus_bound(3, factor(3**9))
    assert g.value is None and str(g) == "2^r · 3^9"
    assert genus_bound(3, factor(3**9), r=4).value == factor(2**4 * 3**9)
    assert str(genus_bound(2, factor(64), r=2)) == "2^6"
    assert str(genus_bound(2, factor(64))) == "2^6"
    with pytest.raises(ValueError):
        genus_bound(3, factor(3), r=-1)


def test_claim_and_audit():
    assert Claim("a", "b", factor(3), factor(9)).holds()
    assert not Claim("a", "b", factor(9), factor(3)).holds()
    rep = run_pipeline(BoundConfig(curve=EllipticCurve.from_roots(0, 1, -1), n=2))
    rep.claims.append(Claim("x", "y", factor(5), factor(3)))
    with pytest.raises(AuditFailure):
        rep.audit()


# ------------------------------------------------------------------ pipeline


def _run(**kw):
    return run_pipeline(BoundConfig(**kw))


def test_pipeline_worked_example():
    rep = _run(curve=paladino_curve(1, 1), n=3, S_override=[2, 3])
    assert rep.route == "elliptic-prime"
    assert str(rep.values["brauer_general"]) == "3^9"
    assert str(rep.brauer_bound) == "3^9"
    assert str(rep.values["h1_bound"]) == "3^7"
    assert rep.summary() == "Brauer bound: 3^9; genus bound: 2^r · 3^9"
    assert rep.S_overridden and (rep.a, rep.b, rep.S_ell.size) == (1, 2, 3)
    assert any("torsion field check failed" in note for note in rep.notes)


def test_pipeline_paladino_automatic_S():
    rep = _run(curve=paladino_curve(1, 1), n=3)
    assert rep.S.primes == (2, 3, 8999)
    assert str(rep.brauer_bound) == "3^12"


def test_pipeline_split_elliptic():
    rep = _run(curve=EllipticCurve.from_roots(0, 1, -1), n=2)
    assert rep.route == "rational-torsion"
    assert rep.brauer_bound == factor(2**6)
    assert rep.values["elliptic_prime"] == factor(2**6)


def test_pipeline_split_quintic():
    C = HyperellipticCurve.from_factors([X - Poly.const(i) for i in range(5)])
    rep = _run(curve=C, n=2)
    assert rep.route == "hyperelliptic-split"
    assert rep.brauer_bound == factor(2**15)


def test_pipeline_quadratic_two_torsion_field():
    rep = _run(curve=EllipticCurve(-1, 6), n=2)
    assert rep.route == "elliptic-prime"
    assert rep.brauer_bound == factor(2**11)


def test_pipeline_phi_order_and_r():
    rep = _run(curve=EllipticCurve.from_roots(0, 1, -1), n=2, phi_order=2)
    assert rep.brauer_bound == factor(2**8)
    rep = _run(curve=EllipticCurve.from_roots(0, 1, -1), n=3, n_torsion_rational=True, r=2)
    assert rep.genus.value == factor(4) * rep.values["genus_brauer"]


def test_pipeline_refusals():
    E = EllipticCurve(0, -2)
    with pytest.raises(CertificateRequired):
        _run(curve=E, n=3)
    with pytest.raises(CertificateRequired):
        _run(curve=E, n=2)
    with pytest.raises(HypothesisError):
        _run(curve=E, n=3, S_override=[2])
    with pytest.raises(ValueError):
        _run(curve=E, n=1)
    with pytest.raises(CertificateRequired):
        _run(curve=EllipticCurve.from_roots(0, 1, -1), n=4)
    with pytest.raises(HypothesisError):
        _run(curve=HyperellipticCurve.from_factors([X - Poly.const(i) for i in range(5)]), n=3)


def test_pipeline_needs_a_point():
    C = HyperellipticCurve((X**4 + Poly.const(1)).scale(3))
    with pytest.raises(HypothesisError):
        _run(curve=C, n=2, n_torsion_rational=True)
    rep = _run(curve=C, n=2, n_torsion_rational=True, c_nonempty=True)
    assert rep.provenance["C(k) nonempty"] == "user-asserted"


def test_pipeline_certificate_and_galois_action():
    E = EllipticCurve(0, -2)
    rep = _run(curve=E, n=3, ell_certificate=ZETA3_CERT)
    assert rep.provenance["l"] == "user-asserted"
    assert rep.values["h1_factor"] == factor(3)
    rep = _run(curve=E, n=3, ell_certificate=ZETA3_CERT, galois_action=[((2, 0), (0, 1))])
    assert rep.values["h1_factor"] == factor(1)
    assert rep.provenance["H^1(l/k) factor"] == "computed from the supplied Galois action"
    assert rep.values["brauer_general"].divides(rep.brauer_bound)


def test_pipeline_certificate_without_roots_of_unity():
    cert = FieldCertificate(degree=2, a=2, c=0, w=2, h=1, primes=((2, ((2, 1),)), (3, ((1, 1), (1, 1)))))
    with pytest.raises(HypothesisError):
        _run(curve=EllipticCurve(0, -2), n=3, ell_certificate=cert)


def test_pipeline_generic_hyperelliptic():
    C = HyperellipticCurve(X**5 - Poly.const(2))
    cert = FieldCertificate(degree=20, a=4, c=8, w=2, h=1, primes=((2, ((20, 1),)), (5, ((4, 1),) * 5)))
    with pytest.raises(CertificateRequired):
        _run(curve=C, n=2)
    with pytest.raises(CertificateRequired):
        _run(curve=C, n=2, ell_certificate=cert)
    rep = _run(curve=C, n=2, ell_certificate=cert, generic_galois=True)
    assert rep.route == "hyperelliptic-generic"
    assert rep.S_ell.size == 18
    assert rep.values["hyperelliptic_generic"] == factor(2 ** (2 * 2 * 20))
    assert rep.brauer_bound == factor(2**83)


def test_pipeline_extra_primes_enlarge_S():
    rep = _run(curve=EllipticCurve.from_roots(0, 1, -1), n=2, extra_primes=[5, 7])
    assert rep.S.primes == (2, 5, 7)
    assert rep.brauer_bound == factor(2 ** (1 + 3 + 2 * 4))


def test_pipeline_class_group_collapse_pinned():
    # l = Q(sqrt(-89)) has class number 6; putting 3 into S kills the 3-part
    E = EllipticCurve(89, 0)
    assert _run(curve=E, n=2).brauer_bound == factor(2**11 * 3**2)
    rep = _run(curve=E, n=2, extra_primes=[3])
    assert rep.h_ell == 1 and rep.brauer_bound == factor(2**14)


@pytest.mark.xfail(strict=True, reason="enlarging S can shrink h_l(S^l), so the closed form is not monotone in S")
def test_pipeline_bound_monotone_under_enlarging_S():
    E = EllipticCurve(89, 0)
    assert _run(curve=E, n=2).brauer_bound.divides(_run(curve=E, n=2, extra_primes=[3]).brauer_bound)


def test_pipeline_deterministic():
    a = _run(curve=paladino_curve(1, 1), n=3, S_override=[2, 3], seed=3)
    b = _run(curve=paladino_curve(1, 1), n=3, S_override=[2, 3], seed=11)
    assert a.values == b.values
