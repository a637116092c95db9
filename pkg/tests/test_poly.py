import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from brgenus.oracles import leibniz_det
from brgenus.poly import (
    DomainError,
    Poly,
    brute_force_irreducible,
    determinant,
    discriminant,
    factor_mod_p,
    factor_over_q,
    gauss_valuation,
    is_irreducible_mod_p,
    poly_gcd,
    rational_roots,
    reduce_mod_p,
    resultant,
    sylvester_matrix,
    xgcd,
)

X = sympy.Symbol("x")
small = st.integers(-9, 9)


def to_sympy(f):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(f.coeffs))


def rand_poly(rng, deg, lo=-9, hi=9):
    coeffs = [rng.randint(lo, hi) for _ in range(deg)] + [rng.choice([1, 2, -3, 5])]
    return Poly(coeffs)


def test_resultant_examples():
    x = Poly.x()
    assert resultant(x * x - 1, x - 1) == 0
    assert resultant(x * x + 1, x * x + 4) == 9
    a, b = Fraction(3), Fraction(-5, 2)
    # Sylvester matrix with the rows of f first: res(x - a, x - b) = a - b
    assert resultant(x - a, x - b) == a - b


def test_discriminant_examples():
    x = Poly.x()
    a, b = Fraction(-195, 16), Fraction(647, 32)
    assert discriminant(x**3 + x.scale(a) + Poly.const(b)) == -4 * a**3 - 27 * b**2
    assert discriminant((x - 1) ** 2) == 0
    for d in (2, -3, 7, Fraction(5, 4)):
        assert discriminant(x * x - Poly.const(d)) == 4 * d


def _sylvester_det(f, g):
    """det of the Sylvester matrix, f rows first, built with sympy."""
    m, n = f.degree, g.degree
    fc, gc = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (m - 1 - i))
    return sympy.Matrix(rows).det()


def test_resultant_against_independent_sylvester():
    rng = random.Random(3)
    for _ in range(60):
        f, g = rand_poly(rng, rng.randint(1, 4)), rand_poly(rng, rng.randint(1, 4))
        assert resultant(f, g) == _sylvester_det(f, g)


def test_resultant_root_product():
    rng = random.Random(11)
    for _ in range(60):
        roots = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]
        c = Fraction(rng.choice([1, 2, -3]))
        f = Poly.from_roots(roots).scale(c)
        g = rand_poly(rng, rng.randint(1, 3))
        want = c ** g.degree
        for r in roots:
            want *= g(r)
        assert resultant(f, g) == want
        assert resultant(g, f) == (-1) ** (f.degree * g.degree) * want


def test_discriminant_against_sympy():
    rng = random.Random(4)
    for _ in range(60):
        f = rand_poly(rng, rng.randint(2, 5))
        assert discriminant(f) == sympy.discriminant(to_sympy(f), X)


def test_determinant_against_leibniz():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 5)
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        assert determinant(rows) == leibniz_det(rows)
        ints = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        assert determinant(ints, 7) == leibniz_det(ints) % 7


def test_sylvester_shape():
    x = Poly.x()
    rows = sylvester_matrix(x**3 + x + Poly.const(1), x * x - Poly.const(2))
    assert len(rows) == 5 and all(len(r) == 5 for r in rows)


def test_gauss_valuation_examples():
    assert gauss_valuation(Poly([12, 6, 3]), 3) == 1
    assert gauss_valuation(Poly([Fraction(1, 2), 1]), 2) == -1
    assert gauss_valuation(Poly([25, 0, 0, 5]), 5) == 1


def test_gauss_valuation_multiplicative():
    rng = random.Random(6)
    for _ in range(1000):
        p = rng.choice([2, 3, 5, 7])
        f = Poly([Fraction(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(rng.randint(1, 4))] + [rng.randint(1, 50)])
        g = Poly([Fraction(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(rng.randint(1, 4))] + [rng.randint(1, 50)])
        assert gauss_valuation(f * g, p) == gauss_valuation(f, p) + gauss_valuation(g, p)


def test_reduce_mod_p_examples():
    f = Poly([Fraction(647, 32), Fraction(-195, 16), 0, 1])
    # 195 = 0 and 647/32 = 2/2 = 1 mod 5
    assert reduce_mod_p(f, 5) == Poly([1, 0, 0, 1], 5)
    assert reduce_mod_p(Poly([1, 0, 1]), 2) == Poly([1, 0, 1], 2)
    with pytest.raises(DomainError):
        reduce_mod_p(f, 2)


def test_discriminant_detects_inseparable_reduction():
    rng = random.Random(8)
    for _ in range(300):
        f = rand_poly(rng, 3, -6, 6)
        f = Poly(list(f.coeffs[:3]) + [1])
        for p in (2, 3, 5, 7, 11):
            fp = reduce_mod_p(f, p)
            inseparable = poly_gcd(fp, fp.derivative()).degree > 0
            assert (discriminant(f) % p == 0) == inseparable


def test_factor_mod_p_examples():
    assert factor_mod_p(Poly([1, 1, 1], 2)) == [(Poly([1, 1, 1], 2), 1)]
    assert sorted(factor_mod_p(Poly([1, 1, 1], 7)), key=str) == sorted(
        [(Poly([-2, 1], 7), 1), (Poly([-4, 1], 7), 1)], key=str
    )
    assert factor_mod_p(Poly([0, 0, 1], 3)) == [(Poly([0, 1], 3), 2)]


@given(st.sampled_from([2, 3, 5, 7, 13]), st.lists(st.integers(0, 12), min_size=2, max_size=7), st.integers(0, 3))
@settings(max_examples=300, deadline=None)
def test_factor_mod_p_recomposes(p, coeffs, seed):
    f = Poly(coeffs + [1], p)
    out = factor_mod_p(f, seed=seed)
    prod = Poly([1], p)
    for g, k in out:
        assert g.lc == 1
        if g.degree <= 6:
            assert brute_force_irreducible(g)
        prod = prod * g**k
    assert prod == f


def test_factor_mod_p_seed_independent():
    f = Poly([3, 1, 4, 1, 5, 9, 2, 6, 1], 11)
    assert factor_mod_p(f, seed=0) == factor_mod_p(f, seed=99)


def test_irreducibility_oracle_agrees():
    rng = random.Random(9)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        g = Poly([rng.randrange(p) for _ in range(rng.randint(1, 5))] + [1], p)
        if g.degree >= 1:
            assert is_irreducible_mod_p(g) == brute_force_irreducible(g)


def test_xgcd_identity():
    rng = random.Random(10)
    for _ in range(50):
        f, g = rand_poly(rng, 3), rand_poly(rng, 2)
        d, s, t = xgcd(f, g)
        assert s * f + t * g == d and d.lc == 1


def test_rational_roots_and_factor_over_q():
    x = Poly.x()
    f = (x - Poly.const(Fraction(1, 2))) * (x + Poly.const(3)) * (x * x + Poly.const(1))
    assert rational_roots(f) == [Fraction(-3), Fraction(1, 2)]
    content, parts = factor_over_q(f.scale(4))
    prod = Poly([content])
    for g, k in parts:
        prod = prod * g**k
    assert prod == f.scale(4)
    assert sorted(g.degree for g, _ in parts) == [1, 1, 2]


def test_factor_over_q_high_degree():
    x = Poly.x()
    f = (x**4 + Poly.const(1)) * (x**4 - Poly.const(2))
    content, parts = factor_over_q(f)
    assert sorted(g.degree for g, _ in parts) == [4, 4]
