"""The oracles are only useful if they are right, so check them on known values."""

from brgenus.oracles import (
    abelianized_exponent_index,
    class_number_by_ideals,
    factor_trial,
    fundamental_part,
    imaginary_discriminants,
    is_prime_trial,
    jacobi_symbol,
    leibniz_det,
    quadratic_splitting,
)


def test_primality_and_factoring():
    assert [p for p in range(30) if is_prime_trial(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert factor_trial(1512) == {2: 3, 3: 3, 7: 1}
    assert factor_trial(-8999) == {8999: 1}
    assert factor_trial(1) == {}


def test_leibniz_det():
    assert leibniz_det([[2]]) == 2
    assert leibniz_det([[1, 2], [3, 4]]) == -2
    assert leibniz_det([[2, 0, 1], [1, 3, 2], [1, 1, 1]]) == 0 - 0 + 1 * (1 - 3) + 2 * (3 - 2)


def test_jacobi_and_splitting():
    assert [a for a in range(1, 11) if jacobi_symbol(a, 11) == 1] == [1, 3, 4, 5, 9]
    assert quadratic_splitting(-3, 7) == "split"
    assert quadratic_splitting(-3, 2) == "inert"
    assert quadratic_splitting(-3, 3) == "ramified"
    assert quadratic_splitting(-7, 2) == "split"


def test_fundamental_part():
    assert fundamental_part(-12) == (-3, 2)
    assert fundamental_part(-16) == (-4, 2)
    assert fundamental_part(-20) == (-20, 1)
    assert fundamental_part(-75) == (-3, 5)


def test_class_numbers_known_values():
    known = {-3: 1, -4: 1, -7: 1, -8: 1, -15: 2, -20: 2, -23: 3, -47: 5, -71: 7, -163: 1, -104: 6, -12: 1, -27: 1, -75: 2}
    for D, h in known.items():
        assert class_number_by_ideals(D) == h, D
    assert imaginary_discriminants(12) == [-3, -4, -7, -8, -11, -12]


def test_abelianized_exponent_index():
    # Z/6 under addition: |G : 2G| = 2, |G : 3G| = 3
    elems = list(range(6))
    add = lambda x, y: (x + y) % 6
    assert abelianized_exponent_index(elems, add, 0, 2) == 2
    assert abelianized_exponent_index(elems, add, 0, 3) == 3
    assert abelianized_exponent_index(elems, add, 0, 5) == 1
