import pytest

from brgenus.cohom import (
    AbelianGroup,
    ClosureCapExceeded,
    FiniteModule,
    MatrixGroup,
    abelian_shapes,
    abelian_subgroups,
    cyclic_h1,
    cyclic_subgroups_gl2,
    gl2,
    h0,
    h1,
    identity,
    torsion_quotient_index,
)
from brgenus.arith import euler_phi
from brgenus.cohom import mat_order
from brgenus.oracles import abelianized_exponent_index


def test_h0_examples():
    M = FiniteModule(3, 2)
    G = MatrixGroup([((1, 1), (0, 1))], 3)
    assert h0(G, M) == [(0, 0), (1, 0), (2, 0)]
    G = MatrixGroup([((2, 0), (0, 2))], 3)
    assert h0(G, M) == [(0, 0)]


def test_h1_unipotent_mod_3():
    G = MatrixGroup([((1, 1), (0, 1))], 3)
    assert h1(G, FiniteModule(3, 2)).h1_order == 3


def test_h1_trivial_group():
    G = MatrixGroup([identity(2)], 5)
    assert h1(G, FiniteModule(5, 2)).h1_order == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_h1_matches_cyclic_formula(p):
    M = FiniteModule(p, 2)
    for u in cyclic_subgroups_gl2(p):
        G = MatrixGroup([u], p)
        c = h1(G, M)
        assert c.h1_order == cyclic_h1(u, M), u
        assert c.h1_order in (1, p)
        assert (M.order**c.generator_count) % c.z1_order == 0


def test_cyclic_subgroup_count():
    # each cyclic subgroup of order k has phi(k) generators
    assert len(cyclic_subgroups_gl2(2)) == 5
    for p in (2, 3, 5):
        elems = gl2(p)
        assert len(elems) == (p * p - 1) * (p * p - p)
        by_order = {}
        for u in elems:
            k = mat_order(u, p)
            by_order[k] = by_order.get(k, 0) + 1
        expected = sum(c // euler_phi(k) for k, c in by_order.items())
        assert len(cyclic_subgroups_gl2(p)) == expected


def test_trivial_action_against_abelianization_oracle():
    cases = [
        ([((1, 1), (0, 1)), ((1, 0), (1, 1))], 2),  # S_3
        ([((0, 1), (1, 0))], 3),
        ([((1, 1), (0, 1)), ((2, 0), (0, 1))], 3),
        ([((2, 0), (0, 1)), ((1, 0), (0, 2))], 3),
    ]
    for gens, p in cases:
        G = MatrixGroup(gens, p)
        for d in (1, 2):
            M = FiniteModule(p, d)
            got = h1(G, M, action=lambda g, d=d: identity(d)).h1_order
            idx = abelianized_exponent_index(G.elements, G.mul, G.identity, p)
            assert got == idx**d, (gens, p, d)


def test_h1_with_two_generators_nonabelian():
    # a group of order 6 on F_3^2; 3 divides |G| so nothing forces H^1 to vanish
    G = MatrixGroup([((0, 1), (1, 0)), ((0, 2), (1, 2))], 3)
    assert G.order == 6
    c = h1(G, FiniteModule(3, 2))
    assert c.z1_order % c.b1_order == 0


def test_coprime_order_kills_h1():
    # |G| = 2 acting on F_3^2: H^1 vanishes
    G = MatrixGroup([((2, 0), (0, 1))], 3)
    assert h1(G, FiniteModule(3, 2)).h1_order == 1


def test_cap():
    with pytest.raises(ClosureCapExceeded):
        MatrixGroup([((1, 1), (0, 1)), ((1, 0), (1, 1))], 5, cap=10).elements


def test_noninvertible_generator_rejected():
    with pytest.raises(ValueError):
        MatrixGroup([((1, 1), (1, 1))], 5)


def test_torsion_quotient_index_examples():
    assert torsion_quotient_index((4,), [(2,)], 2) == (2, True)
    index, ok = torsion_quotient_index((9, 3), [(3, 0)], 3)
    assert ok and 3 % index == 0


def test_torsion_quotient_index_sweep():
    for shape in abelian_shapes(24):
        A = AbelianGroup(shape)
        for B in abelian_subgroups(A):
            gens = list(B)
            for n in (2, 3, 4):
                _, ok = torsion_quotient_index(shape, gens, n)
                assert ok, (shape, n)


def test_abelian_subgroup_counts():
    assert len(abelian_subgroups(AbelianGroup((2, 2)))) == 5
    assert len(abelian_subgroups(AbelianGroup((12,)))) == 6
    assert len(abelian_subgroups(AbelianGroup((3, 3)))) == 6
    assert len(abelian_subgroups(AbelianGroup((2, 4)))) == 8
    assert abelian_subgroups(AbelianGroup(())) == [frozenset({()})]


def test_module_encoding_round_trip():
    M = FiniteModule(5, 3)
    for code in range(M.order):
        assert M.encode(M.decode(code)) == code
