"""Slow, independent reference implementations used to check the fast paths.

Nothing here shares code with the routines it checks beyond plain integer
arithmetic.
"""

from __future__ import annotations

import math
from itertools import permutations


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_trial(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _perm_sign(perm) -> int:
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(rows) -> object:
    """Sum over permutations; only for small matrices."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        term = _perm_sign(perm)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


def jacobi_symbol(a: int, n: int) -> int:
    """Euler's criterion for odd prime n, by modular exponentiation."""
    a %= n
    if a == 0:
        return 0
    return 1 if pow(a, (n - 1) // 2, n) == 1 else -1


def quadratic_splitting(D: int, p: int) -> str:
    """'split', 'inert' or 'ramified' for p in the quadratic field of discriminant D."""
    if D % p == 0:
        return "ramified"
    if p == 2:
        return "split" if D % 8 == 1 else "inert"
    return "split" if jacobi_symbol(D, p) == 1 else "inert"


def fundamental_part(D: int) -> tuple[int, int]:
    """(D0, f) with D = f^2 D0 and D0 a fundamental discriminant."""
    sign = -1 if D < 0 else 1
    m = abs(D)
    core, f = 1, 1
    for p, e in factor_trial(m).items():
        core *= p ** (e % 2)
        f *= p ** (e // 2)
    d0 = sign * core
    if d0 % 4 != 1:
        d0 *= 4
        f //= 2
    return d0, f


# ---------------------------------------------------- ideal enumeration in O_K


class _Order:
    """Z[w] with w = (D + sqrt D)/2, so w^2 = D w - m, m = (D^2 - D)/4."""

    def __init__(self, D):
        self.D = D
        self.m = (D * D - D) // 4

    def mul(self, x, y):
        (a, b), (c, d) = x, y
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd (D w - m)
        return (a * c - b * d * self.m, a * d + b * c + b * d * self.D)

    def norm(self, x, y):
        return x * x + self.D * x * y + self.m * y * y

    def conj(self, x):
        a, b = x
        # conj(w) = D - w
        return (a + b * self.D, -b)


def _hnf(vectors):
    """Basis ((a, 0), (b, c)) of the Z-lattice spanned by vectors in Z^2."""
    vecs = [list(v) for v in vectors if v != (0, 0)]
    # column 1 (the w-coordinate): gcd by repeated reduction
    while sum(1 for v in vecs if v[1]) > 1:
        vecs.sort(key=lambda v: (v[1] == 0, abs(v[1])))
        piv = vecs[0]
        for v in vecs[1:]:
            if v[1]:
                q = v[1] // piv[1]
                v[0] -= q * piv[0]
                v[1] -= q * piv[1]
    with_y = [v for v in vecs if v[1]]
    rest = [v[0] for v in vecs if not v[1]]
    a = 0
    for r in rest:
        a = math.gcd(a, r)
    b, c = with_y[0]
    if c < 0:
        b, c = -b, -c
    return (a, b % a, c)


def _ideal(order, gens):
    """HNF (a, b, c): the ideal aZ + (b + c w)Z generated as an O-module."""
    one, w = (1, 0), (0, 1)
    span = []
    for g in gens:
        span.append(order.mul(g, one))
        span.append(order.mul(g, w))
    return _hnf(span)


def _ideal_norm(I):
    a, _, c = I
    return a * c


def _has_element_of_norm(order, I, N) -> bool:
    a, b, c = I
    # element s(a, 0) + t(b, c) = (s a + t b) + (t c) w
    D = order.D
    # norm = (x + D y/2)^2 + (|D|/4) y^2, so |y| <= 2 sqrt(N/|D|)
    tmax = math.isqrt(4 * N // abs(D)) // c + 1
    for t in range(-tmax, tmax + 1):
        y = t * c
        # (x + D y / 2)^2 = N - |D| y^2 / 4  => solve for x
        rem4 = 4 * N - abs(D) * y * y
        if rem4 < 0:
            continue
        r = math.isqrt(rem4)
        if r * r != rem4:
            continue
        for twice in (r, -r):
            # 2x + D y = twice
            if (twice - D * y) % 2:
                continue
            x = (twice - D * y) // 2
            if (x - t * b) % a == 0 and order.norm(x, y) == N:
                return True
    return False


def class_number_by_ideals(D: int) -> int:
    """Class number of the imaginary quadratic order of discriminant D.

    For fundamental D the ideals of norm up to the Minkowski bound are
    enumerated and sorted into classes by a principality test (an ideal of
    norm N is principal iff it contains an element of norm N).  Other D are
    reduced to their fundamental part with the conductor formula.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    D0, f = fundamental_part(D)
    h0 = _fundamental_class_number(D0)
    if f == 1:
        return h0
    w0 = {-3: 6, -4: 4}.get(D0, 2)
    num, den = h0 * f, 1
    for p in factor_trial(f):
        chi = {"split": 1, "inert": -1, "ramified": 0}[quadratic_splitting(D0, p)]
        num *= p - chi
        den *= p
    unit_index = w0 // 2
    return num // (den * unit_index)


def _fundamental_class_number(D: int) -> int:
    order = _Order(D)
    bound = math.floor(2 / math.pi * math.sqrt(abs(D)))
    ideals = []
    for a in range(1, bound + 1):
        for b in range(a):
            if order.norm(b, 1) % a == 0:
                for c in range(1, math.isqrt(bound // a) + 1):
                    if a * c * c <= bound:
                        ideals.append(_ideal(order, [(a * c, 0), (b * c, c)]))
    reps = []
    for I in ideals:
        a, b, c = I
        conj_gens = [order.conj((a, 0)), order.conj((b, c))]
        for J in reps:
            ja, jb, jc = J
            prod = _ideal(order, [order.mul(x, y) for x in conj_gens for y in [(ja, 0), (jb, jc)]])
            if _has_element_of_norm(order, prod, _ideal_norm(I) * _ideal_norm(J)):
                break
        else:
            reps.append(I)
    return len(reps)


def imaginary_discriminants(limit: int) -> list[int]:
    return [-D for D in range(3, limit + 1) if (-D) % 4 in (0, 1)]


# ---------------------------------------------------- trivial-action cohomology


def abelianized_exponent_index(elements, mul, identity, n: int) -> int:
    """|G : [G, G] G^n| for a finite group given by its element list.

    With trivial action H^1(G, (Z/n)^d) = Hom(G, Z/n)^d, and Hom(G, Z/n)
    has exactly this order.
    """
    def power(x, k):
        out = identity
        for _ in range(k):
            out = mul(out, x)
        return out

    def inverse(x):
        y = x
        while mul(x, y) != identity:
            y = mul(y, x)
        return y

    gens = {power(x, n) for x in elements}
    for x in elements:
        for y in elements:
            gens.add(mul(mul(x, y), inverse(mul(y, x))))
    sub = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                z = mul(x, g)
                if z not in sub:
                    sub.add(z)
                    nxt.append(z)
        frontier = nxt
    return len(elements) // len(sub)
