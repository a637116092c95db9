"""Brute-force H^0 and H^1 of finite matrix groups acting on (Z/n)^d.

Elements of a module are encoded as integers (base-n digits, first
coordinate least significant) so the cocycle search can work with lookup
tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product

DEFAULT_CAP = 10**5


class ClosureCapExceeded(RuntimeError):
    pass


def mat_mul(x, y, n):
    k = len(y)
    return tuple(
        tuple(sum(x[i][t] * y[t][j] for t in range(k)) % n for j in range(len(y[0])))
        for i in range(len(x))
    )


def mat_vec(x, v, n):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) % n for row in x)


def identity(d, n=None):
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def det(x, n):
    """Determinant mod n by cofactor expansion (matrices here are tiny)."""
    d = len(x)
    if d == 1:
        return x[0][0] % n
    total = 0
    for j in range(d):
        minor = tuple(row[:j] + row[j + 1 :] for row in x[1:])
        total += (-1) ** j * x[0][j] * det(minor, n)
    return total % n


def as_matrix(rows, n):
    return tuple(tuple(int(v) % n for v in row) for row in rows)


def mat_order(u, n, cap=DEFAULT_CAP):
    one = identity(len(u))
    x, k = u, 1
    while x != one:
        x = mat_mul(x, u, n)
        k += 1
        if k > cap:
            raise ClosureCapExceeded("matrix order exceeds cap")
    return k


@dataclass(frozen=True)
class FiniteModule:
    """(Z/n)^d with componentwise arithmetic."""

    n: int
    d: int

    @property
    def order(self):
        return self.n**self.d

    def elements(self):
        return [self.decode(i) for i in range(self.order)]

    def encode(self, v):
        code = 0
        for x in reversed(v):
            code = code * self.n + x % self.n
        return code

    def decode(self, code):
        v = []
        for _ in range(self.d):
            code, r = divmod(code, self.n)
            v.append(r)
        return tuple(v)

    def add(self, u, v):
        return tuple((a + b) % self.n for a, b in zip(u, v))

    def neg(self, u):
        return tuple((-a) % self.n for a in u)

    @property
    def zero(self):
        return (0,) * self.d


class MatrixGroup:
    """Finite group generated by invertible d x d matrices over Z/n."""

    def __init__(self, generators, n: int, cap: int = DEFAULT_CAP):
        self.n = n
        self.cap = cap
        self.generators = tuple(as_matrix(g, n) for g in generators)
        if not self.generators:
            raise ValueError("need at least one generator (use the identity for the trivial group)")
        self.d = len(self.generators[0])
        for g in self.generators:
            if len(g) != self.d or any(len(row) != self.d for row in g):
                raise ValueError("generators must be square matrices of equal size")
            if math.gcd(det(g, n), n) != 1:
                raise ValueError(f"generator {g} is not invertible mod {n}")

    @cached_property
    def elements(self) -> list:
        """Closure under multiplication, identity first, in breadth-first order."""
        one = identity(self.d)
        order = [one]
        seen = {one}
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for g in self.generators:
                y = mat_mul(g, x, self.n)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    if len(order) > self.cap:
                        raise ClosureCapExceeded(f"group order exceeds cap {self.cap}")
        return order

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    @property
    def identity(self):
        return identity(self.d)

    def mul(self, x, y):
        return mat_mul(x, y, self.n)


def _default_action(G: MatrixGroup, M: FiniteModule):
    if G.d != M.d or G.n % M.n:
        raise ValueError("matrix size or modulus does not match the module")

    def act(g):
        return as_matrix(g, M.n)

    return act


def _action_tables(G, M, action):
    tables = {}
    elems = M.elements()
    for g in G.elements:
        mat = action(g)
        tables[g] = [M.encode(mat_vec(mat, v, M.n)) for v in elems]
    return tables


def h0(G: MatrixGroup, M: FiniteModule, action=None) -> list:
    """Fixed points of M under G."""
    action = action or _default_action(G, M)
    mats = [action(g) for g in G.generators]
    return [v for v in M.elements() if all(mat_vec(m, v, M.n) == v for m in mats)]


@dataclass(frozen=True)
class CocycleSet:
    """Cocycles and coboundaries, each recorded by its values on the generators."""

    z1: tuple
    b1: frozenset
    module_order: int
    generator_count: int

    @property
    def z1_order(self):
        return len(self.z1)

    @property
    def b1_order(self):
        return len(self.b1)

    @property
    def h1_order(self):
        return self.z1_order // self.b1_order


def h1(G: MatrixGroup, M: FiniteModule, action=None) -> CocycleSet:
    """Enumerate 1-cocycles by their generator values.

    Each assignment of module elements to the generators is propagated along
    the breadth-first closure of G with c(s y) = c(s) + s c(y); it is a
    cocycle exactly when every propagated edge is consistent.
    """
    action = action or _default_action(G, M)
    elems = G.elements
    index = {g: i for i, g in enumerate(elems)}
    gens = G.generators
    act = _action_tables(G, M, action)
    size = M.order
    decoded = M.elements()
    add = [[M.encode(M.add(decoded[i], decoded[j])) for j in range(size)] for i in range(size)] if size <= 4096 else None

    def plus(i, j):
        return add[i][j] if add is not None else M.encode(M.add(decoded[i], decoded[j]))

    # edges[y][s] = index of gens[s] * y
    edges = [[index[G.mul(s, y)] for s in gens] for y in elems]
    gen_acts = [act[s] for s in gens]
    z1 = []
    for assignment in product(range(size), repeat=len(gens)):
        c = [-1] * len(elems)
        c[0] = 0
        ok = True
        for yi in range(len(elems)):
            cy = c[yi]
            for si, target in enumerate(edges[yi]):
                val = plus(assignment[si], gen_acts[si][cy])
                if c[target] < 0:
                    c[target] = val
                elif c[target] != val:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            z1.append(assignment)
    b1 = set()
    for m in range(size):
        neg_m = M.encode(M.neg(decoded[m]))
        b1.add(tuple(plus(act[s][m], neg_m) for s in gens))
    return CocycleSet(tuple(z1), frozenset(b1), size, len(gens))


def cyclic_h1(u, M: FiniteModule) -> int:
    """|ker N| / |(u - 1) M| with N = 1 + u + ... + u^(ord u - 1)."""
    n = M.n
    u = as_matrix(u, n)
    if math.gcd(det(u, n), n) != 1:
        raise ValueError("u is not invertible")
    k = mat_order(u, n)
    powers = [identity(M.d)]
    for _ in range(k - 1):
        powers.append(mat_mul(u, powers[-1], n))
    norm = tuple(
        tuple(sum(p[i][j] for p in powers) % n for j in range(M.d)) for i in range(M.d)
    )
    kernel = sum(1 for v in M.elements() if not any(mat_vec(norm, v, n)))
    image = {
        tuple((a - b) % n for a, b in zip(mat_vec(u, v, n), v)) for v in M.elements()
    }
    assert kernel % len(image) == 0
    return kernel // len(image)


# ------------------------------------------------------------- GL_2(F_p)


def gl2(p: int) -> list:
    out = []
    for a, b, c, d in product(range(p), repeat=4):
        if (a * d - b * c) % p:
            out.append(((a, b), (c, d)))
    return out


def cyclic_subgroups_gl2(p: int) -> list:
    """One generator for each cyclic subgroup of GL_2(F_p)."""
    seen = set()
    gens = []
    for u in gl2(p):
        key = frozenset(MatrixGroup([u], p).elements)
        if key not in seen:
            seen.add(key)
            gens.append(u)
    return gens


# ----------------------------------------------- index check for A/B torsion


@dataclass(frozen=True)
class AbelianGroup:
    """Z/m_1 x ... x Z/m_r."""

    orders: tuple[int, ...]

    @property
    def order(self):
        return math.prod(self.orders)

    def elements(self):
        return list(product(*(range(m) for m in self.orders)))

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.orders))

    def scale(self, k, x):
        return tuple(k * a % m for a, m in zip(x, self.orders))

    @property
    def zero(self):
        return (0,) * len(self.orders)

    def span(self, gens) -> frozenset:
        span = {self.zero}
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(span)


def torsion_quotient_index(orders, b_generators, n: int) -> tuple[int, bool]:
    """Index of phi(A[n]) in (A/B)[n], and whether it divides |B|.

    phi is the projection A -> A/B; everything is counted by enumerating A.
    """
    A = AbelianGroup(tuple(orders))
    B = A.span([tuple(g) for g in b_generators])
    elems = A.elements()
    # (A/B)[n] = {a + B : n a in B}; its order is |{a : n a in B}| / |B|.
    lift = sum(1 for a in elems if A.scale(n, a) in B)
    quotient_torsion = lift // len(B)
    a_torsion = [a for a in elems if A.scale(n, a) == A.zero]
    # phi(A[n]) ~ A[n] / (A[n] n B)
    image = len(a_torsion) // sum(1 for a in a_torsion if a in B)
    if quotient_torsion % image:
        raise AssertionError("image is not a subgroup of the quotient torsion")
    index = quotient_torsion // image
    return index, len(B) % index == 0


def abelian_subgroups(A: AbelianGroup) -> list[frozenset]:
    """Every subgroup of a finite abelian group, by iterated cyclic extension."""
    elems = A.elements()
    start = frozenset([A.zero])
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for H in frontier:
            done = set(H)
            for a in elems:
                if a in done:
                    continue
                # <H, a + h> = <H, a>, so the whole coset is handled at once
                done |= {A.add(a, h) for h in H}
                K = _extend(A, H, a)
                if K not in seen:
                    seen.add(K)
                    nxt.append(K)
        frontier = nxt
    return list(seen)


def _extend(A, H, a):
    out = set(H)
    x = a
    while x not in H:
        out |= {A.add(h, x) for h in H}
        x = A.add(x, a)
    return frozenset(out)


def abelian_shapes(max_order: int) -> list[tuple[int, ...]]:
    """Invariant-factor shapes (m_1 | m_2 | ...) of abelian groups of order <= max_order."""
    shapes = []

    def grow(prefix, prod_so_far):
        if prefix:
            shapes.append(tuple(prefix))
        last = prefix[-1] if prefix else 1
        m = last if prefix else 2
        while prod_so_far * m <= max_order:
            if not prefix or m % last == 0:
                grow(prefix + [m], prod_so_far * m)
            m += 1

    grow([], 1)
    return [()] + shapes
