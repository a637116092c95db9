"""Exact integer arithmetic: factorization, primality, and small number-theoretic functions.

Rationals are plain :class:`fractions.Fraction` values, which are always
stored reduced with a positive denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

Rational = Fraction

TRIAL_LIMIT = 10**6

# Deterministic for n < 3.3 * 10**24, far beyond anything factored here.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _small_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES_1000 = _small_primes(1000)
_TRIAL_PRIMES: list[int] | None = None


def _trial_primes():
    global _TRIAL_PRIMES
    if _TRIAL_PRIMES is None:
        _TRIAL_PRIMES = _small_primes(TRIAL_LIMIT)
    return _TRIAL_PRIMES


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in _PRIMES_1000[:25]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n):
    # Brent's variant; deterministic sequence of constants.
    if n % 2 == 0:
        return 2
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split_large(n, out):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _split_large(d, out)
    _split_large(n // d, out)


@dataclass(frozen=True)
class Factorization:
    """A nonzero integer as sign times a product of prime powers."""

    sign: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        primes = [p for p, _ in self.factors]
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError("primes must be strictly increasing")
        for p, e in self.factors:
            if e <= 0 or not is_prime(p):
                raise ValueError(f"bad factor {p}^{e}")

    @classmethod
    def from_dict(cls, exps: dict[int, int], sign: int = 1) -> "Factorization":
        return cls(sign, tuple(sorted((p, e) for p, e in exps.items() if e)))

    @classmethod
    def of(cls, n: int) -> "Factorization":
        return factor(n)

    @property
    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    def __int__(self):
        return self.value

    def exponents(self) -> dict[int, int]:
        return dict(self.factors)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __mul__(self, other):
        if isinstance(other, int):
            other = factor(other)
        exps = self.exponents()
        for p, e in other.factors:
            exps[p] = exps.get(p, 0) + e
        return Factorization.from_dict(exps, self.sign * other.sign)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        return Factorization.from_dict(
            {p: e * k for p, e in self.factors}, self.sign**k
        )

    def divides(self, other: "Factorization | int") -> bool:
        if isinstance(other, int):
            other = factor(other)
        mine = other.exponents()
        return all(mine.get(p, 0) >= e for p, e in self.factors)

    def __str__(self):
        if not self.factors:
            return "-1" if self.sign < 0 else "1"
        body = " · ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return ("-" if self.sign < 0 else "") + body


ONE = Factorization(1)

# optional persistent store consulted for cofactors past trial division
_factor_store = None


def set_factor_store(store) -> None:
    """Install an object with ``lookup(n)`` and ``record(n, fact)`` (or None)."""
    global _factor_store
    _factor_store = store


def factor(n: int) -> Factorization:
    """Factor a nonzero integer.

    Trial division up to ``TRIAL_LIMIT`` followed by Pollard rho on the
    cofactor, with primality settled by deterministic Miller-Rabin.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    exps: dict[int, int] = {}
    primes = _PRIMES_1000 if n < 10**6 else _trial_primes()
    for p in primes:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps[p] = e
    if n > 1:
        if n < (primes[-1] + 1) ** 2:
            exps[n] = exps.get(n, 0) + 1
        else:
            _factor_large(n, exps)
    return Factorization.from_dict(exps, sign)


def _factor_large(n, exps):
    known = _factor_store.lookup(n) if _factor_store is not None else None
    if known is None:
        part: dict[int, int] = {}
        _split_large(n, part)
        known = Factorization.from_dict(part)
        if _factor_store is not None:
            _factor_store.record(n, known)
    for p, e in known.factors:
        exps[p] = exps.get(p, 0) + e


def prime_support(x) -> set[int]:
    """Primes dividing the numerator or denominator of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no prime support")
    return set(factor(x.numerator).primes()) | set(factor(x.denominator).primes())


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = n
    for p, _ in factor(n).factors:
        result = result // p * (p - 1)
    return result


def gcd_pair(m: int, n: int) -> int:
    if m == 0 and n == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(m, n)


def n_part(h: int, n: int) -> int:
    """Largest divisor of h supported on the primes dividing n."""
    if h < 1 or n < 2:
        raise ValueError("n_part needs h >= 1 and n >= 2")
    part = 1
    for p, _ in factor(n).factors:
        while h % p == 0:
            h //= p
            part *= p
    return part


def lcm(*args: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), args, 1)


def is_nth_power(x, n: int) -> bool:
    """Whether a nonzero rational is an n-th power in Q."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero is excluded")
    if x < 0 and n % 2 == 0:
        return False
    for part in (x.numerator, x.denominator):
        if any(e % n for _, e in factor(abs(part)).factors):
            return False
    return True


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = squarefree_part(n) * k**2."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    f = factor(n)
    out = f.sign
    for p, e in f.factors:
        if e % 2:
            out *= p
    return out


def rational_nth_root(x, n: int) -> Fraction | None:
    """The real n-th root of x when it is rational, else None."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    if not is_nth_power(x, n):
        return None
    sign = -1 if x < 0 else 1

    def root(m):
        if m < 2:
            return m
        r = 1 << ((m.bit_length() + n - 1) // n)
        while True:
            nxt = ((n - 1) * r + m // r ** (n - 1)) // n
            if nxt >= r:
                return r
            r = nxt

    return sign * Fraction(root(abs(x.numerator)), root(x.denominator))
