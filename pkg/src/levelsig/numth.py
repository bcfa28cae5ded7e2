"""Integer and modular arithmetic substrate.

Primality, square roots mod primes and prime powers, CRT, Cornacchia,
and quadratic-residue tests. Everything here is exact integer arithmetic;
factored moduli are carried explicitly as :class:`FactoredInt`.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113]

# Deterministic Miller-Rabin bases for n < 2^64 (Sinclair/FIPS set).
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_PROBABILISTIC_ROUNDS = 64


def _miller_rabin_round(n: int, a: int) -> bool:
    if a % n == 0:
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below 2^64, 64 pseudorandom rounds above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 2 ** 64:
        return all(_miller_rabin_round(n, a) for a in _MR_BASES_64)
    rng = random.Random(n & 0xFFFFFFFF)
    return all(_miller_rabin_round(n, rng.randrange(2, n - 1))
               for _ in range(_PROBABILISTIC_ROUNDS))


def is_probable_prime(n: int, rounds: int = 2) -> bool:
    """Cheap filter for hot loops; confirm accepted values with is_prime."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    rng = random.Random(n & 0xFFFFFFF)
    return all(_miller_rabin_round(n, rng.randrange(2, n - 1))
               for _ in range(rounds))


def next_prime(n: int) -> int:
    n += 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n


def random_prime(rng: random.Random, lo: int, hi: int, condition=None) -> int:
    """Uniform-ish prime in [lo, hi), optionally satisfying `condition`."""
    for _ in range(100000):
        n = rng.randrange(lo, hi) | 1
        if is_probable_prime(n) and is_prime(n) and (condition is None or condition(n)):
            return n
    raise RuntimeError("no prime found in range")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Square root of a mod odd prime p, the smaller of the two; None if non-residue.

    Tonelli-Shanks with the p = 3 mod 4 fast path. Rejects non-prime moduli.
    """
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2i = 0, t
        while t2i != 1:
            t2i = t2i * t2i % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


def sqrt_mod_prime_power(a: int, q: int, e: int) -> Optional[int]:
    """A square root of a modulo q^e (q prime), or None. Handles q = 2."""
    m = q ** e
    a %= m
    if a == 0:
        return 0
    if q != 2:
        v = 0
        while a % q == 0:
            a //= q
            v += 1
        if v % 2 == 1:
            return None
        r = sqrt_mod(a, q)
        if r is None:
            return None
        # Hensel lift
        mod = q
        while mod < m:
            mod = min(mod * mod, m)
            f = (r * r - a) % mod
            r = (r - f * pow(2 * r, -1, mod)) % mod
        return (r * q ** (v // 2)) % m
    # q = 2
    v = 0
    while a % 2 == 0:
        a //= 2
        v += 1
    if v % 2 == 1:
        return None
    half = e - v
    if half <= 0:
        return (1 << (v // 2)) % m if a == 1 else None
    mod = 1 << half
    if half == 1:
        r = 1
    elif half == 2:
        if a % 4 != 1:
            return None
        r = 1
    else:
        if a % 8 != 1:
            return None
        r = 1
        k = 3
        while (1 << k) < mod:
            if (r * r - a) % (1 << (k + 1)):
                r += 1 << (k - 1)
            k += 1
        if (r * r - a) % mod:
            r += 1 << (k - 1)
    if (r * r - a) % mod:
        return None
    return (r << (v // 2)) % m


def crt(residues: Sequence[tuple[int, int]]) -> int:
    """Unique residue modulo the product of the pairwise-coprime moduli."""
    x, m = 0, 1
    for value, modulus in residues:
        if modulus <= 0:
            raise ValueError("modulus must be positive")
        g = math.gcd(m, modulus)
        if g != 1:
            raise ValueError(f"moduli not coprime (gcd {g})")
        h = (value - x) * pow(m, -1, modulus) % modulus
        x += m * h
        m *= modulus
    return x % m


def cornacchia(d: int, m: int) -> Optional[tuple[int, int]]:
    """Primitive solution (x, y) of x^2 + d*y^2 = m, or None.

    Requires gcd(d, m) = 1, d >= 1. Exhaustive for tiny m, Cornacchia descent
    otherwise; the returned pair always satisfies the equation exactly.
    """
    if d < 1 or m < 1:
        raise ValueError("need d >= 1 and m >= 1")
    if math.gcd(d, m) != 1:
        raise ValueError("need gcd(d, m) = 1")
    if m == 1:
        return (1, 0)
    if m <= 64:
        y = 0
        while d * y * y <= m:
            x2 = m - d * y * y
            x = math.isqrt(x2)
            if x * x == x2:
                return (x, y)
            y += 1
        return None
    if not is_prime(m):
        # descent below is only complete for prime m
        return _cornacchia_smallcase(d, m)
    r = sqrt_mod((-d) % m, m)
    if r is None:
        return None
    for r0 in (r, m - r):
        a, b = m, r0
        limit = math.isqrt(m)
        while b > limit:
            a, b = b, a % b
        y2, rem = divmod(m - b * b, d)
        if rem == 0:
            y = math.isqrt(y2)
            if y * y == y2:
                return (b, y)
    return None


def _cornacchia_smallcase(d: int, m: int) -> Optional[tuple[int, int]]:
    if m > 10 ** 12:
        return None
    y = 0
    while d * y * y <= m:
        x2 = m - d * y * y
        x = math.isqrt(x2)
        if x * x == x2:
            return (x, y)
        y += 1
    return None


def two_squares(m: int) -> Optional[tuple[int, int]]:
    """x, y with x^2 + y^2 = m for m prime-like inputs; handles powers of 2 in m."""
    if m == 0:
        return (0, 0)
    v = 0
    n = m
    while n % 4 == 0:
        n //= 4
        v += 1
    if n % 2 == 0:
        # x^2+y^2 = 2k with x,y odd <-> ((x+y)/2)^2+((x-y)/2)^2 = k
        sol = two_squares(n // 2)
        if sol is None:
            return None
        x, y = sol
        x, y = x + y, abs(x - y)
        return (x << v, y << v)
    sol = cornacchia(1, n) if n > 1 else (1, 0)
    if sol is None:
        return None
    return (sol[0] << v, sol[1] << v)


@dataclass(frozen=True)
class FactoredInt:
    """Positive integer carried together with its prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("value must be positive")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            if e <= 0:
                raise ValueError("exponents must be positive")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prod *= p ** e
            last = p
        if prod != self.value:
            raise ValueError("factorization does not match value")

    @classmethod
    def from_prime(cls, p: int) -> "FactoredInt":
        return cls(p, ((p, 1),))

    @classmethod
    def from_factors(cls, factors: Iterable[tuple[int, int]]) -> "FactoredInt":
        factors = tuple(sorted(factors))
        value = 1
        for p, e in factors:
            value *= p ** e
        return cls(value, factors)

    @classmethod
    def factorize(cls, n: int) -> "FactoredInt":
        """Desk-scale factorization (trial division + Pollard rho)."""
        return cls.from_factors(_factorize(n).items())

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def euler_phi(self) -> int:
        phi = 1
        for p, e in self.factors:
            phi *= p ** (e - 1) * (p - 1)
        return phi

    def __int__(self) -> int:
        return self.value


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        x = rng.randrange(2, n)
        y, c, d = x, rng.randrange(1, n), 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factorize(n: int) -> dict[int, int]:
    if n <= 0:
        raise ValueError("need a positive integer")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = _SMALL_PRIMES[-1] + 2
    while p * p <= n and p < 10 ** 6:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    rng = random.Random(0x5EED)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack += [d, m // d]
    return out


def is_square_mod(a: int, n: FactoredInt) -> bool:
    """Whether a is a quadratic residue modulo n.value, via its prime powers.

    Requires gcd(a, n) = 1.
    """
    if math.gcd(a, n.value) != 1:
        raise ValueError("need gcd(a, n) = 1")
    for q, e in n.factors:
        if q == 2:
            if e == 1:
                continue
            if e == 2 and a % 4 != 1:
                return False
            if e >= 3 and a % 8 != 1:
                return False
        elif legendre(a, q) != 1:
            return False
    return True
