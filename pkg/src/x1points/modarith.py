"""Exact arithmetic in Z/nZ: 2x2 matrices, column vectors, CRT, GL2/SL2 orders.

All values are immutable and reduced to the canonical range [0, n) on
construction, so equality and hashing are bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import ModulusMismatch, NonCoprimeModuli, NotInvertible

MAX_MODULUS = 2**63 - 1

# Raw representations used in hot loops: matrices are row-major 4-tuples
# (a, b, c, d), vectors are pairs (x, y).
MatTuple = tuple[int, int, int, int]
VecTuple = tuple[int, int]


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, primes strictly increasing."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p = 3 if p == 2 else p + 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@dataclass(frozen=True)
class Modulus:
    n: int
    factorization: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_MODULUS:
            raise ValueError(f"modulus out of range [1, 2^63-1]: {self.n}")
        object.__setattr__(self, "factorization", factorize(self.n))

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factorization)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**e for p, e in self.factorization)

    def __repr__(self):
        return f"Modulus({self.n})"


@lru_cache(maxsize=None)
def modulus(n: int) -> Modulus:
    """Shared Modulus instance for n (factorization computed once)."""
    return Modulus(n)


@dataclass(frozen=True)
class Mat2ModN:
    modulus: Modulus
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        n = self.modulus.n
        s = object.__setattr__
        s(self, "a", self.a % n)
        s(self, "b", self.b % n)
        s(self, "c", self.c % n)
        s(self, "d", self.d % n)

    @property
    def entries(self) -> MatTuple:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.modulus.n}"


@dataclass(frozen=True)
class Vec2ModN:
    modulus: Modulus
    x: int
    y: int

    def __post_init__(self):
        n = self.modulus.n
        object.__setattr__(self, "x", self.x % n)
        object.__setattr__(self, "y", self.y % n)

    @property
    def entries(self) -> VecTuple:
        return (self.x, self.y)

    def __repr__(self):
        return f"({self.x},{self.y}) mod {self.modulus.n}"


def mat2(n: int, a: int, b: int, c: int, d: int) -> Mat2ModN:
    return Mat2ModN(modulus(n), a, b, c, d)


def vec2(n: int, x: int, y: int) -> Vec2ModN:
    return Vec2ModN(modulus(n), x, y)


def identity(n: int) -> Mat2ModN:
    return mat2(n, 1, 0, 0, 1)


def _same_modulus(a: Mat2ModN, b: Mat2ModN) -> int:
    if a.modulus.n != b.modulus.n:
        raise ModulusMismatch(f"moduli differ: {a.modulus.n} vs {b.modulus.n}")
    return a.modulus.n


def mul_raw(x: MatTuple, y: MatTuple, n: int) -> MatTuple:
    a, b, c, d = x
    e, f, g, h = y
    return (
        (a * e + b * g) % n,
        (a * f + b * h) % n,
        (c * e + d * g) % n,
        (c * f + d * h) % n,
    )


def inv_raw(x: MatTuple, n: int) -> MatTuple:
    a, b, c, d = x
    det = (a * d - b * c) % n
    if gcd(det, n) != 1:
        raise NotInvertible(f"det {det} is not a unit mod {n}")
    di = pow(det, -1, n)
    return ((d * di) % n, (-b * di) % n, (-c * di) % n, (a * di) % n)


def apply_raw(m: MatTuple, v: VecTuple, n: int) -> VecTuple:
    a, b, c, d = m
    x, y = v
    return ((a * x + b * y) % n, (c * x + d * y) % n)


def mat_mul(A: Mat2ModN, B: Mat2ModN) -> Mat2ModN:
    n = _same_modulus(A, B)
    return Mat2ModN(A.modulus, *mul_raw(A.entries, B.entries, n))


def mat_det(A: Mat2ModN) -> int:
    return (A.a * A.d - A.b * A.c) % A.modulus.n


def mat_inv(A: Mat2ModN) -> Mat2ModN:
    return Mat2ModN(A.modulus, *inv_raw(A.entries, A.modulus.n))


def mat_vec(A: Mat2ModN, v: Vec2ModN) -> Vec2ModN:
    if A.modulus.n != v.modulus.n:
        raise ModulusMismatch(f"moduli differ: {A.modulus.n} vs {v.modulus.n}")
    return Vec2ModN(A.modulus, *apply_raw(A.entries, v.entries, A.modulus.n))


def reduce_mat(A: Mat2ModN, m: int) -> Mat2ModN:
    if A.modulus.n % m != 0:
        raise ModulusMismatch(f"{m} does not divide {A.modulus.n}")
    return mat2(m, A.a, A.b, A.c, A.d)


def reduce_vec(v: Vec2ModN, m: int) -> Vec2ModN:
    if v.modulus.n % m != 0:
        raise ModulusMismatch(f"{m} does not divide {v.modulus.n}")
    return vec2(m, v.x, v.y)


def _check_coprime_cover(n: int, factors: tuple[int, ...]) -> None:
    prod = 1
    for f in factors:
        prod *= f
    if prod != n:
        raise NonCoprimeModuli(f"factors {factors} do not multiply to {n}")
    for i, f in enumerate(factors):
        for g in factors[i + 1 :]:
            if gcd(f, g) != 1:
                raise NonCoprimeModuli(f"factors {f} and {g} share a prime")


def crt_split(A: Mat2ModN, factors: tuple[int, ...] | None = None) -> tuple[Mat2ModN, ...]:
    """Split a matrix mod n into components mod pairwise-coprime factors of n.

    Default factors are the prime powers of the modulus.
    """
    n = A.modulus.n
    if factors is None:
        factors = A.modulus.prime_powers
    else:
        factors = tuple(factors)
    _check_coprime_cover(n, factors)
    return tuple(reduce_mat(A, f) for f in factors)


@lru_cache(maxsize=None)
def _crt_coefficients(moduli: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    n = 1
    for m in moduli:
        n *= m
    coeffs = []
    for m in moduli:
        rest = n // m
        coeffs.append(rest * pow(rest, -1, m))
    return n, tuple(coeffs)


def crt_scalar(residues: tuple[int, ...], moduli: tuple[int, ...]) -> int:
    n, coeffs = _crt_coefficients(moduli)
    return sum(r * c for r, c in zip(residues, coeffs)) % n


def crt_join(parts: tuple[Mat2ModN, ...]) -> Mat2ModN:
    """Inverse of crt_split: parts with pairwise coprime moduli join mod the product."""
    moduli = tuple(P.modulus.n for P in parts)
    n = 1
    for m in moduli:
        n *= m
    _check_coprime_cover(n, moduli)
    entries = [crt_scalar(tuple(P.entries[i] for P in parts), moduli) for i in range(4)]
    return mat2(n, *entries)


def crt_join_vec(parts: tuple[Vec2ModN, ...]) -> Vec2ModN:
    moduli = tuple(P.modulus.n for P in parts)
    n = 1
    for m in moduli:
        n *= m
    _check_coprime_cover(n, moduli)
    x = crt_scalar(tuple(P.x for P in parts), moduli)
    y = crt_scalar(tuple(P.y for P in parts), moduli)
    return vec2(n, x, y)


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


@lru_cache(maxsize=None)
def gl2_order(n: int) -> int:
    """#GL2(Z/nZ), multiplicative over prime powers."""
    out = 1
    for p, e in factorize(n):
        out *= p ** (4 * (e - 1)) * (p * p - 1) * (p * p - p)
    return out


@lru_cache(maxsize=None)
def sl2_order(n: int) -> int:
    """#SL2(Z/nZ) = #GL2(Z/nZ) / phi(n)."""
    return gl2_order(n) // euler_phi(n)


def vec_order(v: Vec2ModN) -> int:
    """Exact additive order of v in (Z/nZ)^2: n / gcd(n, x, y)."""
    n = v.modulus.n
    return n // gcd(n, gcd(v.x, v.y))


def unit_group_generators(n: int) -> list[int]:
    """A small generating set of (Z/nZ)^*, found greedily in increasing order."""
    if n <= 2:
        return []
    gens: list[int] = []
    span = {1}
    for u in range(2, n):
        if gcd(u, n) != 1 or u in span:
            continue
        gens.append(u)
        frontier = list(span)
        for s in frontier:
            x = (s * u) % n
            while x not in span:
                span.add(x)
                x = (x * u) % n
        if len(span) == euler_phi(n):
            break
    return gens
