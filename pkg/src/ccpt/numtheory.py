"""Exact integer arithmetic used by every basis construction.

All functions are pure and operate on plain Python integers. Inputs are
capped at MAX_N so derived quantities (lcm of divisor sets, totient sums)
stay far inside exact integer range at the scales the transforms run at.
"""

import math
from dataclasses import dataclass

MAX_N = 1 << 16


def _check_positive(n: int, name: str = "n") -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n}")
    if n > MAX_N:
        raise ValueError(f"{name}={n} exceeds the supported cap {MAX_N}")
    return n


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two positive integers."""
    a = _check_positive(a, "a")
    b = _check_positive(b, "b")
    return math.gcd(a, b)


def lcm(values) -> int:
    """Least common multiple of a nonempty collection of positive integers."""
    values = [_check_positive(v, "period") for v in values]
    if not values:
        raise ValueError("empty period set: lcm needs at least one period")
    return math.lcm(*values)


def totient(n: int) -> int:
    """Euler's totient: count of 1 <= k <= n coprime to n.

    Computed from the trial-division factorization of n, exact in integers.
    """
    n = _check_positive(n)
    phi = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            phi = phi // p * (p - 1)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        phi = phi // m * (m - 1)
    return phi


def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n in ascending order."""
    n = _check_positive(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@dataclass(frozen=True)
class DivisorSet:
    """Ascending divisors of n; totients over the set sum to n."""

    n: int
    divisors: tuple[int, ...]

    def __iter__(self):
        return iter(self.divisors)

    def __len__(self):
        return len(self.divisors)


def divisor_set(n: int) -> DivisorSet:
    return DivisorSet(n=_check_positive(n), divisors=divisors(n))


@dataclass(frozen=True)
class CoprimeHalfSet:
    """Indices k in [1, n/2] coprime to n; {1} for n in {1, 2}.

    Each k names one conjugate pair of exponentials of exact period n,
    so the set has totient(n)/2 elements for n >= 3.
    """

    n: int
    residues: tuple[int, ...]

    def __iter__(self):
        return iter(self.residues)

    def __len__(self):
        return len(self.residues)

    def __contains__(self, k):
        return k in self.residues


def coprime_half_set(n: int) -> CoprimeHalfSet:
    n = _check_positive(n)
    if n <= 2:
        return CoprimeHalfSet(n=n, residues=(1,))
    residues = tuple(a for a in range(1, n // 2 + 1) if math.gcd(a, n) == 1)
    return CoprimeHalfSet(n=n, residues=residues)


def period_partition(n: int) -> dict[int, frozenset[int]]:
    """Group DFT bin indices 0..n-1 by the exact period of their exponential.

    Bin k has period d = n / gcd(k, n); the returned cells partition
    {0, ..., n-1} and the cell for d has exactly totient(d) members.
    """
    n = _check_positive(n)
    cells: dict[int, set[int]] = {d: set() for d in divisors(n)}
    for k in range(n):
        cells[n // math.gcd(k, n)].add(k)
    return {d: frozenset(ks) for d, ks in cells.items()}
