"""Number-theoretic kernels: Hurwitz class numbers, Kronecker symbol, L(0, chi_D).

Class numbers are computed by direct enumeration of reduced positive-definite
integral binary quadratic forms, so the package carries no external tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import DomainError

_MINUS_ONE_TWELFTH = Fraction(-1, 12)

# cache of H(N) values, extended in bulk by _extend_class_numbers
_hurwitz_cache: dict[int, Fraction] = {0: _MINUS_ONE_TWELFTH}
_hurwitz_cache_max = 0


def _extend_class_numbers(nmax: int) -> None:
    """Enumerate reduced forms (a,b,c), |b| <= a <= c, of discriminant >= -nmax.

    A form with 0 < b < a < c is counted twice (both signs of b are reduced).
    Forms equivalent to a(x^2+y^2) weigh 1/2, to a(x^2+xy+y^2) weigh 1/3.
    """
    global _hurwitz_cache_max
    if nmax <= _hurwitz_cache_max:
        return
    counts: dict[int, Fraction] = {}
    a = 1
    while 3 * a * a <= nmax:
        for b in range(a + 1):
            c = a
            while True:
                n = 4 * a * c - b * b
                if n > nmax:
                    break
                if b == 0 and a == c:
                    w = Fraction(1, 2)
                elif a == b == c:
                    w = Fraction(1, 3)
                else:
                    w = Fraction(2) if 0 < b < a < c else Fraction(1)
                counts[n] = counts.get(n, Fraction(0)) + w
                c += 1
        a += 1
    for n in range(_hurwitz_cache_max + 1, nmax + 1):
        if n % 4 in (1, 2):
            continue
        _hurwitz_cache[n] = counts.get(n, Fraction(0))
    _hurwitz_cache_max = nmax


def hurwitz(n: int) -> Fraction:
    """Hurwitz class number H(n), with H(0) = -1/12 and H(n) = 0 for n = 1, 2 mod 4."""
    if n < 0:
        raise DomainError(f"H(n) needs n >= 0, got {n}")
    if n == 0:
        return _MINUS_ONE_TWELFTH
    if n % 4 in (1, 2):
        return Fraction(0)
    if n > _hurwitz_cache_max:
        _extend_class_numbers(max(n, 2 * _hurwitz_cache_max, 256))
    return _hurwitz_cache[n]


@dataclass(frozen=True)
class ClassNumberTable:
    """H(N) for 0 <= N <= max, as exact rationals."""

    max: int
    values: dict[int, Fraction]

    @classmethod
    def build(cls, nmax: int) -> "ClassNumberTable":
        if nmax < 0:
            raise DomainError("table bound must be nonnegative")
        _extend_class_numbers(nmax)
        return cls(max=nmax, values={n: hurwitz(n) for n in range(nmax + 1)})

    def rows(self):
        """(N, numerator, denominator) triples in increasing N."""
        for n in range(self.max + 1):
            v = self.values[n]
            yield n, v.numerator, v.denominator


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n), extended to all integers n.

    (d/0) is 1 for d = +-1 and 0 otherwise; (d/-1) is the sign character;
    (d/2) follows the mod-8 rule.
    """
    if n == 0:
        return 1 if d in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    # factor out twos
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol core by quadratic reciprocity
    d %= n
    while d != 0:
        while d % 2 == 0:
            d //= 2
            if n % 8 in (3, 5):
                result = -result
        d, n = n, d
        if d % 4 == 3 and n % 4 == 3:
            result = -result
        d %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    if d == 0 or d == 1:
        return False
    if d % 4 == 1:
        return _is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def l_zero_chi(d: int) -> Fraction:
    """L(0, (d/.)) for a fundamental discriminant d < 0, via the finite sum
    -(1/|d|) * sum_{a=1}^{|d|} (d/a) * a."""
    if d >= 0 or not is_fundamental_discriminant(d):
        raise DomainError(f"{d} is not a negative fundamental discriminant")
    total = sum(kronecker(d, a) * a for a in range(1, -d + 1))
    return Fraction(-total, -d)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError("divisors(n) needs n >= 1")
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def sigma(n: int, k: int) -> int:
    """Sum of k-th powers of the positive divisors of n."""
    return sum(d**k for d in divisors(n))


def moebius(n: int) -> int:
    if n < 1:
        raise DomainError("moebius(n) needs n >= 1")
    if n == 1:
        return 1
    m, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            m = -m
        else:
            p += 1
    return -m if n > 1 else m


def gcd3(a: int, b: int, c: int) -> int:
    return gcd(gcd(a, b), c)
