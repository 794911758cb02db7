"""Exact integer arithmetic substrate.

Factorization, square-free parts, Kronecker symbols, deterministic
primality, quartic root counts modulo small primes, and primes in
arithmetic progressions.  Everything here is a pure function of its
arguments and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ConsistencyError, DomainError

# Trial division handles everything below this bound; composite
# cofactors above it go to the rho fallback.
_TRIAL_LIMIT = 1 << 20

# Witness schedule proven sufficient for n < 3.3 * 10^24 (covers 64-bit).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Fixed extended schedule for arbitrary-precision inputs: deterministic,
# reproducible, and far beyond the needs of desk-scale discriminants.
_MR_WITNESSES_BIG = _MR_WITNESSES + (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


@dataclass(frozen=True)
class Factorization:
    """Signed integer as sign * product(p_i ** e_i) with strictly increasing primes."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __mul__(self, other: "Factorization") -> "Factorization":
        if self.sign == 0 or other.sign == 0:
            return Factorization(0, ())
        exps: dict[int, int] = {}
        for p, e in self.factors + other.factors:
            exps[p] = exps.get(p, 0) + e
        return Factorization(self.sign * other.sign, tuple(sorted(exps.items())))

    def __str__(self) -> str:
        body = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        if self.sign == 0:
            return "0"
        if not body:
            body = "1"
        return "-" + body if self.sign < 0 else body

    @classmethod
    def from_exponents(cls, sign: int, exps: dict[int, int]) -> "Factorization":
        if sign == 0:
            return cls(0, ())
        items = []
        for p, e in sorted(exps.items()):
            if e < 0:
                raise ConsistencyError(f"negative exponent {e} at prime {p}")
            if e > 0:
                items.append((p, e))
        return cls(sign, tuple(items))


class SquarefreePart(NamedTuple):
    """n = value * cofactor**2 with value square-free."""

    value: int
    cofactor: int


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin with a fixed witness schedule."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    witnesses = _MR_WITNESSES if n.bit_length() <= 82 else _MR_WITNESSES_BIG
    for a in witnesses:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho_factor(n: int) -> int:
    """One non-trivial factor of odd composite n (Brent's cycle variant).

    Parameters are fixed and restarts are sequential, so the result is
    deterministic for a given n.
    """
    for c in range(1, 100):
        x = y = 2
        d = 1
        power = lam = 1
        while d == 1:
            if power == lam:
                y = x
                power <<= 1
                lam = 0
            x = (x * x + c) % n
            lam += 1
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ConsistencyError(f"rho failed to split {n}")


def factor(n: int) -> Factorization:
    """Factor a nonzero integer into sign and prime powers."""
    if n == 0:
        raise DomainError("factor(0) is undefined", code="E_PARAM_ZERO")
    sign = 1 if n > 0 else -1
    n = abs(n)
    exps: dict[int, int] = {}

    for p in (2, 3, 5):
        while n % p == 0:
            exps[p] = exps.get(p, 0) + 1
            n //= p
    # wheel over 6k+-1
    p = 7
    step = 4
    while p * p <= n and p < _TRIAL_LIMIT:
        while n % p == 0:
            exps[p] = exps.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                exps[m] = exps.get(m, 0) + 1
                continue
            root = math.isqrt(m)
            if root * root == m:
                stack.extend((root, root))
                continue
            d = _rho_factor(m)
            stack.extend((d, m // d))
    return Factorization(sign, tuple(sorted(exps.items())))


def squarefree_part(n: int) -> SquarefreePart:
    """Split n as value * cofactor**2 with value square-free."""
    if n == 0:
        raise DomainError("squarefree_part(0) is undefined", code="E_PARAM_ZERO")
    f = factor(n)
    value = f.sign
    cofactor = 1
    for p, e in f.factors:
        if e & 1:
            value *= p
        cofactor *= p ** (e >> 1)
    return SquarefreePart(value, cofactor)


def is_squarefree(n: int) -> bool:
    if n == 0:
        raise DomainError("is_squarefree(0) is undefined", code="E_PARAM_ZERO")
    return squarefree_part(n).cofactor == 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), completely multiplicative in both arguments."""
    if a == 0 and n == 0:
        raise DomainError("kronecker(0, 0) is undefined", code="E_PARAM_ZERO")
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        z = (n & -n).bit_length() - 1
        n >>= z
        if z & 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi loop on odd positive n
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def count_roots_mod_p(s: int, t: int, p: int) -> int:
    """Roots of X^4 - 2s(t^2+1)X^2 + s^2 t^2 (t^2+1) modulo an odd prime p.

    Counted without multiplicity by direct evaluation; p is capped at 10^6
    because only small auxiliary primes are ever needed.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"p = {p} is not an odd prime", precondition="p odd prime")
    if p >= 10**6:
        raise DomainError(f"p = {p} exceeds the 10^6 evaluation cap")
    m = t * t + 1
    c2 = (-2 * s * m) % p
    c0 = (s * s * t * t * m) % p
    count = 0
    for x in range(p):
        x2 = x * x % p
        if (x2 * (x2 + c2) + c0) % p == 0:
            count += 1
    return count


def primes_in_progression(start: int, modulus: int, residue: int, count: int) -> list[int]:
    """First `count` primes p >= start with p == residue (mod modulus), ascending."""
    if modulus < 1:
        raise DomainError(f"modulus {modulus} must be positive")
    if math.gcd(residue, modulus) != 1:
        raise DomainError(
            f"gcd({residue}, {modulus}) != 1: progression contains at most one prime",
            precondition="gcd(residue, modulus) = 1",
        )
    if count < 0:
        raise DomainError(f"count {count} must be nonnegative")
    found: list[int] = []
    n = max(start, 2)
    shift = (residue - n) % modulus
    n += shift
    while len(found) < count:
        if n >= 2 and is_prime(n):
            found.append(n)
        n += modulus
    return found
