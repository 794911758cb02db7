"""Invariants of quadratic fields Q(sqrt(m)).

Fundamental discriminants, exact class numbers through reduced binary
quadratic forms, fundamental units through the continued-fraction (PQa)
expansion, regulators, and an independent analytic class number oracle.
Shipped values always come from the exact combinatorial routes; the
analytic formula exists purely as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .arith import is_squarefree, kronecker, squarefree_part
from .errors import ConsistencyError, DomainError, PrecisionError
from .precision import HighPrecReal, check_precision_bits, hp_from_value, workprec


@dataclass(frozen=True)
class QuadraticField:
    """Square-free radicand plus the fundamental discriminant it induces."""

    radicand: int
    fund_disc: int

    def label(self) -> str:
        return f"Q(sqrt({self.radicand}))"


@dataclass(frozen=True)
class QuadraticUnit:
    """Fundamental unit (x + y*sqrt(radicand))/denom > 1 of the maximal order."""

    x: int
    y: int
    denom: int
    radicand: int
    norm: int

    def embed(self) -> mpf:
        return (self.x + self.y * mpmath.sqrt(self.radicand)) / self.denom


@dataclass(frozen=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1


def quadratic_field(m: int) -> QuadraticField:
    """Field of sqrt(m); the radicand is normalized to its square-free part."""
    if m in (0, 1):
        raise DomainError(f"m = {m} does not define a quadratic field", code="E_PARAM_ZERO")
    r = squarefree_part(m).value
    d = r if r % 4 == 1 else 4 * r
    return QuadraticField(radicand=r, fund_disc=d)


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1 or D == 0:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def _require_fundamental(D: int) -> None:
    if not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a fundamental discriminant",
                          precondition="D fundamental")


def class_number_imaginary(D: int) -> int:
    """Count reduced primitive positive-definite forms of discriminant D < 0."""
    if D >= 0:
        raise DomainError(f"D = {D} is not negative", precondition="D < 0")
    _require_fundamental(D)
    h = 0
    b = D & 1
    while 3 * b * b <= -D:
        ac = (b * b - D) // 4
        a = max(b, 1)
        while a * a <= ac:
            if ac % a == 0:
                c = ac // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    # (a, 0, c), (a, a, c) and (a, b, a) count once; others pair with -b
                    h += 1 if (b == 0 or b == a or a == c) else 2
            a += 1
        b += 2
    return h


def _reduced_indefinite_forms(D: int) -> set[tuple[int, int, int]]:
    """All reduced primitive indefinite forms: 0 < b < sqrt(D) < b + 2|a| and 2|a| < sqrt(D) + b."""
    s = math.isqrt(D)
    forms: set[tuple[int, int, int]] = set()
    for b in range(1, s + 1):
        if (D - b) % 2:
            continue
        ac = (b * b - D) // 4  # negative
        mag = -ac
        d = 1
        while d * d <= mag:
            if mag % d == 0:
                for aa in (d, mag // d):
                    # sqrt(D) - b < 2*aa < sqrt(D) + b, decided exactly
                    if D >= (2 * aa + b) ** 2:
                        continue
                    if 2 * aa - b >= 0 and (2 * aa - b) ** 2 >= D:
                        continue
                    for a in (aa, -aa):
                        c = ac // a
                        if math.gcd(math.gcd(a, b), c) == 1:
                            forms.add((a, b, c))
            d += 1
    return forms


def _rho_step(form: tuple[int, int, int], D: int, s: int) -> tuple[int, int, int]:
    """Reduction step on reduced indefinite forms: (a,b,c) -> (c,b',c')."""
    _, b, c = form
    twoc = 2 * abs(c)
    b2 = s - (s - (-b) % twoc) % twoc
    c2 = (b2 * b2 - D) // (4 * c)
    return (c, b2, c2)


def narrow_class_number_real(D: int) -> int:
    """Number of cycles of reduced indefinite forms of discriminant D > 0."""
    if D <= 0:
        raise DomainError(f"D = {D} is not positive", precondition="D > 0")
    _require_fundamental(D)
    forms = _reduced_indefinite_forms(D)
    s = math.isqrt(D)
    seen: set[tuple[int, int, int]] = set()
    cycles = 0
    for start in forms:
        if start in seen:
            continue
        cycles += 1
        g = start
        while g not in seen:
            seen.add(g)
            g = _rho_step(g, D, s)
            if g not in forms:
                raise ConsistencyError(f"reduction left the reduced set at {g} (D={D})")
    return cycles


def _floor_quotient(P: int, Q: int, sq: int) -> int:
    """floor((P + sqrt(m)) / Q) given sq = isqrt(m), exact for irrational sqrt(m)."""
    if Q > 0:
        return (P + sq) // Q
    return (P + sq + 1) // Q


def fundamental_unit(field: QuadraticField) -> QuadraticUnit:
    """Fundamental unit > 1 of the maximal order, by the PQa expansion.

    Expands sqrt(m) (m = 2, 3 mod 4) or (1 + sqrt(m))/2 (m = 1 mod 4);
    the first repeated (P, Q) state closes the periodic part, and the
    convergents of one period give the unit.
    """
    m = field.radicand
    if m <= 1:
        raise DomainError(f"radicand {m} has no fundamental unit",
                          precondition="radicand > 1")
    sq = math.isqrt(m)
    P, Q = (1, 2) if m % 4 == 1 else (0, 1)
    seen: dict[tuple[int, int], int] = {}
    partials: list[int] = []
    states: list[tuple[int, int]] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(partials)
        a = _floor_quotient(P, Q, sq)
        partials.append(a)
        states.append((P, Q))
        P = a * Q - P
        Q = (m - P * P) // Q
    j = seen[(P, Q)]
    Pj, Qj = states[j]
    # convergent matrix of the periodic word; beta = q1*alpha_j + q0 is the unit
    p1, p0 = 1, 0
    q1, q0 = 0, 1
    for a in partials[j:]:
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1
    num_rat = q1 * Pj + q0 * Qj
    x2, r1 = divmod(2 * num_rat, Qj)
    y2, r2 = divmod(2 * q1, Qj)
    if r1 or r2:
        raise ConsistencyError(f"unit for m={m} is not an algebraic integer")
    if x2 % 2 == 0 and y2 % 2 == 0:
        x, y, denom = x2 // 2, y2 // 2, 1
    else:
        x, y, denom = x2, y2, 2
    norm_scaled = x * x - m * y * y
    denom2 = denom * denom
    if norm_scaled not in (denom2, -denom2):
        raise ConsistencyError(f"unit identity failed for m={m}: {x},{y},{denom}")
    return QuadraticUnit(x=x, y=y, denom=denom, radicand=m,
                         norm=1 if norm_scaled > 0 else -1)


def class_number_real(D: int) -> int:
    """Wide class number: the narrow count, halved when the unit norm is +1."""
    narrow = narrow_class_number_real(D)
    m = D if D % 4 == 1 else D // 4
    unit = fundamental_unit(QuadraticField(m, D))
    if unit.norm == -1:
        return narrow
    if narrow % 2:
        raise ConsistencyError(f"odd narrow class number {narrow} with unit norm +1 (D={D})")
    return narrow // 2


def regulator(field: QuadraticField, precision_bits: int = 128) -> HighPrecReal:
    """log of the fundamental unit, with a stated error bound."""
    check_precision_bits(precision_bits)
    unit = fundamental_unit(field)
    with workprec(precision_bits):
        val = mpmath.log((unit.x + unit.y * mpmath.sqrt(unit.radicand)) / unit.denom)
    return hp_from_value(val, precision_bits)


def analytic_class_number_oracle(D: int, precision_bits: int = 64) -> int:
    """Class number by the analytic formula; independent of the form counts.

    Negative D uses the exact weighted character sum; positive D sums
    -kron(D,a)*log sin(pi a / D) and divides by twice the regulator.
    The rounding residual must stay within 0.4, with up to 4 automatic
    precision doublings before giving up.
    """
    _require_fundamental(D)
    if abs(D) > 10**6:
        raise DomainError(f"|D| = {abs(D)} exceeds the oracle bound 10^6")
    chi = [kronecker(D, a) for a in range(abs(D))]
    for attempt in range(5):
        bits = precision_bits << attempt
        with workprec(bits):
            if D < 0:
                w = 6 if D == -3 else 4 if D == -4 else 2
                S = sum(a * chi[a] for a in range(1, -D))
                # L(1, chi) = -pi * S / |D|^(3/2); the 2*pi and sqrt|D| cancel to -w*S/(2|D|)
                approx = mpf(-w * S) / (2 * -D)
            else:
                reg = regulator(QuadraticField(D if D % 4 == 1 else D // 4, D), bits)
                total = mpf(0)
                pi_over_d = mpmath.pi / D
                for a in range(1, D):
                    if chi[a]:
                        total -= chi[a] * mpmath.log(mpmath.sin(pi_over_d * a))
                approx = total / (2 * reg.value)
            h = int(mpmath.nint(approx))
            residual = abs(approx - h)
            if residual <= mpf("0.4") and h >= 1:
                return h
    raise PrecisionError(f"analytic class number for D={D} did not settle "
                         f"(residual {float(residual):.3f})")
