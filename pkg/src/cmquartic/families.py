"""Family generators and verification reports.

Square-free sieves over t, regulator-target search, the two infinite
families of equal-invariant pairs (biquadratic and cyclic quartic), and
the zeta-residue cross-check.  Pair generation is embarrassingly
parallel over primes; output order is always ascending in p regardless
of worker count.
"""

from __future__ import annotations

import concurrent.futures
import math
from dataclasses import dataclass

import mpmath

from .arith import Factorization, is_prime, is_squarefree, primes_in_progression
from . import biquadratic as bq
from . import cyclic_quartic as cq
from . import quadratic
from .biquadratic import FieldInvariants
from .errors import ConsistencyError, DomainError
from .precision import GUARD_BITS, HighPrecReal, check_precision_bits, hp_from_value, workprec


@dataclass(frozen=True)
class SieveReport:
    t_values: tuple[int, ...]
    residue_class: int
    t_min: int
    t_max: int


@dataclass(frozen=True)
class PairReport:
    kind: str  # "biquadratic" | "cyclic"
    t: int
    p: int
    field_a: str
    field_b: str
    distinct: bool
    disc_equal: bool
    disc: Factorization
    regulator: HighPrecReal
    reg_equal: bool
    class_a: int | None = None
    class_b: int | None = None
    residue_a: HighPrecReal | None = None
    residue_b: HighPrecReal | None = None

    def all_flags_true(self) -> bool:
        return self.distinct and self.disc_equal and self.reg_equal


@dataclass(frozen=True)
class FamilyReport:
    kind: str
    t: int
    fields: tuple[str, ...]
    primes: tuple[int, ...]
    regulator: HighPrecReal


def sieve_t(t_min: int, t_max: int, residue: int) -> SieveReport:
    """All t in [t_min, t_max] with t = residue (mod 8) and t^2+1 square-free."""
    if residue not in (3, 5):
        raise DomainError(f"residue {residue} must be 3 or 5", code="E_T_INADMISSIBLE")
    if t_min < 1:
        raise DomainError(f"t_min {t_min} must be >= 1")
    hits = [t for t in range(t_min + (residue - t_min) % 8, t_max + 1, 8)
            if is_squarefree(t * t + 1)]
    return SieveReport(tuple(hits), residue, t_min, t_max)


# the quadratic whose square-free values feed the residue-5 sieve:
# (8k+5)^2 + 1 = 2 * (32k^2 + 40k + 13)
_SIEVE_POLY = (32, 40, 13)


def nagell_precondition_check() -> bool:
    """Checks that the sieve quadratic admits infinitely many square-free values.

    Verifies: irreducible over Q (negative discriminant), no multiple
    roots, primitive coefficients, and for every prime p <= 100 a
    witness k with p^2 not dividing g(k).  Failure of any check is an
    internal error, never a return value.
    """
    a, b, c = _SIEVE_POLY
    disc = b * b - 4 * a * c
    if disc >= 0 and math.isqrt(disc) ** 2 == disc:
        raise ConsistencyError("sieve quadratic has a rational root")
    if disc == 0:
        raise ConsistencyError("sieve quadratic has a multiple root")
    if math.gcd(math.gcd(a, b), c) != 1:
        raise ConsistencyError("sieve quadratic is not primitive")
    for p in range(2, 101):
        if not is_prime(p):
            continue
        p2 = p * p
        for k in range(1, 10**4 + 1):
            if ((a * k + b) * k + c) % p2:
                break
        else:
            raise ConsistencyError(f"no square-free witness for p = {p}")
    return True


def regulator_target(M: float, residue: int, precision_bits: int = 128) -> tuple[int, HighPrecReal]:
    """Smallest sieve-admissible t with t > e^M; returns (t, log(t + sqrt(t^2+1)))."""
    if M <= 0:
        raise DomainError(f"M = {M} must be positive", precondition="M > 0")
    if residue not in (3, 5):
        raise DomainError(f"residue {residue} must be 3 or 5", code="E_T_INADMISSIBLE")
    check_precision_bits(precision_bits)
    with workprec(precision_bits):
        bound = mpmath.e**mpmath.mpf(M)
    t = residue
    while t <= bound or not is_squarefree(t * t + 1):
        t += 8
    reg = quadratic.regulator(quadratic.quadratic_field(t * t + 1), precision_bits)
    if not reg.value > M:
        raise ConsistencyError(f"regulator target missed: {reg.value} <= {M}")
    return t, reg


def _require_admissible_t(t: int) -> None:
    if t % 8 not in (3, 5):
        raise DomainError(
            f"t = {t} is not 3 or 5 (mod 8)", code="E_T_INADMISSIBLE",
            precondition="t = 3 or 5 (mod 8)")
    if not is_squarefree(t * t + 1):
        raise DomainError(
            f"t = {t} has t^2+1 = {t * t + 1} not square-free", code="E_T_INADMISSIBLE",
            precondition="t^2+1 square-free")


def biquadratic_pair_report(t: int, p: int, precision_bits: int = 128,
                            with_class_number: bool = False) -> PairReport:
    """Verified report for the pair (B(-p, t^2+1), B(-2p, t^2+1))."""
    _require_admissible_t(t)
    m = t * t + 1
    if not is_prime(p) or p <= m or p % 4 != 1:
        raise DomainError(
            f"p = {p} is inadmissible for t = {t}: need a prime > {m} with p = 1 (mod 4)",
            code="E_PRIME_INADMISSIBLE")
    Ka = bq.biquadratic(-p, m)
    Kb = bq.biquadratic(-2 * p, m)
    disc_a = bq.discriminant(Ka)
    disc_b = bq.discriminant(Kb)
    reg_a = bq.regulator(Ka, precision_bits)
    reg_b = bq.regulator(Kb, precision_bits)
    class_a = class_b = residue_a = residue_b = None
    if with_class_number:
        class_a = bq.class_number(Ka)
        class_b = bq.class_number(Kb)
        residue_a = dedekind_residue(bq.field_invariants(Ka, precision_bits, True), precision_bits)
        residue_b = dedekind_residue(bq.field_invariants(Kb, precision_bits, True), precision_bits)
    return PairReport(
        kind="biquadratic", t=t, p=p,
        field_a=Ka.label(), field_b=Kb.label(),
        distinct=Ka.radicands != Kb.radicands,
        disc_equal=disc_a == disc_b,
        disc=disc_a,
        regulator=reg_a,
        reg_equal=reg_a.value == reg_b.value,
        class_a=class_a, class_b=class_b,
        residue_a=residue_a, residue_b=residue_b,
    )


def cyclic_pair_report(t: int, p: int, precision_bits: int = 128,
                       with_class_number: bool = False,
                       prime_budget: int = 200) -> PairReport:
    """Verified report for the pair (K(-p, t), K(-2p, t))."""
    _require_admissible_t(t)
    m = t * t + 1
    if not is_prime(p) or p <= m or p == 2:
        raise DomainError(
            f"p = {p} is inadmissible for t = {t}: need an odd prime > {m}",
            code="E_PRIME_INADMISSIBLE")
    disc_a = cq.discriminant(-p, t)
    disc_b = cq.discriminant(-2 * p, t)
    reg_a = cq.regulator(-p, t, precision_bits)
    reg_b = cq.regulator(-2 * p, t, precision_bits)
    class_a = class_b = residue_a = residue_b = None
    if with_class_number:
        class_a = cq.class_number(-p, t, prime_budget)
        class_b = cq.class_number(-2 * p, t, prime_budget)
        residue_a = dedekind_residue(
            cq.field_invariants(-p, t, precision_bits, True, prime_budget), precision_bits)
        residue_b = dedekind_residue(
            cq.field_invariants(-2 * p, t, precision_bits, True, prime_budget), precision_bits)
    return PairReport(
        kind="cyclic", t=t, p=p,
        field_a=cq.CyclicQuarticField(-p, t).label(),
        field_b=cq.CyclicQuarticField(-2 * p, t).label(),
        distinct=not cq.same_field(-p, -2 * p, t),
        disc_equal=disc_a == disc_b,
        disc=disc_a,
        regulator=reg_a,
        reg_equal=reg_a.value == reg_b.value,
        class_a=class_a, class_b=class_b,
        residue_a=residue_a, residue_b=residue_b,
    )


def _family_primes(kind: str, t: int, count: int) -> list[int]:
    m = t * t + 1
    if kind == "biquadratic":
        return primes_in_progression(m + 1, 4, 1, count)
    return primes_in_progression(m + 1, 2, 1, count)


def _pair_report(kind: str, t: int, p: int, precision_bits: int,
                 with_class_number: bool) -> PairReport:
    if kind == "biquadratic":
        return biquadratic_pair_report(t, p, precision_bits, with_class_number)
    return cyclic_pair_report(t, p, precision_bits, with_class_number)


def _family_reports(kind: str, t: int, count: int, precision_bits: int,
                    with_class_number: bool, jobs: int) -> list[PairReport]:
    _require_admissible_t(t)
    if count < 0:
        raise DomainError(f"count {count} must be nonnegative")
    primes = _family_primes(kind, t, count)
    if jobs > 1 and len(primes) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_pair_report, kind, t, p, precision_bits,
                                   with_class_number) for p in primes]
            return [f.result() for f in futures]
    return [_pair_report(kind, t, p, precision_bits, with_class_number) for p in primes]


def biquadratic_family(t: int, count: int, precision_bits: int = 128,
                       with_class_number: bool = False, jobs: int = 1) -> list[PairReport]:
    """First `count` pairs (B(-p, t^2+1), B(-2p, t^2+1)) over primes p = 1 (mod 4), p > t^2+1."""
    return _family_reports("biquadratic", t, count, precision_bits, with_class_number, jobs)


def cyclic_family(t: int, count: int, precision_bits: int = 128,
                  with_class_number: bool = False, jobs: int = 1) -> list[PairReport]:
    """First `count` pairs (K(-p, t), K(-2p, t)) over odd primes p > t^2+1."""
    return _family_reports("cyclic", t, count, precision_bits, with_class_number, jobs)


def same_regulator_family(kind: str, t: int, count: int,
                          precision_bits: int = 128) -> FamilyReport:
    """`count` pairwise-distinct fields sharing the single regulator 2*log(t + sqrt(t^2+1))."""
    _require_admissible_t(t)
    if kind not in ("biquadratic", "cyclic"):
        raise DomainError(f"unknown family kind {kind!r}")
    primes = _family_primes(kind, t, count)
    m = t * t + 1
    reg = quadratic.regulator(quadratic.quadratic_field(m), precision_bits).scaled(2, 1)
    labels: list[str] = []
    if kind == "biquadratic":
        seen_sets = set()
        for p in primes:
            K = bq.biquadratic(-p, m)
            if K.radicands in seen_sets:
                raise ConsistencyError(f"duplicate field in family at p = {p}")
            seen_sets.add(K.radicands)
            if bq.hasse_Q(K) != 1:
                raise ConsistencyError(f"unexpected unresolved Hasse index at p = {p}")
            labels.append(K.label())
    else:
        seen_discs = set()
        for p in primes:
            d = cq.discriminant(-p, t).value()
            if d in seen_discs:
                raise ConsistencyError(f"duplicate discriminant in family at p = {p}")
            seen_discs.add(d)
            if cq.hasse_Q(-p, t) != 1:
                raise ConsistencyError(f"unexpected unresolved Hasse index at p = {p}")
            labels.append(cq.CyclicQuarticField(-p, t).label())
    return FamilyReport(kind=kind, t=t, fields=tuple(labels),
                        primes=tuple(primes), regulator=reg)


def dedekind_residue(inv: FieldInvariants, precision_bits: int = 128) -> HighPrecReal:
    """Residue of the zeta function at 1: 2^r1 (2 pi)^r2 h reg / (w sqrt|disc|)."""
    check_precision_bits(precision_bits)
    if inv.class_number is None:
        raise DomainError("class number unresolved: residue not computable",
                          code="E_UNRESOLVED")
    if inv.hasse_q is None:
        raise DomainError("Hasse index unresolved: residue not computable",
                          code="E_Q_UNRESOLVED")
    with workprec(precision_bits):
        num = (mpmath.mpf(2) ** inv.r1 * (2 * mpmath.pi) ** inv.r2
               * inv.class_number * inv.regulator.value)
        val = num / (inv.roots_of_unity * mpmath.sqrt(abs(inv.disc.value())))
    return hp_from_value(val, precision_bits)
