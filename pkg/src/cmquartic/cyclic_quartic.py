"""Cyclic quartic fields K(s,t) defined by X^4 - 2s(t^2+1)X^2 + s^2 t^2 (t^2+1).

For nonzero integers s, t this polynomial is irreducible with cyclic
Galois group; the field is totally real for s > 0 and CM for s < 0.
The module provides the cyclicity certificate, the square-free-part
field-equality test, the exact discriminant under explicit congruence
conditions, regulators through the real quadratic subfield, and class
numbers through an order-4 character and its generalized Bernoulli
numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    Factorization,
    count_roots_mod_p,
    factor,
    is_prime,
    kronecker,
    squarefree_part,
)
from .dirichlet import (
    DirichletCharacter,
    GaussianRational,
    bernoulli_B1,
    characters_of_order_dividing_4,
)
from .errors import AmbiguityError, ConsistencyError, DomainError
from .precision import HighPrecReal
from . import quadratic
from .quadratic import QuadraticField, quadratic_field


@dataclass(frozen=True)
class CyclicQuarticField:
    """Parameter pair (s, t); the field is generated by sqrt(s(t^2+1) + s*sqrt(t^2+1))."""

    s: int
    t: int

    def __post_init__(self):
        if self.s == 0 or self.t == 0:
            raise DomainError(f"parameters (s, t) = ({self.s}, {self.t}) must be nonzero",
                              code="E_PARAM_ZERO")

    def label(self) -> str:
        return f"K({self.s},{self.t})"


@dataclass(frozen=True)
class CyclicityCertificate:
    """Witnesses that the defining polynomial generates a cyclic quartic field.

    The constant term b is not a rational square (its square-free core
    exceeds 1), a^2 - 4b is not one either, and b(a^2 - 4b) is the exact
    square of `product_root`.
    """

    a: int
    b: int
    b_squarefree_core: int
    shifted_disc: int
    product_root: int


def defining_polynomial(s: int, t: int) -> tuple[int, int, int, int, int]:
    """Coefficients (1, 0, -2s(t^2+1), 0, s^2 t^2 (t^2+1))."""
    _require_nonzero(s, t)
    m = t * t + 1
    return (1, 0, -2 * s * m, 0, s * s * t * t * m)


def _require_nonzero(s: int, t: int) -> None:
    if s == 0 or t == 0:
        raise DomainError(f"parameters (s, t) = ({s}, {t}) must be nonzero",
                          code="E_PARAM_ZERO")


def cyclicity_certificate(s: int, t: int) -> CyclicityCertificate:
    _require_nonzero(s, t)
    m = t * t + 1
    a = -2 * s * m
    b = s * s * t * t * m
    core = squarefree_part(m).value
    if core == 1:
        raise ConsistencyError(f"t^2+1 = {m} is a perfect square with t != 0")
    shifted = a * a - 4 * b  # = 4 s^2 (t^2 + 1), never a square
    root = 2 * s * s * abs(t) * m
    if root * root != b * shifted:
        raise ConsistencyError(f"b(a^2-4b) is not the expected square for ({s}, {t})")
    return CyclicityCertificate(a=a, b=b, b_squarefree_core=core,
                                shifted_disc=shifted, product_root=root)


def same_field(s: int, s2: int, t: int) -> bool:
    """Equality of K(s,t) and K(s2,t): s*s2 is a square, or its core matches t^2+1."""
    if s == 0 or s2 == 0 or t == 0:
        raise DomainError("parameters must be nonzero", code="E_PARAM_ZERO")
    core = squarefree_part(s * s2).value
    return core == 1 or core == squarefree_part(t * t + 1).value


def two_adic_distinctness(t: int) -> bool:
    """True when t^2+1 is not twice a square (guaranteed for t = 3, 5 mod 8)."""
    if t == 0:
        raise DomainError("t must be nonzero", code="E_PARAM_ZERO")
    return squarefree_part(t * t + 1).value != 2


def _split_radical(t: int) -> tuple[int, int, int]:
    """t^2+1 = x^4 n^2 m with m, n square-free: returns (m, n, x)."""
    m, y = squarefree_part(t * t + 1)
    n, x = squarefree_part(y)
    return m, n, x


def hsw_discriminant(a: int, b: int, c: int) -> Factorization:
    """Discriminant 2^8 gcd(a,b)^2 c^3 / gcd(a,b,c)^2 of Q(sqrt(a + b sqrt(c))).

    Valid when c and gcd(a,b) are square-free and the inputs satisfy one
    of the two congruence patterns below; anything else is rejected.
    """
    cond_a = a % 8 == 4 and b % 4 == 2 and c % 8 == 2
    cond_b = a % 4 == 2 and b % 2 == 1 and c % 8 == 2
    if not (cond_a or cond_b):
        raise DomainError(
            f"(a, b, c) = ({a}, {b}, {c}) satisfies neither congruence condition "
            "(a): a=4 mod 8, b=2 mod 4, c=2 mod 8, nor (b): a=2 mod 4, b odd, c=2 mod 8",
            precondition="condition (a) or (b)",
        )
    if squarefree_part(c).cofactor != 1:
        raise DomainError(f"c = {c} is not square-free", precondition="c square-free")
    g1 = math.gcd(a, b)
    if squarefree_part(g1).cofactor != 1:
        raise DomainError(f"gcd(a, b) = {g1} is not square-free",
                          precondition="gcd(a, b) square-free")
    g2 = math.gcd(g1, c)
    exps: dict[int, int] = {2: 8}
    sign = 1
    for f, mult in ((factor(g1), 2), (factor(c), 3)):
        sign *= f.sign**mult
        for p, e in f.factors:
            exps[p] = exps.get(p, 0) + mult * e
    for p, e in factor(g2).factors:
        exps[p] = exps.get(p, 0) - 2 * e
    return Factorization.from_exponents(sign, exps)


def _discriminant_parameters(s: int, t: int) -> tuple[int, int, int, int, int]:
    """Validated (s, m, n, x, two_exp) for the discriminant formula."""
    _require_nonzero(s, t)
    if t % 2 == 0:
        raise DomainError(
            f"t = {t} is even: the radical form violates congruence condition (a)/(b) "
            "(c = 2 mod 8 requires t odd)", code="E_T_INADMISSIBLE",
            precondition="t odd")
    two_exp = 0
    s_odd = s
    while s_odd % 2 == 0:
        s_odd //= 2
        two_exp += 1
    if two_exp > 1 or squarefree_part(s_odd).cofactor != 1:
        raise DomainError(f"s = {s} is not square-free (nor twice a square-free odd number)",
                          precondition="s square-free")
    m_full = t * t + 1
    if math.gcd(abs(s_odd), m_full) != 1:
        raise DomainError(f"gcd({s_odd}, t^2+1 = {m_full}) > 1",
                          precondition="gcd(s, t^2+1) = 1")
    m, n, x = _split_radical(t)
    return s, m, n, x, two_exp


def discriminant(s: int, t: int) -> Factorization:
    """Field discriminant 2^8 s0^2 n^2 m^3 / gcd(m, n)^2, via the radical form.

    Accepts s square-free or 2 * (odd square-free): doubling s does not
    change the discriminant, so all four of K(+-s, t), K(+-2s, t) agree.
    """
    s_in, m, n, x, _ = _discriminant_parameters(s, t)
    # radical form sqrt(a + b sqrt(c)) with a = s x^2 n^2 m, b = s n, c = m
    return hsw_discriminant(s_in * x * x * n * n * m, s_in * n, m)


def maximal_real_subfield(s: int, t: int) -> QuadraticField:
    _require_nonzero(s, t)
    if s > 0:
        raise DomainError(f"K({s},{t}) is totally real: the maximal real subfield is "
                          "the field itself", precondition="s < 0")
    return quadratic_field(squarefree_part(t * t + 1).value)


def hasse_Q(s: int, t: int) -> int | None:
    """1 when disc(K)/disc(K+)^2 does not divide 16; None when unresolved."""
    disc = discriminant(s, t)
    kp = maximal_real_subfield(s, t)
    ratio, rem = divmod(disc.value(), kp.fund_disc**2)
    if rem:
        raise ConsistencyError(f"disc(K+)^2 does not divide disc(K) for K({s},{t})")
    return 1 if 16 % ratio else None


def regulator(s: int, t: int, precision_bits: int = 128) -> HighPrecReal:
    """2 * reg(K+) / Q for the imaginary members of the family."""
    q = hasse_Q(s, t)
    if q is None:
        raise DomainError(f"Hasse index of K({s},{t}) is unresolved",
                          code="E_Q_UNRESOLVED")
    kp = maximal_real_subfield(s, t)
    return quadratic.regulator(kp, precision_bits).scaled(2, q)


def _conductor_of_quartic_character(s: int, t: int) -> int:
    disc_val = discriminant(s, t).value()
    dplus = maximal_real_subfield(s, t).fund_disc
    ratio, rem = divmod(disc_val, dplus)
    if rem:
        raise ConsistencyError(f"disc(K+) does not divide disc(K) for K({s},{t})")
    f = math.isqrt(ratio)
    if f * f != ratio:
        raise ConsistencyError(f"disc(K)/disc(K+) is not a square for K({s},{t})")
    return f


def associated_quartic_character(s: int, t: int, prime_budget: int = 200) -> DirichletCharacter:
    """The order-4 character cutting out K(s,t), up to complex conjugation.

    Candidates are the odd primitive order-4 characters modulo
    f = sqrt(disc(K)/disc(K+)) whose square is the quadratic character of
    disc(K+); the survivors are filtered by comparing chi(p) = 1 against
    full root counts of the defining polynomial modulo test primes.
    Both conjugates yield identical downstream values, so the one with
    the lexicographically smaller exponent vector is returned.
    """
    fchi = _conductor_of_quartic_character(s, t)
    dplus = maximal_real_subfield(s, t).fund_disc
    cands = [chi for chi in characters_of_order_dividing_4(fchi)
             if chi.order == 4 and chi.is_odd()
             and chi.squares_to_kronecker(dplus)
             and chi.conductor() == fchi]
    m = t * t + 1
    excluded = 2 * abs(s) * abs(t) * m * fchi
    for p in range(3, prime_budget + 1, 2):
        if excluded % p == 0 or not is_prime(p):
            continue
        splits = count_roots_mod_p(s, t, p) == 4
        cands = [chi for chi in cands if (chi.value_exponent(p) == 0) == splits]
        if len(cands) < 2:
            break
    pair = {c.exponents for c in cands}
    if len(cands) != 2 or cands[0].conjugate().exponents not in pair:
        raise AmbiguityError(
            f"character selection for K({s},{t}) left {len(cands)} candidates; "
            f"increase prime_budget (currently {prime_budget})")
    return min(cands, key=lambda c: c.exponents)


def relative_class_number(chi: DirichletCharacter, Q: int, w: int) -> int:
    """h^- = Q * w * B1(chi) * B1(conj chi) / 4, verified to be a positive integer."""
    if Q not in (1, 2):
        raise DomainError(f"Q must be 1 or 2, got {Q}")
    if chi.order != 4 or not chi.is_odd():
        raise DomainError("chi must be an odd character of order 4",
                          precondition="chi odd, order 4")
    b1 = bernoulli_B1(chi)
    prod = b1 * b1.conjugate()
    if prod.im != 0:
        raise ConsistencyError("B1 * conj(B1) is not real")
    h = Fraction(Q * w, 4) * prod.re
    if h.denominator != 1 or h <= 0:
        raise ConsistencyError(
            f"relative class number {h} is not a positive integer "
            f"(wrong character, Q or w)")
    return int(h)


def class_number(s: int, t: int, prime_budget: int = 200) -> int:
    """h(K) = h^- * h(K+); exact throughout.

    On the supported domain t is odd, so the quadratic subfield radicand
    is even: the field contains no 5th, 8th or 12th roots of unity and
    w = 2 is forced.
    """
    chi = associated_quartic_character(s, t, prime_budget)
    q = hasse_Q(s, t)
    if q is None:
        raise DomainError(f"Hasse index of K({s},{t}) is unresolved",
                          code="E_Q_UNRESOLVED")
    h_minus = relative_class_number(chi, q, 2)
    kp = maximal_real_subfield(s, t)
    return h_minus * quadratic.class_number_real(kp.fund_disc)


def field_invariants(s: int, t: int, precision_bits: int = 128,
                     with_class_number: bool = False,
                     prime_budget: int = 200):
    from .biquadratic import FieldInvariants

    h = class_number(s, t, prime_budget) if with_class_number else None
    return FieldInvariants(
        disc=discriminant(s, t),
        regulator=regulator(s, t, precision_bits),
        hasse_q=hasse_Q(s, t),
        roots_of_unity=2,
        class_number=h,
        r1=0,
        r2=2,
    )
