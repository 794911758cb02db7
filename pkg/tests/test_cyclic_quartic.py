import math

import mpmath
import pytest

from cmquartic.arith import count_roots_mod_p, factor, is_prime, is_squarefree, kronecker
from cmquartic.cyclic_quartic import (
    CyclicQuarticField,
    associated_quartic_character,
    class_number,
    cyclicity_certificate,
    defining_polynomial,
    discriminant,
    field_invariants,
    hasse_Q,
    hsw_discriminant,
    maximal_real_subfield,
    regulator,
    relative_class_number,
    same_field,
    two_adic_distinctness,
)
from cmquartic.dirichlet import DirichletCharacter
from cmquartic.errors import DomainError
from cmquartic.quadratic import class_number_real


def test_defining_polynomial():
    assert defining_polynomial(-3, 35) == (1, 0, 7356, 0, 9 * 1225 * 1226)
    assert defining_polynomial(1, 1) == (1, 0, -4, 0, 2)
    assert defining_polynomial(2, 3) == (1, 0, -40, 0, 360)
    with pytest.raises(DomainError):
        defining_polynomial(0, 1)
    with pytest.raises(DomainError):
        defining_polynomial(5, 0)


def test_cyclicity_certificate():
    cert = cyclicity_certificate(-3, 35)
    assert cert.b_squarefree_core == 1226
    assert cert.product_root == 2 * 9 * 35 * 1226
    assert cert.product_root**2 == cert.b * cert.shifted_disc
    cert = cyclicity_certificate(1, 1)
    assert cert.b_squarefree_core == 2
    assert cert.product_root == 4
    with pytest.raises(DomainError):
        cyclicity_certificate(5, 0)


def test_cyclicity_certificate_root_identity_sweep():
    for s in range(-10, 11):
        for t in range(1, 12):
            if s == 0:
                continue
            cert = cyclicity_certificate(s, t)
            assert cert.product_root**2 == cert.b * cert.shifted_disc
            assert cert.product_root == 2 * s * s * t * (t * t + 1)
            assert cert.b_squarefree_core > 1


def test_same_field_examples():
    assert same_field(5, 2, 3) is True
    assert same_field(-3, -6, 35) is False
    assert same_field(7, 28, 3) is True
    with pytest.raises(DomainError):
        same_field(0, 2, 3)


def test_distinctness_sweep():
    # doubling s never preserves the field when t = 3 or 5 (mod 8)
    for s in range(-1, -51, -1):
        if not is_squarefree(s):
            continue
        for t in (3, 5, 11, 13, 19, 21, 27, 29):
            assert same_field(s, 2 * s, t) is False, (s, t)


def test_two_adic_distinctness():
    assert two_adic_distinctness(35) is True
    assert two_adic_distinctness(7) is False  # 50 = 2 * 5^2
    assert two_adic_distinctness(5) is True
    for t in range(1, 300):
        if t % 8 in (3, 5):
            assert two_adic_distinctness(t) is True, t


def test_discriminant_examples():
    d = discriminant(-3, 35)
    assert d.factors == ((2, 11), (3, 2), (613, 3))
    assert discriminant(-6, 35) == d
    assert discriminant(1, 3).value() == 2**11 * 5**3
    assert discriminant(2, 3) == discriminant(1, 3)


def test_discriminant_degenerate_parameters():
    with pytest.raises(DomainError):
        discriminant(-3, 4)  # t even
    with pytest.raises(DomainError):
        discriminant(5, 3)  # gcd(5, 10) > 1
    with pytest.raises(DomainError):
        discriminant(9, 5)  # s not square-free
    with pytest.raises(DomainError):
        discriminant(12, 5)  # 4 | s
    with pytest.raises(DomainError):
        discriminant(0, 3)


def test_discriminant_pairing_sweep():
    for t in (3, 5, 11, 13):
        m = t * t + 1
        for s in range(1, 30):
            if not is_squarefree(s) or s % 2 == 0 or math.gcd(s, m) != 1:
                continue
            d = discriminant(s, t)
            assert discriminant(2 * s, t) == d
            assert discriminant(-s, t) == d
            assert discriminant(-2 * s, t) == d
            assert d.exponent(2) == 11
            for p, _ in factor(s).factors:
                if p != 2:
                    assert d.exponent(p) == 2, (s, t, p)
            for q in (3, 7, 11, 19, 23):
                if s % q and m % q:
                    assert d.exponent(q) == 0, (s, t, q)


def test_discriminant_shared_across_sign_and_doubling_at_primes():
    # real pair (p, 2p), imaginary pair (-p, -2p) and the mixed pair (p, -p)
    # all share one discriminant, over the first 20 admissible primes
    from cmquartic.arith import primes_in_progression

    for t in (3, 5):
        m = t * t + 1
        for p in primes_in_progression(m + 1, 2, 1, 20):
            d = discriminant(p, t)
            assert discriminant(2 * p, t) == d
            assert discriminant(-p, t) == d
            assert discriminant(-2 * p, t) == d
            assert d.exponent(p) == 2


def test_relative_class_number_against_digamma_L_values():
    # independent analytic route: L(1, chi) through digamma values,
    # h- = Q * w * f * |L|^2 / (4 pi^2), compared to the exact Bernoulli route
    for s, t in ((-11, 3), (-22, 3)):
        chi = associated_quartic_character(s, t)
        f = chi.modulus
        with mpmath.workprec(90):
            re = mpmath.mpf(0)
            im = mpmath.mpf(0)
            for a in range(1, f):
                k = chi.value_exponent(a)
                if k is None:
                    continue
                psi = mpmath.digamma(mpmath.mpf(a) / f)
                if k == 0:
                    re += psi
                elif k == 1:
                    im += psi
                elif k == 2:
                    re -= psi
                else:
                    im -= psi
            h_analytic = 2 * (re * re + im * im) / f / (4 * mpmath.pi**2)
            h_exact = relative_class_number(chi, 1, 2)
            assert abs(h_analytic - h_exact) < mpmath.mpf("1e-8"), (s, t)


def test_hsw_discriminant_examples():
    assert hsw_discriminant(-3 * 1226, -3, 1226).factors == ((2, 11), (3, 2), (613, 3))
    assert hsw_discriminant(-6 * 1226, -6, 1226).factors == ((2, 11), (3, 2), (613, 3))
    # literal formula: 2^8 * gcd(4,2)^2 * 2^3 / gcd(4,2,2)^2 = 2^11
    assert hsw_discriminant(4, 2, 2).value() == 2**11


def test_hsw_discriminant_rejects_bad_congruences():
    with pytest.raises(DomainError):
        hsw_discriminant(1, 1, 1)
    with pytest.raises(DomainError):
        hsw_discriminant(3, 5, 7)
    with pytest.raises(DomainError):
        hsw_discriminant(8, 2, 2)  # a = 0 mod 8 fails both conditions
    with pytest.raises(DomainError):
        hsw_discriminant(4, 2, 10 * 49)  # c not square-free


def test_maximal_real_subfield():
    assert maximal_real_subfield(-3, 35).radicand == 1226
    assert maximal_real_subfield(-21, 3).radicand == 10
    with pytest.raises(DomainError):
        maximal_real_subfield(4, 3)


def test_hasse_Q():
    assert hasse_Q(-3, 35) == 1
    assert hasse_Q(-6, 35) == 1
    assert hasse_Q(-1, 3) == 1
    # the ratio 2^4 s^2 n^2 m / gcd^2 is at least 32, so Q is always resolved
    for s, t in ((-1, 5), (-7, 3), (-11, 13), (-2, 5)):
        assert hasse_Q(s, t) == 1


def test_regulator_values():
    reg = regulator(-3, 35)
    with mpmath.workprec(150):
        ref = 2 * mpmath.log(35 + mpmath.sqrt(1226))
        assert abs(reg.value - ref) < mpmath.mpf(2) ** -120
        assert abs(reg.value - mpmath.mpf("8.4973985")) < mpmath.mpf("1e-6")
    assert regulator(-6, 35).value == reg.value
    reg5 = regulator(-5, 5)
    with mpmath.workprec(150):
        assert abs(reg5.value - 2 * mpmath.log(5 + mpmath.sqrt(26))) < mpmath.mpf(2) ** -120
    with pytest.raises(DomainError):
        regulator(3, 35)  # totally real


def test_associated_character_conductor():
    chi = associated_quartic_character(-3, 35)
    assert chi.modulus == 29424  # 2^4 * 3 * 613
    assert chi.order == 4
    assert chi.is_odd()
    assert chi.conductor() == 29424
    chi2 = associated_quartic_character(-1, 3)
    assert chi2.modulus == 80
    with pytest.raises(DomainError):
        associated_quartic_character(-2, 2)  # t even


def test_character_soundness_against_root_counts():
    for s, t in ((-3, 35), (-6, 35), (-1, 3)):
        chi = associated_quartic_character(s, t)
        m = t * t + 1
        dplus = maximal_real_subfield(s, t).fund_disc
        excluded = 2 * abs(s) * abs(t) * m * chi.modulus
        tested = 0
        p = 2
        while tested < 25:
            p += 1
            if not is_prime(p) or excluded % p == 0:
                continue
            tested += 1
            k = chi.value_exponent(p)
            nroots = count_roots_mod_p(s, t, p)
            assert (k == 0) == (nroots == 4), (s, t, p)
            if k == 2:
                assert nroots in (0, 2), (s, t, p)
            # chi^2 is the quadratic character of the real subfield
            assert kronecker(dplus, p) == (1 if k in (0, 2) else -1), (s, t, p)


def test_relative_class_number_cyclotomic():
    chi = DirichletCharacter(5, (1,))
    assert relative_class_number(chi, 1, 10) == 1
    with pytest.raises(DomainError):
        relative_class_number(chi, 3, 10)
    quadratic_chi = DirichletCharacter(4, (2,))
    with pytest.raises(DomainError):
        relative_class_number(quadratic_chi, 1, 2)


def test_class_number_example_pair():
    assert class_number(-3, 35) == 19400
    assert class_number(-6, 35) == 19400
    assert 19400 == 2**3 * 5**2 * 97
    # h = h_minus * h(K+): the real subfield contributes exactly h(4904) = 10
    assert class_number_real(4904) == 10
    chi = associated_quartic_character(-3, 35)
    assert relative_class_number(chi, 1, 2) == 1940


def test_class_number_small_member():
    h = class_number(-1, 3)
    assert h > 0
    assert h % class_number_real(40) == 0  # divisible by h(Q(sqrt(10))) = 2


def test_field_invariants_payload():
    inv = field_invariants(-3, 35, with_class_number=True)
    assert inv.class_number == 19400
    assert inv.hasse_q == 1
    assert inv.roots_of_unity == 2
    assert (inv.r1, inv.r2) == (0, 2)
    inv0 = field_invariants(-3, 35)
    assert inv0.class_number is None


def test_label():
    assert CyclicQuarticField(-3, 35).label() == "K(-3,35)"
    with pytest.raises(DomainError):
        CyclicQuarticField(0, 35)
