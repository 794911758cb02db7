import math

import pytest

from cmquartic.arith import (
    Factorization,
    count_roots_mod_p,
    factor,
    is_prime,
    is_squarefree,
    kronecker,
    primes_in_progression,
    squarefree_part,
)
from cmquartic.errors import DomainError


def sieve_primes(n):
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(n**0.5) + 1):
        if flags[p]:
            flags[p * p::p] = b"\x00" * len(flags[p * p::p])
    return [i for i, f in enumerate(flags) if f]


def test_is_prime_against_sieve():
    primes = set(sieve_primes(10000))
    for n in range(10000):
        assert is_prime(n) == (n in primes), n


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**67 - 1)  # 193707721 * 761838257287
    assert is_prime(1229)


def test_factor_examples():
    assert factor(1) == Factorization(1, ())
    assert factor(-84) == Factorization(-1, ((2, 2), (3, 1), (7, 1)))
    assert factor(2822400) == Factorization(1, ((2, 8), (3, 2), (5, 2), (7, 2)))


def test_factor_round_trip():
    for n in range(1, 3000):
        assert factor(n).value() == n
        assert factor(-n).value() == -n


def test_factor_round_trip_to_million():
    import random

    for n in range(3000, 100000):
        assert factor(n).value() == n
    rng = random.Random(20260809)
    for _ in range(5000):
        n = rng.randrange(100000, 10**6)
        assert factor(n).value() == n
        assert factor(-n).value() == -n


def test_factor_structure():
    for n in (360, 2822400, 2**11 * 3**2 * 613**3, 97 * 101 * 103):
        f = factor(n)
        primes = [p for p, _ in f.factors]
        assert primes == sorted(primes)
        assert len(set(primes)) == len(primes)
        assert all(is_prime(p) for p in primes)
        assert all(e >= 1 for _, e in f.factors)


def test_factor_large_semiprime():
    # exercises the rho fallback beyond the trial division bound
    p, q = 1073741827, 2147483659
    f = factor(p * q)
    assert f == Factorization(1, ((p, 1), (q, 1)))


def test_factor_zero():
    with pytest.raises(DomainError):
        factor(0)


def test_factorization_multiply():
    assert (factor(40) * factor(-84)).value() == 40 * -84
    assert str(factor(2822400)) == "2^8*3^2*5^2*7^2"
    assert str(factor(-84)) == "-2^2*3*7"


def test_squarefree_part_examples():
    assert squarefree_part(10) == (10, 1)
    assert squarefree_part(18) == (2, 3)
    assert squarefree_part(1226) == (1226, 1)
    assert squarefree_part(-48) == (-3, 4)


def test_squarefree_part_reconstructs():
    for n in range(1, 2000):
        v, c = squarefree_part(n)
        assert v * c * c == n
        assert is_squarefree(v)


def test_squarefree_part_multiplicative_on_coprime():
    for a in range(1, 60):
        for b in range(1, 60):
            if math.gcd(a, b) == 1:
                assert (squarefree_part(a * b).value
                        == squarefree_part(a).value * squarefree_part(b).value)


def test_is_squarefree_examples():
    assert is_squarefree(26)
    assert not is_squarefree(50)
    assert is_squarefree(1226)
    with pytest.raises(DomainError):
        is_squarefree(0)


def test_kronecker_examples():
    assert kronecker(-4, 3) == -1
    assert kronecker(40, 3) == 1
    assert kronecker(5, 5) == 0
    with pytest.raises(DomainError):
        kronecker(0, 0)


def test_kronecker_equals_euler_criterion():
    for p in sieve_primes(60):
        if p == 2:
            continue
        for a in range(-2 * p, 2 * p):
            euler = pow(a % p, (p - 1) // 2, p)
            expected = 0 if a % p == 0 else (1 if euler == 1 else -1)
            assert kronecker(a, p) == expected, (a, p)


def test_kronecker_multiplicative():
    # zero arguments excluded: (0 | +-1) = 1 by convention breaks the identity
    for a in range(-20, 21):
        for b in range(-20, 21):
            for n in range(-15, 16):
                if a == 0 or b == 0 or n == 0:
                    continue
                assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)
    for n in range(-20, 21):
        for m in range(-20, 21):
            for a in range(-15, 16):
                if a == 0 or n == 0 or m == 0:
                    continue
                assert kronecker(a, n * m) == kronecker(a, n) * kronecker(a, m)


def _count_roots_oracle(s, t, p):
    total = 0
    for x in range(p):
        if (x**4 - 2 * s * (t * t + 1) * x * x + s * s * t * t * (t * t + 1)) % p == 0:
            total += 1
    return total


def test_count_roots_examples():
    # frozen from the evaluation oracle below
    assert count_roots_mod_p(-3, 35, 5) == 3 == _count_roots_oracle(-3, 35, 5)
    assert count_roots_mod_p(1, 1, 3) == 0 == _count_roots_oracle(1, 1, 3)
    # p dividing s*t*(t^2+1) is allowed: literal root count
    assert count_roots_mod_p(5, 3, 5) == _count_roots_oracle(5, 3, 5)


def test_count_roots_matches_oracle():
    for p in sieve_primes(100):
        if p == 2:
            continue
        for s, t in ((-3, 35), (1, 1), (2, 3), (-6, 35), (-11, 3), (7, 5)):
            assert count_roots_mod_p(s, t, p) == _count_roots_oracle(s, t, p), (s, t, p)


def test_count_roots_domain_errors():
    with pytest.raises(DomainError):
        count_roots_mod_p(1, 1, 4)
    with pytest.raises(DomainError):
        count_roots_mod_p(1, 1, 2)
    with pytest.raises(DomainError):
        count_roots_mod_p(1, 1, 10**6 + 3)


def test_primes_in_progression():
    assert primes_in_progression(27, 4, 1, 3) == [29, 37, 41]
    assert primes_in_progression(3, 2, 1, 1) == [3]
    assert primes_in_progression(1227, 4, 1, 1) == [1229]
    assert primes_in_progression(10, 4, 1, 0) == []


def test_primes_in_progression_gcd_error():
    with pytest.raises(DomainError):
        primes_in_progression(1, 4, 2, 1)
