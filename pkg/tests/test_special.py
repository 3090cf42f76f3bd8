"""Harmonic sums, Fermat quotients, Bernoulli/Euler tables, p-adic Gamma."""

import random
from fractions import Fraction

import pytest

from dombcheck.padic import DenominatorDivisibleByP, PAdicValue, PrimeContext
from dombcheck.special import (
    ArgumentDivisibleByP,
    bernoulli_poly,
    bernoulli_table,
    euler_table,
    fermat_quotient,
    gamma_representative,
    harmonic,
    padic_gamma_int,
    padic_gamma_rational,
)

CTX5 = PrimeContext(5, 3)
CTX7 = PrimeContext(7, 3)


def test_harmonic_spots():
    assert harmonic(0, 1, CTX5).is_zero
    h2 = harmonic(2, 1, CTX5)
    assert (h2 - Fraction(3, 2)).is_zero
    # H_4 = 25/12 has valuation 2 at p = 5
    assert harmonic(4, 1, CTX5).valuation == 2
    # H_6 = 49/20 has valuation 2 at p = 7
    assert harmonic(6, 1, CTX7).valuation == 2
    # second order: 1 + 1/4 + 1/9 + 1/16 = 205/144, one factor of 5
    assert harmonic(4, 2, CTX5).valuation == 1


def test_harmonic_negative_valuation():
    assert harmonic(5, 1, CTX5).valuation == -1
    assert harmonic(25, 2, CTX5).valuation <= -2


def test_harmonic_against_fraction_oracle():
    for p in (5, 7):
        ctx = PrimeContext(p, 3)
        for order in (1, 2):
            acc = Fraction(0)
            for n in range(1, 60):
                acc += Fraction(1, n**order)
                diff = harmonic(n, order, ctx) - PAdicValue.from_fraction(acc, ctx)
                assert diff.is_zero


def test_harmonic_rejects_bad_order():
    with pytest.raises(ValueError):
        harmonic(3, 0, CTX5)


def test_fermat_quotient_spots():
    assert fermat_quotient(2, CTX5).residue(3) == 3
    assert fermat_quotient(3, CTX7).residue(3) == 104
    with pytest.raises(ArgumentDivisibleByP):
        fermat_quotient(10, CTX5)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_fermat_quotient_reconstructs_power(p):
    ctx = PrimeContext(p, 3)
    one = PAdicValue.from_int(1, ctx)
    for a in (2, 3, p - 1, p + 1, 2 * p + 3):
        q = fermat_quotient(a, ctx)
        lhs = (one + PAdicValue.from_int(p, ctx) * q).residue(3)
        assert lhs == pow(a, p - 1, ctx.pk)


def _bernoulli_exact(count):
    # defining recurrence sum_{j<n} C(n+1,j) B_j = 0, exact rationals
    from math import comb

    vals = [Fraction(1)]
    for n in range(1, count):
        s = sum(Fraction(comb(n + 1, j)) * vals[j] for j in range(n))
        vals.append(-s / (n + 1))
    return vals


@pytest.mark.parametrize("p", [7, 13, 31])
def test_bernoulli_table_against_oracle(p):
    ctx = PrimeContext(p, 2)
    table = bernoulli_table(ctx)
    exact = _bernoulli_exact(p - 2)
    assert len(table) == p - 2
    for n, b in enumerate(exact):
        assert b.denominator % p != 0
        assert table[n] == b.numerator * pow(b.denominator, -1, p) % p


# secant numbers E_0, E_2, E_4, ..., exact integer values
_EULER_EXACT = [1, -1, 5, -61, 1385, -50521, 2702765, -199360981]


@pytest.mark.parametrize("p", [13, 31])
def test_euler_table_against_oracle(p):
    from math import comb

    ctx = PrimeContext(p, 2)
    table = euler_table(ctx)  # indexed by raw subscript, odd entries zero
    assert len(table) == p - 2
    for j, e in enumerate(_EULER_EXACT):
        if 2 * j >= len(table):
            break
        assert table[2 * j] == e % p
    assert all(table[n] == 0 for n in range(1, len(table), 2))
    # recurrence closes mod p
    for n in range(2, len(table), 2):
        s = sum(comb(n, j) * table[j] for j in range(0, n + 1, 2)) % p
        assert s == 0


def test_bernoulli_poly_spots():
    # B_5(1/3) = -5/243 and B_3(1/3) = 1/27, reduced mod p
    assert bernoulli_poly(5, Fraction(1, 3), CTX7) == 6
    assert bernoulli_poly(3, Fraction(1, 3), PrimeContext(5, 2)) == 3


def test_bernoulli_poly_difference_equation():
    # B_n(x+1) - B_n(x) = n x^(n-1)
    p = 13
    ctx = PrimeContext(p, 2)
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randrange(2, 12)
        x = Fraction(rng.randrange(-30, 30), rng.choice([1, 2, 3, 4, 7, 9]))
        lhs = (bernoulli_poly(n, x + 1, ctx) - bernoulli_poly(n, x, ctx)) % p
        q = n * x ** (n - 1)
        rhs = q.numerator * pow(q.denominator, -1, p) % p
        assert lhs == rhs


def test_bernoulli_poly_at_zero_matches_table():
    ctx = PrimeContext(11, 2)
    table = bernoulli_table(ctx)  # B_0 .. B_(p-3)
    assert len(table) == 9
    for n in range(2, 9):
        assert bernoulli_poly(n, Fraction(0), ctx) == table[n]
        assert bernoulli_poly(n, Fraction(1), ctx) == table[n]


def test_gamma_int_spots():
    assert padic_gamma_int(0, CTX5).residue(3) == 1
    assert padic_gamma_int(1, CTX5).residue(3) == 124
    assert padic_gamma_int(5, PrimeContext(5, 2)).residue(2) == 1
    assert padic_gamma_int(6, CTX5).residue(1) == 4


@pytest.mark.parametrize("p", [5, 7, 11])
def test_gamma_wilson(p):
    # at n = p the value is +1 mod p (sign times (p-1)! unit)
    ctx = PrimeContext(p, 2)
    assert padic_gamma_int(p, ctx).residue(1) == 1


@pytest.mark.parametrize("p", [5, 7])
def test_gamma_shift_law(p):
    ctx = PrimeContext(p, 3)
    for n in range(1, 300):
        ratio = padic_gamma_int(n + 1, ctx) / padic_gamma_int(n, ctx)
        if n % p == 0:
            assert (ratio + 1).is_zero
        else:
            assert (ratio + n).is_zero


def test_gamma_continuity():
    # agreement mod p^n when arguments agree mod p^n
    rng = random.Random(9)
    for p in (5, 7):
        ctx = PrimeContext(p, 3)
        for _ in range(60):
            m = rng.randrange(0, 400)
            n = rng.randrange(1, 4)
            t = rng.randrange(1, 20)
            a = padic_gamma_int(m, ctx)
            b = padic_gamma_int(m + t * p**n, ctx)
            assert a.residue(n) == b.residue(n)


def test_gamma_representative():
    assert gamma_representative(Fraction(1, 2), CTX7) == 4
    assert gamma_representative(Fraction(0), CTX7) == 7
    assert gamma_representative(Fraction(-1, 3), CTX7) == 2
    with pytest.raises(DenominatorDivisibleByP):
        gamma_representative(Fraction(1, 7), CTX7)


def test_gamma_rational_spots():
    # Gamma_5 at the representative of 1/2, i.e. at 3: (-1)^3 * 1 * 2 = -2
    assert padic_gamma_rational(Fraction(1, 2), CTX5) == 3
    # rational evaluation is pinned to the integer evaluator mod p
    for n in range(1, 12):
        a = padic_gamma_rational(Fraction(n), CTX7)
        b = padic_gamma_int(n, CTX7).residue(1)
        assert a == b


@pytest.mark.parametrize("p", [5, 7, 13, 31])
def test_gamma_reflection(p):
    # product with reflected argument is a sign determined by the
    # representative of x in {1..p}
    ctx = PrimeContext(p, 2)
    rng = random.Random(p)
    for _ in range(60):
        den = rng.choice([1, 2, 3, 4, 6, 9, 11])
        num = rng.randrange(-4 * p, 4 * p)
        x = Fraction(num, den)
        if x.denominator % p == 0:
            continue
        g1 = padic_gamma_rational(x, ctx)
        g2 = padic_gamma_rational(1 - x, ctx)
        sign = (-1) ** gamma_representative(x, ctx)
        assert g1 * g2 % p == sign % p
