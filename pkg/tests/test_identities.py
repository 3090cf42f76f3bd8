"""Exact rational identity catalog."""

from fractions import Fraction
from math import comb

import pytest

from dombcheck.identities import (
    IDENTITY_IDS,
    binom_frac,
    check_all_identities,
    check_identity,
    harmonic_exact,
    _cyid,
    _i1,
    _i3,
    _i4,
    _i5,
    _i7,
    _i9,
    _i11,
)


def test_identity_ids_complete():
    assert len(IDENTITY_IDS) == 17
    assert "I1" in IDENTITY_IDS and "CYID" in IDENTITY_IDS
    assert "CZ_TRANSFORM" in IDENTITY_IDS and "SUN_TRANSFORM" in IDENTITY_IDS


def test_harmonic_exact():
    assert harmonic_exact(0) == 0
    assert harmonic_exact(4) == Fraction(25, 12)
    assert harmonic_exact(3, 2) == Fraction(49, 36)


def test_binom_frac():
    assert binom_frac(Fraction(-1, 2), 2) == Fraction(3, 8)
    assert binom_frac(Fraction(-1, 3), 1) == Fraction(-1, 3)
    assert binom_frac(5, 2) == comb(5, 2)
    assert binom_frac(Fraction(7), 0) == 1


def test_spot_values_by_hand():
    # each pair was worked out by hand
    lhs, rhs = _i5(1, None)
    assert lhs == rhs == Fraction(1, 2)
    lhs, rhs = _i7(1, None)
    assert lhs == rhs == Fraction(1, 10)
    lhs, rhs = _i1(3, 1)
    assert lhs == rhs == 1
    lhs, rhs = _i11(3, 0)
    assert lhs == rhs == 5
    lhs, rhs = _i3(1, None)
    assert lhs == rhs == Fraction(-1, 2)
    lhs, rhs = _i4(1, None)
    assert lhs == rhs == Fraction(-1, 3)
    lhs, rhs = _i9(1, None)
    assert lhs == rhs == Fraction(-2, 3)
    lhs, rhs = _cyid(2, 3)
    assert lhs == rhs == Fraction(1, 20)


def test_check_identity_reports():
    rep = check_identity("I1", 10)
    assert rep.passed
    assert rep.identity == "I1"
    assert rep.cases == sum(n // 2 + 1 for n in range(1, 11))
    assert rep.first_failure is None


def test_check_identity_unknown():
    with pytest.raises(KeyError):
        check_identity("I99", 5)


def test_transforms():
    assert check_identity("CZ_TRANSFORM", 30).passed
    assert check_identity("SUN_TRANSFORM", 30).passed


def test_all_identities_small():
    reports = check_all_identities(12)
    assert len(reports) == len(IDENTITY_IDS)
    for rep in reports:
        assert rep.passed, rep.identity
        assert rep.cases > 0
