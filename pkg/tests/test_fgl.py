import random
import unittest
from fractions import Fraction

import pytest

from brauerkit.algebra import Integers, PolyRing, PrimeField, Rationals
from brauerkit.elliptic import elliptic_fgl
from brauerkit.errors import FGLAxiomError, TruncationError
from brauerkit.fgl import (
    FINITE,
    INDETERMINATE,
    INFINITE,
    NONCONSTANT,
    base_change,
    check_associativity,
    coordinate_change,
    fgl_from_log,
    formal_inverse,
    height_from_p_series,
    height_mod_p,
    logarithm,
    p_series,
    p_series_from_log,
    p_typicalize_log,
    validate_fgl,
)
from brauerkit.series import TruncSeries, series_reversion, series_substitute

ZZ = Integers()
QQ = Rationals()


def xy(order, ring=ZZ):
    return (
        TruncSeries.variable(ring, ("x", "y"), order, "x"),
        TruncSeries.variable(ring, ("x", "y"), order, "y"),
    )


def additive(order, ring=ZZ):
    x, y = xy(order, ring)
    return validate_fgl(x + y)


def multiplicative(order, ring=ZZ):
    x, y = xy(order, ring)
    return validate_fgl(x + y - x * y)


class TestValidateFGL(unittest.TestCase):
    def test_additive_law(self):
        self.assertEqual(additive(6).render(), "x + y + O(6)")

    def test_multiplicative_law(self):
        self.assertEqual(multiplicative(6).render(), "x + y - x*y + O(6)")

    def test_unitality(self):
        x, y = xy(5)
        with self.assertRaises(FGLAxiomError) as ctx:
            validate_fgl(x + y + x * x)
        self.assertEqual(ctx.exception.axiom, "unitality")
        self.assertEqual(ctx.exception.monomial, "x^2")
        self.assertEqual(ctx.exception.degree, 2)

    def test_commutativity(self):
        x, y = xy(5)
        with self.assertRaises(FGLAxiomError) as ctx:
            validate_fgl(x + y + x * x * y)
        self.assertEqual(ctx.exception.axiom, "commutativity")
        self.assertEqual(ctx.exception.monomial, "x^2*y")

    def test_associativity(self):
        x, y = xy(5)
        with self.assertRaises(FGLAxiomError) as ctx:
            validate_fgl(x + y + x * x * y * y)
        self.assertEqual(ctx.exception.axiom, "associativity")

    def test_needs_two_variables(self):
        t = TruncSeries.variable(ZZ, ("t",), 4, "t")
        with self.assertRaises(TruncationError):
            validate_fgl(t)


class TestLogarithm:
    def test_additive(self):
        L = logarithm(additive(6, QQ))
        assert L == TruncSeries.variable(QQ, ("x",), 6, "x")

    def test_multiplicative(self):
        L = logarithm(multiplicative(6, QQ))
        expected = {(m,): Fraction(1, m) for m in range(1, 6)}
        assert L.terms == expected

    def test_law_from_identity_log(self):
        t = TruncSeries.variable(QQ, ("t",), 6, "t")
        assert fgl_from_log(t).series.terms == {(1, 0): 1, (0, 1): 1}

    def test_law_from_mercator_log(self):
        L = TruncSeries(
            QQ, ("t",), 6, {(m,): Fraction(1, m) for m in range(1, 6)}
        )
        law = fgl_from_log(L)
        assert law.series.terms == {(1, 0): 1, (0, 1): 1, (1, 1): -1}

    def test_p_typicalize(self):
        L = TruncSeries(
            QQ, ("t",), 10, {(m,): Fraction(1, m) for m in range(1, 10)}
        )
        assert sorted(e for (e,) in p_typicalize_log(L, 2).terms) == [
            1, 2, 4, 8,
        ]

    def test_p_typicalize_identity(self):
        t = TruncSeries.variable(QQ, ("t",), 10, "t")
        assert p_typicalize_log(t, 3) == t


class TestPSeries:
    def test_additive(self):
        assert p_series(additive(6), 5).render() == "5*x + O(6)"

    def test_multiplicative(self):
        # 1 - (1 - t)^3
        assert p_series(multiplicative(6), 3).render() == (
            "3*x - 3*x^2 + x^3 + O(6)"
        )

    def test_formal_inverse(self):
        law = multiplicative(7)
        inv = formal_inverse(law)
        x = TruncSeries.variable(ZZ, ("x",), 7, "x")
        assert not law(x, inv)


class TestHeight:
    def test_multiplicative_height_one(self):
        for p in (2, 3, 5):
            result = height_mod_p(multiplicative(p + 1), p, 1)
            assert result.kind == FINITE
            assert result.value == 1
            assert str(result) == "1"

    def test_additive_law_is_infinite_when_exact(self):
        result = height_mod_p(additive(6), 5, 1, exact=True)
        assert result.kind == INFINITE

    def test_truncated_additive_law_is_indeterminate(self):
        result = height_mod_p(additive(10), 3, 2)
        assert result.kind == INDETERMINATE
        assert str(result) == "indeterminate at order 10"

    def test_order_too_low(self):
        with pytest.raises(TruncationError):
            height_mod_p(multiplicative(5), 5, 1)

    def test_nonconstant_leading_coefficient(self):
        R = PolyRing(PrimeField(3), ("a",))
        a = R.gen("a")
        ps = TruncSeries(R, ("t",), 5, {(3,): a})
        result = height_from_p_series(ps, 3, 1)
        assert result.kind == NONCONSTANT
        assert str(result) == "at least 1"

    def test_p_series_shape(self):
        ps = TruncSeries(ZZ, ("t",), 5, {(2,): 1})
        with pytest.raises(FGLAxiomError):
            height_from_p_series(ps, 3, 1)


class TestBaseChange:
    def test_identity_assignment(self):
        law = multiplicative(6)
        assert base_change(law, ZZ) == law

    def test_reduction_mod_p(self):
        law = base_change(multiplicative(6), PrimeField(3))
        assert law.render() == "x + y + 2*x*y + O(6)"


def random_log(rng, order, var="x"):
    terms = {(1,): 1}
    for m in range(2, order):
        if rng.random() < 0.7:
            terms[(m,)] = Fraction(rng.randint(-4, 4), rng.randint(1, 6))
    return TruncSeries(QQ, (var,), order, terms)


def random_coordinate(rng, F, order):
    p = F.characteristic
    terms = {(1,): rng.randint(1, p - 1)}
    for m in range(2, order):
        terms[(m,)] = rng.randint(0, p - 1)
    return TruncSeries(F, ("x",), order, terms)


class TestProperties:
    CASES = 200

    def logs(self, seed):
        rng = random.Random(seed)
        for _ in range(self.CASES):
            yield random_log(rng, rng.randint(3, 9))

    def test_reversion_round_trip(self):
        for L in self.logs(101):
            t = TruncSeries.variable(QQ, ("x",), L.order, "x")
            g = series_reversion(L)
            assert series_substitute(L, [g]) == t
            assert series_substitute(g, [L]) == t

    def test_log_of_law_from_log(self):
        for L in self.logs(102):
            assert logarithm(fgl_from_log(L, validate=False)) == L

    def test_p_series_matches_exp_of_p_log(self):
        for L in self.logs(103):
            law = fgl_from_log(L, validate=False)
            for p in (2, 3):
                assert p_series(law, p) == p_series_from_log(L, p)

    def test_laws_from_logs_are_associative(self):
        for L in self.logs(104):
            law = fgl_from_log(L, validate=False)
            check_associativity(law.series)
            validate_fgl(law.series, associativity=False)

    def test_height_invariant_under_coordinate_change(self):
        rng = random.Random(105)
        for _ in range(self.CASES):
            p = rng.choice((2, 3))
            F = PrimeField(p)
            N = p * p + 1
            coeffs = [rng.randint(0, p - 1) for _ in range(5)]
            law = elliptic_fgl(F, coeffs, N)
            conjugate = coordinate_change(
                law, random_coordinate(rng, F, N), validate=False
            )
            before = height_mod_p(law, p, 2)
            after = height_mod_p(conjugate, p, 2)
            assert (after.kind, after.value) == (before.kind, before.value)
