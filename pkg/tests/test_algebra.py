import random
import unittest
from fractions import Fraction

import pytest
import sympy

from brauerkit.algebra import (
    Ideal,
    Integers,
    PolyRing,
    PrimeField,
    QuotientRing,
    Rationals,
    buchberger,
    coefficient_of,
    convert,
    finite_field,
    is_unit_ideal,
    is_zero_divisor,
    parse_poly,
    poly_arith,
    radical_is_point,
    reduce_ring_mod_p,
)
from brauerkit.catalog import FERMAT_QUARTIC, QUARTIC_FAMILY
from brauerkit.errors import (
    NonUnitError,
    ParseError,
    RingMismatchError,
    UnsupportedRingError,
)

COORDS = ("x0", "x1", "x2", "x3")


def fermat():
    return parse_poly(FERMAT_QUARTIC, PolyRing(Integers(), COORDS))


class TestRings(unittest.TestCase):
    def test_prime_field_rejects_composite(self):
        with self.assertRaises(UnsupportedRingError):
            PrimeField(4)

    def test_duplicate_variables(self):
        with self.assertRaises(UnsupportedRingError):
            PolyRing(Integers(), ("x", "x"))

    def test_prime_field_residues(self):
        F = PrimeField(5)
        self.assertEqual(F.coerce(-1), 4)
        self.assertEqual(F.inverse(2), 3)
        self.assertEqual(F.coerce(Fraction(1, 2)), 3)

    def test_integer_inverse(self):
        with self.assertRaises(NonUnitError):
            Integers().inverse(2)

    def test_laurent_variable(self):
        R = PolyRing(PrimeField(5), ("t",), laurent="t")
        t = R.gen("t")
        self.assertEqual(t * t ** -1, 1)
        self.assertEqual(parse_poly("t^-2", R), t ** -2)

    def test_reduce_ring_mod_p(self):
        R = PolyRing(Integers(), ("a",))
        self.assertEqual(
            reduce_ring_mod_p(R, 3), PolyRing(PrimeField(3), ("a",))
        )


class TestPolyArith:
    def test_difference_of_squares(self):
        R = PolyRing(Integers(), ("x", "y"))
        x, y = R.gens()
        assert poly_arith(x + y, x - y, "mul").render() == "x^2 - y^2"

    def test_ring_mismatch(self):
        x = PolyRing(Integers(), ("x",)).gen("x")
        y = PolyRing(Integers(), ("y",)).gen("y")
        with pytest.raises(RingMismatchError):
            poly_arith(x, y, "add")

    def test_fermat_square_cross_term(self):
        f = fermat()
        assert coefficient_of(f * f, (4, 4, 0, 0)) == 2

    def test_coefficient_of_empty_product(self):
        f = fermat()
        assert coefficient_of(f ** 0, (0, 0, 0, 0)) == 1

    def test_fermat_fourth_power(self):
        assert coefficient_of(fermat() ** 4, (4, 4, 4, 4)) == 24

    def test_missing_monomial_is_zero(self):
        R = PolyRing(Integers(), ("x0", "x1", "x2"))
        f = parse_poly("x0^6 + x1^6 + x2^6", R)
        assert coefficient_of(f, (2, 2, 2)) == 0

    def test_square_against_sympy(self):
        names = COORDS + ("a", "b")
        R = PolyRing(Integers(), names)
        f = parse_poly(QUARTIC_FAMILY, R)
        symbols = sympy.symbols(names)
        expr = sympy.sympify(QUARTIC_FAMILY.replace("^", "**"))
        expected = sympy.Poly(sympy.expand(expr ** 2), *symbols).as_dict()
        assert (f * f).terms == expected


class TestParsePoly:
    R = PolyRing(Integers(), ("x", "y"))

    def test_round_trip_render(self):
        text = "2*x^2 - 3*x*y + 1"
        assert parse_poly(text, self.R).render() == text

    def test_parentheses_and_powers(self):
        assert parse_poly("(x + 1)^2", self.R).render() == "x^2 + 2*x + 1"

    def test_rational_division(self):
        f = parse_poly("x/2", PolyRing(Rationals(), ("x",)))
        assert f.coefficient((1,)) == Fraction(1, 2)

    @pytest.mark.parametrize(
        "text, column",
        [("", 0), ("x + $", 4), ("x + z", 4), ("x +* y", 3)],
    )
    def test_error_columns(self, text, column):
        with pytest.raises(ParseError) as exc_info:
            parse_poly(text, self.R)
        assert exc_info.value.column == column

    def test_division_by_non_unit(self):
        with pytest.raises(ParseError):
            parse_poly("x/2", self.R)

    def test_division_by_variable(self):
        with pytest.raises(ParseError):
            parse_poly("x/y", self.R)

    def test_negative_power_outside_laurent(self):
        with pytest.raises(ParseError):
            parse_poly("x^-1", self.R)


class TestConvert:
    def test_reduce_coefficients(self):
        src = PolyRing(Integers(), ("x",))
        dst = PolyRing(PrimeField(3), ("x",))
        f = parse_poly("5*x + 7", src)
        assert convert(f, src, dst).render() == "2*x + 1"

    def test_constant_polynomial_to_field(self):
        src = PolyRing(Integers(), ("a",))
        assert convert(src.constant(7), src, PrimeField(5)) == 2


class TestQuotientRing:
    def test_monomial_truncation(self):
        R = PolyRing(Integers(), ("a", "b"))
        a, b = R.gens()
        Q = QuotientRing(R, (b, a * a))
        qa, qb = Q.gens()
        assert (qa + qb) ** 2 == 0
        assert (qa + 1) * (qa - 1) == -1

    def test_groebner_reduction(self):
        R = PolyRing(PrimeField(3), ("a",))
        a = R.gen("a")
        Q = QuotientRing(R, (a * a - 1,))
        assert Q.gen("a") * Q.gen("a") == 1

    def test_nilpotent_unit(self):
        R = PolyRing(PrimeField(3), ("a",))
        Q = QuotientRing(R, (R.gen("a") ** 2,))
        u = Q.gen("a") + 1
        assert u * Q.inverse(u) == 1

    def test_unit_in_infinite_monomial_quotient(self):
        R = PolyRing(Integers(), ("a", "b"))
        Q = QuotientRing(R, (R.gen("b") ** 2,))
        qa, qb = Q.gens()
        assert Q.inverse(qb * 2 + 1) == 1 - qb * 2
        assert not Q.is_unit(qa + 1)
        assert not Q.is_unit(qb + 2)

    def test_non_nilpotent_unit(self):
        R = PolyRing(PrimeField(3), ("a",))
        a = R.gen("a")
        Q = QuotientRing(R, (a * a - 1,))
        qa = Q.gen("a")
        assert Q.is_unit(qa)
        assert Q.inverse(qa) == qa
        assert not Q.is_unit(qa + 1)
        with pytest.raises(NonUnitError):
            Q.inverse(qa + 1)

    def test_inverse_in_field_without_order(self):
        R = PolyRing(PrimeField(5), ("a",))
        a = R.gen("a")
        Q = QuotientRing(R, (a * a - 2,))
        qa = Q.gen("a")
        assert Q.inverse(qa) == qa * 3

    def test_inverse_in_infinite_quotient(self):
        R = PolyRing(PrimeField(3), ("a", "b"))
        a, b = R.gens()
        Q = QuotientRing(R, (a * b - 1,))
        qa, qb = Q.gens()
        assert Q.inverse(qa) == qb
        assert not Q.is_unit(qa + qb)

    def test_non_monomial_needs_prime_field(self):
        R = PolyRing(Integers(), ("a",))
        with pytest.raises(UnsupportedRingError):
            QuotientRing(R, (R.gen("a") * 2 + 1,))

    def test_finite_field_of_nine_elements(self):
        F = finite_field(3, 2)
        i = F.gen("i")
        assert i * i == 2
        assert len(list(F.elements())) == 9
        assert i * F.inverse(i) == 1


class TestIdeal:
    R = PolyRing(PrimeField(3), ("a", "b"))

    def gens(self):
        return self.R.gens()

    def test_principal_basis(self):
        a, _ = self.gens()
        ideal = buchberger(Ideal(self.R, [a]))
        assert [g.render() for g in ideal.groebner_basis] == ["a"]

    def test_unit_ideal(self):
        a, _ = self.gens()
        assert is_unit_ideal(Ideal(self.R, [a, a + 1]))
        assert is_unit_ideal(Ideal(self.R, [1]))

    def test_proper_maximal_ideal(self):
        a, b = self.gens()
        assert not is_unit_ideal(Ideal(self.R, [a, b]))

    def test_reduced_basis(self):
        a, b = self.gens()
        ideal = Ideal(self.R, [b, a * a + a * b * b])
        rendered = {g.render() for g in ideal.groebner_basis}
        assert rendered == {"b", "a^2"}
        assert ideal.is_monomial()

    def test_zero_divisors(self):
        a, b = self.gens()
        assert is_zero_divisor(a, Ideal(self.R, [a * a]))
        assert not is_zero_divisor(b, Ideal(self.R, [a]))
        assert not is_zero_divisor(a * a + a * b * b, Ideal(self.R, [b]))

    def test_zero_divisor_ring_mismatch(self):
        other = PolyRing(PrimeField(5), ("a", "b"))
        with pytest.raises(RingMismatchError):
            is_zero_divisor(other.gen("a"), Ideal(self.R, [self.R.gen("a")]))

    def test_radical_is_point(self):
        a, b = self.gens()
        assert radical_is_point(Ideal(self.R, [a * a, b]), (0, 0))
        assert radical_is_point(
            Ideal(self.R, [b * b, a ** 4 - a * b + b ** 4]), (0, 0)
        )
        assert not radical_is_point(Ideal(self.R, [a * (a - 1), b]), (0, 0))

    def test_needs_prime_field(self):
        with pytest.raises(UnsupportedRingError):
            Ideal(PolyRing(Integers(), ("a",)), [])

    def test_variable_limit(self):
        R = PolyRing(PrimeField(3), ("a", "b", "c", "d", "e"))
        with pytest.raises(UnsupportedRingError):
            Ideal(R, [R.gen("a")])


def random_terms(rng, p, degree=3, count=4):
    terms = {}
    for _ in range(rng.randint(1, count)):
        i = rng.randint(0, degree)
        j = rng.randint(0, degree - i)
        terms[(i, j)] = rng.randint(1, p - 1)
    return terms


class TestGroebnerOracle:
    CASES = 200
    A, B = sympy.symbols("a b")

    def pair(self, terms, R):
        ours = R.zero
        expr = sympy.Integer(0)
        for (i, j), c in terms.items():
            ours = ours + R.monomial((i, j), c)
            expr = expr + c * self.A ** i * self.B ** j
        return ours, expr

    def random_ideal(self, rng):
        p = rng.choice((2, 3, 5))
        R = PolyRing(PrimeField(p), ("a", "b"))
        ours, exprs = [], []
        for _ in range(rng.randint(1, 3)):
            g, e = self.pair(random_terms(rng, p), R)
            if g:
                ours.append(g)
                exprs.append(e)
        return p, R, ours, exprs

    def oracle_zero_divisor(self, v, exprs, p):
        T = sympy.Symbol("T")
        basis = sympy.groebner(exprs, self.A, self.B, modulus=p,
                               order="grevlex")
        meet = sympy.groebner(
            [T * e for e in exprs] + [(1 - T) * v],
            T, self.A, self.B, modulus=p, order="lex",
        )
        for h in meet.exprs:
            if T in h.free_symbols:
                continue
            q, r = sympy.div(h, v, self.A, self.B, modulus=p)
            assert r == 0
            if not basis.contains(q):
                return True
        return False

    def test_membership(self):
        rng = random.Random(20240)
        checked = 0
        while checked < self.CASES:
            p, R, ours, exprs = self.random_ideal(rng)
            if not ours:
                continue
            basis = sympy.groebner(exprs, self.A, self.B, modulus=p,
                                   order="grevlex")
            ideal = Ideal(R, ours)
            assert ideal.is_unit() == (list(basis.exprs) == [1])
            f, expr = self.pair(random_terms(rng, p, 4, 6), R)
            combo = f * ours[0]
            assert ideal.contains(f) == basis.contains(expr)
            assert ideal.contains(combo)
            checked += 1

    def test_zero_divisor_agreement(self):
        rng = random.Random(20241)
        checked = 0
        while checked < self.CASES:
            p, R, ours, exprs = self.random_ideal(rng)
            v, vexpr = self.pair(random_terms(rng, p, 2, 3), R)
            if not ours or not v:
                continue
            expected = self.oracle_zero_divisor(vexpr, exprs, p)
            assert is_zero_divisor(v, Ideal(R, ours)) == expected
            checked += 1
