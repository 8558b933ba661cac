import random
import unittest

import pytest

from brauerkit import catalog
from brauerkit.algebra import (
    Ideal,
    Integers,
    PolyRing,
    PrimeField,
    Rationals,
    parse_poly,
)
from brauerkit.catalog import FERMAT_QUARTIC
from brauerkit.elliptic import elliptic_fgl
from brauerkit.errors import (
    SurfaceError,
    TruncationError,
    UnsupportedRingError,
)
from brauerkit.fgl import coordinate_change, validate_fgl
from brauerkit.landweber import (
    CHAR_P,
    EXACT,
    FAILS,
    INCONCLUSIVE,
    INTEGRAL,
    POINT,
    RATIONAL,
    TRUNCATION,
    TopResidue,
    VSequence,
    base_kind,
    exactness_report,
    extract_v,
    extract_v_from_p_series,
    family_p_series,
    is_smooth_hypersurface,
    rational_points,
    regularity_check,
    smooth_at_point,
)
from brauerkit.series import TruncSeries

COORDS = ("x0", "x1", "x2", "x3")
ZZ = Integers()


def multiplicative(order, ring=ZZ):
    x = TruncSeries.variable(ring, ("x", "y"), order, "x")
    y = TruncSeries.variable(ring, ("x", "y"), order, "y")
    return validate_fgl(x + y - x * y)


def additive(order, ring=ZZ):
    x = TruncSeries.variable(ring, ("x", "y"), order, "x")
    y = TruncSeries.variable(ring, ("x", "y"), order, "y")
    return validate_fgl(x + y)


class TestExtractV(unittest.TestCase):
    def test_multiplicative_law(self):
        V = extract_v(multiplicative(6), 2, 1)
        self.assertEqual(V.v, (2, -1))
        self.assertEqual(V.height_bound, 1)
        self.assertEqual(V.render(), ["2", "-1"])

    def test_order_too_low(self):
        with self.assertRaises(TruncationError):
            extract_v(multiplicative(4), 2, 2)

    def test_quartic_family(self):
        ps = family_p_series(catalog.quartic_family(), 3, 10)
        V = extract_v_from_p_series(ps, 3, 2)
        R = PolyRing(PrimeField(3), ("a", "b"))
        self.assertEqual(
            V.render()[1:],
            [parse_poly("-b", R).render(),
             parse_poly("-a^2 - a*b^2", R).render()],
        )
        report = exactness_report(catalog.quartic_family(), 3, 3)
        self.assertEqual(report.verdict.verdict, EXACT)
        self.assertEqual(report.verdict.unit_at, 3)
        self.assertEqual(report.top.method, TRUNCATION)
        self.assertEqual(report.top.value, 1)


class TestBaseKind:
    def test_kinds(self):
        assert base_kind(Rationals()) == RATIONAL
        assert base_kind(ZZ) == INTEGRAL
        assert base_kind(PolyRing(ZZ, ("a",))) == INTEGRAL
        assert base_kind(PrimeField(5)) == CHAR_P


class TestRegularityCheck:
    def test_multiplicative_law_is_exact(self):
        verdict = regularity_check(extract_v(multiplicative(6), 2, 1), ZZ)
        assert verdict.verdict == EXACT
        assert str(verdict) == "exact at 2 (unit ideal at 1)"

    def test_additive_law_fails(self):
        verdict = regularity_check(extract_v(additive(6), 3, 1), ZZ)
        assert verdict.verdict == FAILS
        assert verdict.fails_at == 1

    def test_rational_base(self):
        V = extract_v(additive(6), 3, 1)
        verdict = regularity_check(V, RATIONAL)
        assert verdict.verdict == EXACT and verdict.unit_at == 0

    def test_char_p_base(self):
        V = extract_v(additive(6, PrimeField(3)), 3, 1)
        verdict = regularity_check(V, PrimeField(3))
        assert verdict.verdict == FAILS and verdict.fails_at == 0


class TestRegularSequences(unittest.TestCase):
    def setUp(self):
        self.R = PolyRing(ZZ, ("a", "b"))
        self.R3 = PolyRing(PrimeField(3), ("a", "b"))

    def test_parameters_are_regular(self):
        a, b = self.R.gens()
        verdict = regularity_check(VSequence(3, (3, b, a), self.R), INTEGRAL)
        self.assertEqual(verdict.verdict, INCONCLUSIVE)
        self.assertEqual(verdict.regular_up_to, 2)
        self.assertEqual(str(verdict), "inconclusive (regular up to 2)")

    def test_zero_divisor(self):
        a, b = self.R.gens()
        V = VSequence(3, (3, a * a, a * b), self.R)
        verdict = regularity_check(V, INTEGRAL)
        self.assertEqual(verdict.verdict, FAILS)
        self.assertEqual(verdict.fails_at, 2)

    def test_unit_ideal(self):
        a, _ = self.R.gens()
        V = VSequence(3, (3, a, a + 1), self.R)
        verdict = regularity_check(V, INTEGRAL)
        self.assertEqual(str(verdict), "exact at 3 (unit ideal at 2)")

    def test_truncation_residue(self):
        a, b = self.R.gens()
        a3, b3 = self.R3.gens()
        modulus = Ideal(self.R3, [b3, a3]).groebner_basis
        top = TopResidue(3, TRUNCATION, 1, modulus, True)
        verdict = regularity_check(
            VSequence(3, (3, b, a), self.R), INTEGRAL, top
        )
        self.assertEqual(verdict.verdict, EXACT)
        self.assertEqual(verdict.unit_at, 3)
        self.assertEqual(top.render(), "v3 = 1 mod (" + ", ".join(
            g.render() for g in modulus) + ")")

    def test_truncation_residue_modulo_other_ideal(self):
        a, b = self.R.gens()
        a3, _ = self.R3.gens()
        top = TopResidue(3, TRUNCATION, 1, (a3,), True)
        with self.assertRaises(UnsupportedRingError):
            regularity_check(VSequence(3, (3, b, a), self.R), INTEGRAL, top)

    def test_point_residue(self):
        a, b = self.R.gens()
        V = VSequence(3, (3, b * b, a ** 4 - a * b + b ** 4), self.R)
        top = TopResidue(3, POINT, -1, (0, 0), True)
        verdict = regularity_check(V, INTEGRAL, top)
        self.assertEqual(verdict.verdict, EXACT)
        self.assertEqual(verdict.unit_at, 3)
        self.assertEqual(top.render(), "v3(0, 0) = -1")

    def test_point_residue_off_locus(self):
        a, b = self.R.gens()
        V = VSequence(3, (3, b, a - 1), self.R)
        top = TopResidue(3, POINT, 1, (0, 0), True)
        with self.assertRaises(UnsupportedRingError):
            regularity_check(V, INTEGRAL, top)


class TestSmoothness:
    def fermat(self, p):
        return parse_poly(FERMAT_QUARTIC, PolyRing(PrimeField(p), COORDS))

    def test_fermat_point(self):
        assert smooth_at_point([self.fermat(3)], [1, 1, 1, 0])

    def test_cone_vertex(self):
        R = PolyRing(PrimeField(5), COORDS)
        cone = parse_poly("x0^2 + x1^2 + x2^2", R)
        assert not smooth_at_point([cone], [0, 0, 0, 1])

    def test_point_off_variety(self):
        with pytest.raises(SurfaceError):
            smooth_at_point([self.fermat(3)], [1, 0, 0, 0])

    def test_zero_vector(self):
        with pytest.raises(SurfaceError):
            smooth_at_point([self.fermat(3)], [0, 0, 0, 0])

    def test_smooth_hypersurface(self):
        assert is_smooth_hypersurface(self.fermat(5))

    def test_singular_hypersurface(self):
        R = PolyRing(PrimeField(5), COORDS)
        f = parse_poly("x0^4 + x1^4 + x2^4 + x0^2*x3^2", R)
        assert not is_smooth_hypersurface(f)

    def test_rational_points(self):
        R = PolyRing(PrimeField(3), ("a", "b"))
        a, b = R.gens()
        points = list(rational_points([a, b - 1], ("a", "b"), PrimeField(3)))
        assert points == [(0, 1)]


class TestExactnessReport:
    def test_fermat_quartic(self):
        report = exactness_report(catalog.fermat_quartic(), 5, 1)
        assert str(report.verdict) == "exact at 5 (unit ideal at 1)"
        assert [w.render() for w in report.witnesses] == [
            "(5): [] over GF(5) smooth"
        ]
        assert report.ring_shape.startswith("Z_(5): (5, v1) is the unit")
        assert report.as_dict()["verdict"] == EXACT

    def test_report_lines(self):
        report = exactness_report(catalog.fermat_quartic(), 5, 1)
        lines = report.lines()
        assert lines[0] == "prime: 5"
        assert "v1: 4" in lines
        assert "verdict: exact at 5 (unit ideal at 1)" in lines

    def test_unknown_strategy(self):
        with pytest.raises(UnsupportedRingError):
            exactness_report(catalog.fermat_quartic(), 5, 1, "guess")

    def test_model_over_other_field(self):
        with pytest.raises(SurfaceError):
            family_p_series(catalog.char5_model(), 3, 10)

    @pytest.mark.slow
    def test_sextic_family_by_truncation(self):
        report = exactness_report(catalog.sextic_family(), 3, 3)
        assert report.strategy == TRUNCATION
        assert report.verdict.unit_at == 3
        assert report.top.value == 1

    @pytest.mark.slow
    def test_elliptic_family_at_a_point(self):
        report = exactness_report(catalog.elliptic_family(3), 3, 3)
        assert report.strategy == POINT
        assert report.top.modulus == (0, 0)
        assert report.top.value == -1
        assert report.verdict.verdict == EXACT


class TestCoordinateIndependence:
    CASES = 200

    def random_poly(self, rng, R):
        a, b = R.gens()
        p = R.characteristic
        return (
            R.constant(rng.randint(0, p - 1))
            + a * rng.randint(0, p - 1)
            + b * rng.randint(0, p - 1)
        )

    def random_change(self, rng, R, order, coefficient):
        p = R.characteristic
        terms = {(1,): R.constant(rng.randint(1, p - 1))}
        for m in range(2, order):
            terms[(m,)] = coefficient(rng, R)
        return TruncSeries(R, ("x",), order, terms)

    def check(self, rng, p, h, coefficient):
        N = p ** h + 1
        R = PolyRing(PrimeField(p), ("a", "b"))
        coeffs = [coefficient(rng, R) for _ in range(5)]
        law = elliptic_fgl(R, coeffs, N)
        conjugate = coordinate_change(
            law, self.random_change(rng, R, N, coefficient), validate=False
        )
        V = extract_v(law, p, h)
        W = extract_v(conjugate, p, h)
        for n in range(1, h + 1):
            assert Ideal(R, V.v[1:n + 1]) == Ideal(R, W.v[1:n + 1])

    def test_ideals_survive_coordinate_change(self):
        rng = random.Random(7)
        for _ in range(self.CASES):
            p = rng.choice((2, 3))
            self.check(rng, p, 2 if p == 2 else 1, self.random_poly)

    @pytest.mark.slow
    def test_ideals_over_f3_up_to_v2(self):
        def sparse(rng, R):
            return rng.choice((R.zero, R.one, R.gen("a"), R.gen("b")))

        rng = random.Random(8)
        for _ in range(self.CASES):
            self.check(rng, 3, 2, sparse)
