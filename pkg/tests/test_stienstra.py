from fractions import Fraction

import pytest
import sympy

from brauerkit import catalog
from brauerkit.algebra import PrimeField
from brauerkit.errors import SurfaceError
from brauerkit.fgl import FINITE, INDETERMINATE
from brauerkit.reproduce import FERMAT_LAW
from brauerkit.stienstra import (
    CompleteIntersectionK3,
    DoublePlaneK3,
    beta_sequence,
    brauer_fgl,
    brauer_height,
    brauer_p_series,
    ci_log,
    dp_log,
    family_log,
)


class TestSurfaces:
    def test_quartic(self):
        X = catalog.fermat_quartic()
        assert X.n == 3
        assert X.coordinates == ("x0", "x1", "x2", "x3")
        assert X.params == ()

    def test_family_parameters(self):
        assert catalog.quartic_family().params == ("a", "b")
        assert catalog.sextic_family().params == ("a", "b")

    def test_wrong_degree(self):
        with pytest.raises(SurfaceError):
            CompleteIntersectionK3.parse(["x0^3 + x1^3 + x2^3 + x3^3"])

    def test_not_homogeneous(self):
        with pytest.raises(SurfaceError):
            CompleteIntersectionK3.parse(["x0^4 + x1^3"])

    def test_complete_intersection_of_quadric_and_cubic(self):
        X = CompleteIntersectionK3.parse(
            ["x0^2 + x1^2 + x2^2 + x3^2 + x4^2",
             "x0^3 + x1^3 + x2^3 + x3^3 + x4^3"]
        )
        assert X.n == 4
        assert beta_sequence(X, 1) == [1]

    def test_sextic_degree(self):
        with pytest.raises(SurfaceError):
            DoublePlaneK3.parse("x0^4 + x1^4 + x2^4")

    def test_specialize_and_reduce(self):
        X = catalog.sextic_family().specialize({"a": 0, "b": 0})
        assert X.params == ()
        Y = X.reduce_mod_p(3)
        assert isinstance(Y.base, PrimeField)


class TestBetas:
    def test_fermat_betas(self):
        assert beta_sequence(catalog.fermat_quartic(), 13) == [
            1, 0, 0, 0, 24, 0, 0, 0, 2520, 0, 0, 0, 369600,
        ]

    def test_fermat_betas_closed_form(self):
        betas = beta_sequence(catalog.fermat_quartic(), 17)
        for m in range(5):
            closed = sympy.factorial(4 * m) / sympy.factorial(m) ** 4
            assert betas[4 * m] == closed

    def test_double_sextic_betas(self):
        # (x0 x1 x2)^6 in f^3 is 3!, (x0 x1 x2)^12 in f^6 is 6!/(2!)^3
        betas = beta_sequence(catalog.diagonal_sextic(), 13)
        assert [m for m, b in enumerate(betas, start=1) if b] == [1, 7, 13]
        assert betas[6] == 6
        assert betas[12] == 90

    def test_first_beta_is_one(self):
        assert beta_sequence(catalog.quartic_family(), 1)[0] == 1

    def test_needs_positive_count(self):
        with pytest.raises(SurfaceError):
            beta_sequence(catalog.fermat_quartic(), 0)

    def test_ci_log(self):
        L = ci_log(catalog.fermat_quartic(), 9)
        assert L.order == 10
        assert L.coefficient((5,)) == Fraction(24, 5)
        assert L.coefficient((9,)) == 280

    def test_dp_log(self):
        L = dp_log(catalog.diagonal_sextic(), 7)
        assert L.coefficient((7,)) == Fraction(6, 7)

    def test_truncated_family_betas(self):
        X = catalog.sextic_family()
        betas = beta_sequence(X, 3, truncation=[(1, 0), (0, 1)])
        assert all(b.is_constant() for b in betas)


class TestBrauerLaw:
    def test_fermat_law_over_integers(self):
        assert brauer_fgl(catalog.fermat_quartic(), N=11).render() == (
            FERMAT_LAW
        )

    def test_fermat_law_mod_3_is_additive_to_order_11(self):
        law = brauer_fgl(catalog.fermat_quartic(), p=3, N=11)
        assert law.render() == "x + y + O(11)"

    def test_fermat_p_series(self):
        X = catalog.fermat_quartic()
        assert brauer_p_series(X, 5, 11).render() == "4*t^5 + O(11)"
        assert brauer_p_series(X, 3, 11).render() == "0 + O(11)"

    def test_fermat_heights(self):
        X = catalog.fermat_quartic()
        result = brauer_height(X, 5, 1, 11)
        assert result.kind == FINITE and result.value == 1
        result = brauer_height(X, 3, 2)
        assert result.kind == INDETERMINATE
        assert str(result) == "indeterminate at order 10"

    def test_double_sextic_height(self):
        assert str(brauer_height(catalog.diagonal_sextic(), 7, 1)) == "1"

    @pytest.mark.slow
    def test_double_sextic_supersingular_prime(self):
        result = brauer_height(catalog.diagonal_sextic(), 11, 2)
        assert result.kind == INDETERMINATE


class TestFamilyLog:
    def test_betas_are_parameter_polynomials(self):
        X = catalog.sextic_family()
        betas = family_log(X, 3)
        assert betas[0] == 1
        assert betas[2] == X.coefficient_ring().gen("b")

    def test_quartic_family_second_beta(self):
        assert family_log(catalog.quartic_family(), 2) == [1, 0]

    def test_needs_parameters(self):
        with pytest.raises(SurfaceError):
            family_log(catalog.fermat_quartic(), 5)
