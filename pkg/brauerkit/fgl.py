"""
brauerkit/fgl.py

One-dimensional commutative formal group laws as certified objects.

A `FormalGroupLaw` wraps a two-variable `TruncSeries` that passed
`validate_fgl`: unitality, commutativity and associativity checked in a
genuine three-variable truncated ring. The module also provides the
logarithm and the law recovered from a logarithm over the rationals,
p-series, p-typical logarithms, heights and base change.

Example usage:

    >>> from brauerkit.algebra import Integers
    >>> from brauerkit.series import TruncSeries
    >>> R = Integers()
    >>> x = TruncSeries.variable(R, ("x", "y"), 6, "x")
    >>> y = TruncSeries.variable(R, ("x", "y"), 6, "y")
    >>> law = validate_fgl(x + y - x * y)
    >>> print(p_series(law, 2))
    2*x - x^2 + O(6)
"""

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional

from brauerkit.algebra import (
    Ring,
    convert,
    grevlex_key,
    reduce_ring_mod_p,
    render_monomial,
)
from brauerkit.errors import FGLAxiomError, TruncationError
from brauerkit.series import (
    TruncSeries,
    series_exact_divide,
    series_reversion,
    series_solve,
    series_substitute,
)

logger = logging.getLogger(__name__)

FINITE = "finite"
INFINITE = "infinite"
INDETERMINATE = "indeterminate"
NONCONSTANT = "nonconstant"


@dataclass(frozen=True)
class FormalGroupLaw:
    """A series G(x, y) certified to satisfy the formal group law axioms.

    Attributes:
        series (TruncSeries): G as a two-variable truncated series.
        inverse (TruncSeries): Optional formal inverse i with G(x, i(x)) = 0.
    """

    series: TruncSeries
    inverse: Optional[TruncSeries] = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def ring(self) -> Ring:
        return self.series.ring

    @property
    def vars(self):
        return self.series.vars

    def __call__(self, u: TruncSeries, v: TruncSeries) -> TruncSeries:
        return series_substitute(self.series, [u, v])

    def render(self) -> str:
        return self.series.render()

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class HeightResult:
    """Outcome of a height computation.

    `kind` is "finite" (value h, leading unit u), "infinite" (only for the
    additive law), "indeterminate" (everything vanished below `order`) or
    "nonconstant" (first coefficient u at t^(p^h) is not a unit, which
    happens over parameter rings; the height is at least h).
    """

    kind: str
    value: Optional[int] = None
    leading_unit: object = None
    order: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == FINITE:
            return str(self.value)
        if self.kind == INFINITE:
            return "infinite"
        if self.kind == NONCONSTANT:
            return f"at least {self.value}"
        return f"indeterminate at order {self.order}"


def _first_monomial(exponents):
    """Lowest degree first, descending grevlex within a degree."""
    return min(
        exponents,
        key=lambda e: (sum(e), tuple(-k for k in grevlex_key(e)[1])),
    )


def _violation(axiom: str, series: TruncSeries, exponents):
    e = _first_monomial(exponents)
    mono = render_monomial(series.vars, e) or "1"
    return FGLAxiomError(axiom, mono, sum(e))


def check_unitality(series: TruncSeries) -> None:
    bad = []
    for e, c in series.terms.items():
        if e[0] == 0 or e[1] == 0:
            if sum(e) != 1 or c != 1:
                bad.append(e)
    for e in ((1, 0), (0, 1)):
        if e not in series.terms and series.order > 1:
            bad.append(e)
    if bad:
        raise _violation("unitality", series, bad)


def check_commutativity(series: TruncSeries) -> None:
    bad = [
        e for e, c in series.terms.items()
        if series.terms.get((e[1], e[0])) != c
    ]
    if bad:
        raise _violation("commutativity", series, bad)


def check_associativity(series: TruncSeries) -> None:
    ring, N = series.ring, series.order
    vars3 = tuple(series.vars) + ("z",)
    x, y, z = (TruncSeries.variable(ring, vars3, N, v) for v in vars3)
    xy = series_substitute(series, [x, y])
    yz = series_substitute(series, [y, z])
    left = series_substitute(series, [xy, z])
    right = series_substitute(series, [x, yz])
    diff = left - right
    if diff:
        raise _violation("associativity", diff, list(diff.terms))


def validate_fgl(series: TruncSeries, associativity: bool = True,
                 inverse: Optional[TruncSeries] = None) -> FormalGroupLaw:
    """Certify `series` as a formal group law up to its order.

    Raises:
        FGLAxiomError: Naming the first violated axiom and monomial.
    """
    if len(series.vars) != 2:
        raise TruncationError("a formal group law has two variables")
    if series.order < 2:
        raise TruncationError("a formal group law needs order at least 2")
    check_unitality(series)
    check_commutativity(series)
    if associativity:
        check_associativity(series)
    logger.debug(
        f"validated law of order {series.order} with "
        f"{len(series.terms)} terms over {series.ring}"
    )
    return FormalGroupLaw(series, inverse)


def logarithm(law: FormalGroupLaw) -> TruncSeries:
    """The logarithm, the integral of 1 / (dG/dy)(x, 0)."""
    series = law.series
    N = series.order
    x = series.vars[0]
    dy = {(i,): c for (i, j), c in series.terms.items() if j == 1}
    derivative = TruncSeries(series.ring, (x,), N - 1, dy, trusted=True)
    one = TruncSeries.constant(series.ring, (x,), N - 1, 1)
    return series_exact_divide(one, derivative).integrate()


def bivariate_sum(L: TruncSeries, vars=("x", "y")) -> TruncSeries:
    """L(x) + L(y) as a two-variable series."""
    x = TruncSeries.variable(L.ring, vars, L.order, vars[0])
    y = TruncSeries.variable(L.ring, vars, L.order, vars[1])
    return series_substitute(L, [x]) + series_substitute(L, [y])


def fgl_from_log(L: TruncSeries, validate: bool = True,
                 vars=("x", "y")) -> FormalGroupLaw:
    """The law exp(L(x) + L(y)) of a logarithm L."""
    exp = series_reversion(L)
    G = series_substitute(exp, [bivariate_sum(L, vars)])
    if validate:
        return validate_fgl(G)
    return FormalGroupLaw(G)


def p_series(law: FormalGroupLaw, p: int) -> TruncSeries:
    """The p-fold formal sum of t with itself, in the law's first variable."""
    var = law.vars[0]
    t = TruncSeries.variable(law.ring, (var,), law.order, var)
    acc = t
    for _ in range(p - 1):
        acc = law(acc, t)
    return acc


def p_series_from_log(L: TruncSeries, p: int) -> TruncSeries:
    """The s with L(s) = p L(t), that is exp(p log t)."""
    return series_solve(L, L.scale(p))


def is_power_of(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def p_typicalize_log(L: TruncSeries, p: int) -> TruncSeries:
    """Keep only the terms t^(p^k) of a logarithm."""
    terms = {e: c for e, c in L.terms.items() if is_power_of(e[0], p)}
    return TruncSeries(L.ring, L.vars, L.order, terms, trusted=True)


def formal_inverse(law: FormalGroupLaw) -> TruncSeries:
    """The series i(x) with G(x, i(x)) = 0."""
    var = law.vars[0]
    x = TruncSeries.variable(law.ring, (var,), law.order, var)
    inv = -x
    for _ in range(law.order):
        defect = law(x, inv)
        if not defect:
            break
        inv = inv - defect
    return inv


def coordinate_change(law: FormalGroupLaw, phi: TruncSeries,
                      validate: bool = True) -> FormalGroupLaw:
    """The conjugate law phi^-1(G(phi(x), phi(y)))."""
    series = law.series
    x = TruncSeries.variable(series.ring, series.vars, law.order,
                             series.vars[0])
    y = TruncSeries.variable(series.ring, series.vars, law.order,
                             series.vars[1])
    phi_inv = series_reversion(phi)
    inner = law(series_substitute(phi, [x]), series_substitute(phi, [y]))
    G = series_substitute(phi_inv, [inner])
    return validate_fgl(G) if validate else FormalGroupLaw(G)


def reduce_series_mod_p(series: TruncSeries, p: int) -> TruncSeries:
    target = reduce_ring_mod_p(series.ring, p)
    source = series.ring
    return series.map_coefficients(
        lambda c: convert(c, source, target), target
    )


def height_from_p_series(ps: TruncSeries, p: int, h_max: int,
                         additive: bool = False) -> HeightResult:
    """Read the height off a p-series, reducing it modulo p first."""
    N = ps.order
    if N <= p ** h_max:
        raise TruncationError(
            f"order {N} cannot resolve height {h_max} at p={p}; "
            f"need more than {p ** h_max}"
        )
    reduced = reduce_series_mod_p(ps, p)
    if not reduced:
        if additive:
            return HeightResult(INFINITE)
        return HeightResult(INDETERMINATE, order=N)
    (e,) = min(reduced.terms)
    if not is_power_of(e, p):
        raise FGLAxiomError("p-series shape", f"{ps.vars[0]}^{e}", e)
    h = 0
    while p ** h < e:
        h += 1
    u = reduced.terms[(e,)]
    if not reduced.ring.is_unit(u):
        return HeightResult(NONCONSTANT, h, u, N)
    return HeightResult(FINITE, h, u, N)


def height_mod_p(law: FormalGroupLaw, p: int, h_max: int,
                 exact: bool = False) -> HeightResult:
    """Height of the reduction of `law` modulo p.

    "infinite" needs `exact`: the caller vouches that the series is the
    whole law, so a reduction to x + y is the additive law itself.
    """
    if law.order <= p ** h_max:
        raise TruncationError(
            f"order {law.order} cannot resolve height {h_max} at p={p}"
        )
    reduced = reduce_series_mod_p(law.series, p)
    x, y = reduced.vars
    additive = exact and reduced == (
        TruncSeries.variable(reduced.ring, reduced.vars, reduced.order, x)
        + TruncSeries.variable(reduced.ring, reduced.vars, reduced.order, y)
    )
    ps = p_series(FormalGroupLaw(reduced), p)
    result = height_from_p_series(ps, p, h_max, additive)
    logger.debug(f"height at p={p}: {result}")
    return result


def base_change(law: FormalGroupLaw, target: Ring,
                assignment: Optional[Mapping[str, object]] = None,
                validate: bool = True) -> FormalGroupLaw:
    """Map every coefficient into `target`, optionally substituting variables.

    Raises:
        UnmappableCoefficientError: When a coefficient has no image.
    """
    source = law.ring
    if assignment:
        def image(c):
            return c.substitute(assignment, target)
    else:
        def image(c):
            return convert(c, source, target)
    series = law.series.map_coefficients(image, target)
    if validate:
        return validate_fgl(series)
    return FormalGroupLaw(series)
