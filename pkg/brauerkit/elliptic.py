"""
brauerkit/elliptic.py

Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 whose
coefficients are polynomials in t, their discriminants, and the formal
group law of the elliptic curve they define.

The law is computed in the local parameter z = -x/y with w = -1/y:
w(z) comes from its fixed-point equation, the chord through two points
has slope given by the divided difference of w, and the third point of
intersection is negated with the curve's inverse. The law is published
in the parameter x/y, that is H(x, y) = -G(-x, -y), whose expansion
starts x + y + a1 xy - a2 (x^2 y + x y^2).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Mapping, Optional, Sequence, Tuple

from brauerkit.algebra import (
    Integers,
    MultiPoly,
    PolyRing,
    PrimeField,
    Ring,
    parse_poly,
)
from brauerkit.errors import NormalizationError, TruncationError
from brauerkit.fgl import FormalGroupLaw, base_change, validate_fgl
from brauerkit.series import (
    TruncSeries,
    series_exact_divide,
    series_substitute,
)

logger = logging.getLogger(__name__)

COEFFICIENT_NAMES = ("a1", "a2", "a3", "a4", "a6")
WEIGHTS = {"a1": 1, "a2": 2, "a3": 3, "a4": 4, "a6": 6}
UNIVERSAL_MAX_ORDER = 18
LAW_VARIABLES = ("x", "y")


@dataclass(frozen=True)
class WeierstrassModel:
    """Five coefficients a_i(t) over k[t] or k[t, params].

    Attributes:
        ring (PolyRing): Polynomial ring with t as its Laurent variable.
        a1, a2, a3, a4, a6 (MultiPoly): The Weierstrass coefficients.
    """

    ring: PolyRing
    a1: MultiPoly
    a2: MultiPoly
    a3: MultiPoly
    a4: MultiPoly
    a6: MultiPoly

    @classmethod
    def parse(cls, coefficients: Mapping[str, str], base: Ring,
              params: Sequence[str] = (), var: str = "t"):
        """Build a model from polynomial strings; missing a_i are zero."""
        ring = PolyRing(base, (var,) + tuple(params), laurent=var)
        values = [
            parse_poly(coefficients[name], ring)
            if coefficients.get(name, "").strip() else ring.zero
            for name in COEFFICIENT_NAMES
        ]
        return cls(ring, *values)

    @property
    def coefficients(self) -> Tuple[MultiPoly, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def t(self) -> str:
        return self.ring.laurent or self.ring.variables[0]

    @property
    def params(self) -> Tuple[str, ...]:
        return tuple(v for v in self.ring.variables if v != self.t)

    @property
    def field(self) -> Ring:
        return self.ring.base

    def t_degree(self, name: str) -> int:
        a = dict(zip(COEFFICIENT_NAMES, self.coefficients))[name]
        return a.degree(self.t) if a else -1

    def specialize_params(self, values: Mapping[str, object]):
        kept = tuple(v for v in self.params if v not in values)
        target = PolyRing(self.field, (self.t,) + kept, laurent=self.t)
        return WeierstrassModel(
            target,
            *(a.substitute(values, target) for a in self.coefficients),
        )


@dataclass(frozen=True)
class K3ShapeReport:
    is_k3_shape: bool
    is_minimal_hint: bool
    degrees: Tuple[int, ...]
    valuation: Optional[int]


@dataclass(frozen=True)
class Discriminant:
    delta: MultiPoly
    t_adic_valuation: Optional[int]


def b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = (
        a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4
        + a2 * a3 * a3 - a4 * a4
    )
    return b2, b4, b6, b8


def discriminant_of(a1, a2, a3, a4, a6):
    b2, b4, b6, b8 = b_invariants(a1, a2, a3, a4, a6)
    return (
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    )


def discriminant(W: WeierstrassModel) -> Discriminant:
    """Delta(t) from the b-invariants, with its t-adic valuation."""
    delta = W.ring.coerce(discriminant_of(*W.coefficients))
    valuation = delta.min_degree(W.t) if delta else None
    return Discriminant(delta, valuation)


def validate_k3(W: WeierstrassModel) -> K3ShapeReport:
    """Check deg a_i <= 2i for all i and deg a_i > i for some i."""
    degrees = tuple(W.t_degree(name) for name in COEFFICIENT_NAMES)
    bounded = all(d <= 2 * WEIGHTS[n] for n, d in
                  zip(COEFFICIENT_NAMES, degrees))
    excess = any(d > WEIGHTS[n] for n, d in zip(COEFFICIENT_NAMES, degrees))
    disc = discriminant(W)
    minimal = disc.t_adic_valuation is not None and (
        disc.t_adic_valuation < 12
    )
    return K3ShapeReport(bounded and excess, minimal, degrees,
                         disc.t_adic_valuation)


def w_expansion(ring: Ring, coeffs, order: int, var: str = "z"):
    """w(z) = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3."""
    a1, a2, a3, a4, a6 = coeffs
    z = TruncSeries.variable(ring, (var,), order, var)
    z2 = z * z
    z3 = z2 * z
    w = TruncSeries.zero(ring, (var,), order)
    for step in range(order):
        w2 = w * w
        nxt = z3
        if a1:
            nxt = nxt + (z * w).scale(a1)
        if a2:
            nxt = nxt + (z2 * w).scale(a2)
        if a3:
            nxt = nxt + w2.scale(a3)
        if a4:
            nxt = nxt + (z * w2).scale(a4)
        if a6:
            nxt = nxt + (w2 * w).scale(a6)
        if nxt == w:
            logger.debug(f"w(z) stable after {step} iterations")
            break
        w = nxt
    return w


def _negate_arguments(series: TruncSeries) -> TruncSeries:
    """-S(-x, -y): flips the sign of every even-degree term."""
    return TruncSeries(
        series.ring, series.vars, series.order,
        {e: (c if sum(e) % 2 else -c) for e, c in series.terms.items()},
        trusted=True,
    )


def elliptic_fgl(ring: Ring, coeffs, N: int, associativity: bool = False,
                 vars=LAW_VARIABLES) -> FormalGroupLaw:
    """Formal group law of the Weierstrass curve with coefficients `coeffs`.

    Only ring operations and exact divisions by series with a unit
    constant term or by z2 - z1 are used, so any characteristic works.
    """
    coeffs = tuple(ring.coerce(a) for a in coeffs)
    a1, a2, a3, a4, a6 = coeffs
    w = w_expansion(ring, coeffs, N + 1)

    z1 = TruncSeries.variable(ring, vars, N + 1, vars[0])
    z2 = TruncSeries.variable(ring, vars, N + 1, vars[1])
    w1 = series_substitute(w, [z1])
    w2 = series_substitute(w, [z2])
    slope = series_exact_divide(w2 - w1, z2 - z1)

    z1, w1 = z1.truncate(N), w1.truncate(N)
    z2 = z2.truncate(N)
    one = TruncSeries.constant(ring, vars, N, 1)
    icept = w1 - slope * z1
    sq = slope * slope
    A = one
    B = TruncSeries.zero(ring, vars, N)
    if a1:
        B = B + slope.scale(a1)
    if a2:
        A = A + slope.scale(a2)
        B = B + icept.scale(a2)
    if a3:
        B = B + sq.scale(a3)
    if a4:
        A = A + sq.scale(a4)
        B = B + (slope * icept).scale(2 * a4)
    if a6:
        A = A + (sq * slope).scale(a6)
        B = B + (sq * icept).scale(3 * a6)
    z3 = -z1 - z2 - series_exact_divide(B, A)
    w3 = slope * z3 + icept
    denom = z3.scale(a1) + w3.scale(a3) - one
    G = series_exact_divide(z3, denom)

    zvar = TruncSeries.variable(ring, (vars[0],), N, vars[0])
    wz = w.truncate(N)
    if vars[0] != "z":
        wz = TruncSeries(ring, (vars[0],), N, wz.terms, trusted=True)
    inv_den = zvar.scale(a1) + wz.scale(a3) - TruncSeries.constant(
        ring, (vars[0],), N, 1
    )
    inverse = series_exact_divide(zvar, inv_den)

    H = _negate_arguments(G)
    inverse = _negate_arguments(inverse)
    logger.debug(f"elliptic law of order {N} has {len(H.terms)} terms")
    return validate_fgl(H, associativity=associativity, inverse=inverse)


@lru_cache(maxsize=None)
def universal_elliptic_fgl(N: int, validate: bool = True) -> FormalGroupLaw:
    """The law over Z[a1, a2, a3, a4, a6], cached per order.

    Raises:
        TruncationError: Above the supported order.
    """
    if N > UNIVERSAL_MAX_ORDER:
        raise TruncationError(
            f"universal law limited to order {UNIVERSAL_MAX_ORDER}, got {N}"
        )
    ring = PolyRing(Integers(), COEFFICIENT_NAMES)
    return elliptic_fgl(ring, ring.gens(), N, associativity=validate)


def specialize(W: WeierstrassModel, N: int, via_universal: bool = False,
               associativity: bool = False) -> FormalGroupLaw:
    """The elliptic law of W over its coefficient ring k[t, params].

    The default computes directly over k[t]; `via_universal` maps the
    universal law instead, which must give the same series.
    """
    report = validate_k3(W)
    if not report.is_k3_shape:
        logger.warning(
            f"model degrees {report.degrees} do not describe an elliptic K3"
        )
    if via_universal:
        universal = universal_elliptic_fgl(N, validate=False)
        assignment = dict(zip(COEFFICIENT_NAMES, W.coefficients))
        return base_change(universal, W.ring, assignment,
                           validate=associativity)
    return elliptic_fgl(W.ring, W.coefficients, N,
                        associativity=associativity)


def char2_coefficients(W: WeierstrassModel) -> Dict[Tuple[int, int], int]:
    """The values a_{i,j} (coefficient of t^j in a_i) of a model over F_2."""
    if not isinstance(W.field, PrimeField) or W.field.modulus != 2:
        raise NormalizationError("char-2 coefficients need a model over F_2")
    if W.params:
        raise NormalizationError(
            "char-2 coefficients need a model over F_2[t]"
        )
    out = {}
    ti = W.ring.index(W.t)
    for name, a in zip(COEFFICIENT_NAMES, W.coefficients):
        i = WEIGHTS[name]
        for e, c in a.terms.items():
            out[(i, e[ti])] = c % 2
    return out
