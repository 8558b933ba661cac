"""
brauerkit/artin.py

The formal Brauer group of an elliptic K3 surface from the formal group
law of its generic fibre.

Starting from F = x/t + y/t under the elliptic law over k[t, 1/t], every
term of t-degree other than -1 is a coboundary and is removed by adding
its formal negative: F := G(F, i(B+)) then F := G(F, i(B-)), where B+ and
B- collect the terms of t-degree above and below -1. Once only t-degree
-1 remains, tF is the formal Brauer group law over k.

Also here is the characteristic 2 height criterion in terms of the
coefficients a_{i,j} of t^j in a_i(t).
"""

import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

from brauerkit.algebra import MultiPoly, PolyRing, Ring
from brauerkit.elliptic import WeierstrassModel, specialize, validate_k3
from brauerkit.errors import (
    ConvergenceError,
    NormalizationError,
    SurfaceError,
    UnsupportedRingError,
)
from brauerkit.fgl import FormalGroupLaw, formal_inverse, validate_fgl
from brauerkit.series import TruncSeries, series_substitute

logger = logging.getLogger(__name__)

H1 = "h=1"
H2 = "h>=2"
H3 = "h>=3"
H4 = "h>=4"

# Monomials of the degree-2 obstruction, as lists of (i, j) for a_{i,j}.
CHAR2_OBSTRUCTION = (
    ((1, 0), (1, 0), (1, 0), (4, 7)),
    ((1, 0), (1, 0), (4, 5)),
    ((1, 0), (3, 1), (3, 6)),
    ((1, 0), (3, 2), (3, 5)),
    ((1, 0), (4, 3)),
    ((1, 0), (6, 7)),
    ((3, 0), (3, 5)),
    ((3, 0), (4, 7)),
    ((3, 1), (3, 4)),
    ((3, 1), (4, 6)),
    ((3, 2), (4, 5)),
    ((3, 4), (4, 3)),
    ((3, 5), (4, 2)),
    ((3, 6), (4, 1)),
    ((4, 1),),
    ((6, 5),),
)


@dataclass(frozen=True)
class CocycleState:
    """The series being reduced and how many rounds it took.

    Attributes:
        F (TruncSeries): Current representative over k[t, 1/t, params].
        iteration (int): Completed elimination rounds.
        max_iter (int): Bound on rounds.
    """

    F: TruncSeries
    iteration: int
    max_iter: int


def _t_index(ring: Ring) -> int:
    if not isinstance(ring, PolyRing) or ring.laurent is None:
        raise UnsupportedRingError(
            f"coboundary elimination needs a Laurent ring in t, got {ring}"
        )
    return ring.laurent_index


def split_t_degree(F: TruncSeries, target: int = -1):
    """(B+, B-): the parts of F of t-degree above and below `target`."""
    ring = F.ring
    ti = _t_index(ring)
    plus: Dict = {}
    minus: Dict = {}
    for e, c in F.terms.items():
        hi: Dict = {}
        lo: Dict = {}
        for ce, cc in c.terms.items():
            if ce[ti] > target:
                hi[ce] = cc
            elif ce[ti] < target:
                lo[ce] = cc
        if hi:
            plus[e] = MultiPoly(ring, hi, trusted=True)
        if lo:
            minus[e] = MultiPoly(ring, lo, trusted=True)
    return (
        TruncSeries(ring, F.vars, F.order, plus, trusted=True),
        TruncSeries(ring, F.vars, F.order, minus, trusted=True),
    )


def _residual(plus: TruncSeries, minus: TruncSeries):
    return [
        f"{series.ring.render(c)}*{'*'.join(series.vars)}{e}"
        for series in (plus, minus)
        for e, c in sorted(series.terms.items())
    ]


def _t_span(F: TruncSeries, ti: int) -> int:
    return max(
        (abs(ce[ti]) for c in F.terms.values() for ce in c.terms),
        default=0,
    )


def _check_unital(F: TruncSeries, ti: int) -> None:
    ring = F.ring
    expected = ring.gen(ring.variables[ti]) ** -1
    for e, c in F.terms.items():
        if 0 in e and sum(e) > 0:
            if sum(e) != 1 or c != expected:
                raise ConvergenceError(
                    f"reduction lost unitality at {F.vars}{e}"
                )


def eliminate_coboundaries(F: TruncSeries, law: FormalGroupLaw,
                           inverse: TruncSeries, max_iter: int,
                           bound: Optional[int] = None) -> CocycleState:
    """Remove every term of t-degree other than -1 from F.

    The lowest series degree carrying such a term strictly increases
    every round, so at most order - 1 rounds are needed.

    Raises:
        ConvergenceError: Bound exceeded, stalled, or t-degrees escaped.
    """
    ti = _t_index(F.ring)
    last = -1
    for iteration in range(max_iter + 1):
        plus, minus = split_t_degree(F)
        if not plus and not minus:
            logger.debug(f"coboundaries eliminated after {iteration} rounds")
            return CocycleState(F, iteration, max_iter)
        if iteration == max_iter:
            raise ConvergenceError(
                f"no convergence within {max_iter} rounds",
                _residual(plus, minus),
            )
        level = min(plus.valuation(), minus.valuation())
        if level <= last:
            raise ConvergenceError(
                f"elimination stalled at degree {level}",
                _residual(plus, minus),
            )
        last = level
        for B in (plus, minus):
            if B:
                F = law(F, series_substitute(inverse, [B]))
        if bound is not None and _t_span(F, ti) > bound:
            raise ConvergenceError(
                f"t-degrees left the window [-{bound}, {bound}]"
            )
        if len(F.vars) == 2:
            _check_unital(F, ti)
        logger.debug(
            f"round {iteration + 1}: offending terms started in degree "
            f"{level}"
        )
    raise ConvergenceError(f"no convergence within {max_iter} rounds")


def _target_ring(ring: PolyRing) -> Ring:
    rest = tuple(v for v in ring.variables if v != ring.laurent)
    if not rest:
        return ring.base
    return PolyRing(ring.base, rest)


def times_t(F: TruncSeries, target_degree: int = -1) -> TruncSeries:
    """Multiply a series whose coefficients are c t^-1 by t and drop t."""
    ring = F.ring
    ti = _t_index(ring)
    target = _target_ring(ring)
    out = {}
    for e, c in F.terms.items():
        mapped = {}
        for ce, cc in c.terms.items():
            if ce[ti] != target_degree:
                raise ConvergenceError(
                    f"term of t-degree {ce[ti]} survived the reduction"
                )
            mapped[ce[:ti] + ce[ti + 1:]] = cc
        if isinstance(target, PolyRing):
            out[e] = MultiPoly(target, mapped, trusted=True)
        else:
            out[e] = mapped[()]
    return TruncSeries(target, F.vars, F.order, out, trusted=True)


def _scaled_variables(law: FormalGroupLaw, count: int):
    ring = law.ring
    ti = _t_index(ring)
    t_inv = ring.gen(ring.variables[ti]) ** -1
    vars = law.vars[:count]
    return [
        TruncSeries.variable(ring, vars, law.order, v).scale(t_inv)
        for v in vars
    ]


def _depends_on_t(law: FormalGroupLaw) -> bool:
    ti = _t_index(law.ring)
    return any(
        ce[ti] for c in law.series.terms.values() for ce in c.terms
    )


def _window(law: FormalGroupLaw) -> int:
    ti = _t_index(law.ring)
    span = max(1, _t_span(law.series, ti))
    return law.order * (span + 1)


def run_artin(G_ell: FormalGroupLaw, N: Optional[int] = None,
              max_iter: Optional[int] = None, validate: bool = True
              ) -> Tuple[FormalGroupLaw, CocycleState]:
    """Coboundary elimination on x/t + y/t; returns the law and the state."""
    if N is not None and N != G_ell.order:
        G_ell = FormalGroupLaw(G_ell.series.truncate(N),
                               G_ell.inverse.truncate(N)
                               if G_ell.inverse is not None else None)
    N = G_ell.order
    max_iter = max_iter or 2 * N
    if not _depends_on_t(G_ell):
        raise SurfaceError(
            "the elliptic law does not involve t; the model is not an "
            "elliptic K3 surface"
        )
    inverse = G_ell.inverse if G_ell.inverse is not None else (
        formal_inverse(G_ell)
    )
    x, y = _scaled_variables(G_ell, 2)
    F = G_ell(x, y)
    state = eliminate_coboundaries(F, G_ell, inverse, max_iter,
                                   _window(G_ell))
    series = times_t(state.F)
    law = validate_fgl(series) if validate else FormalGroupLaw(series)
    return law, state


def artin_reduce(G_ell: FormalGroupLaw, N: Optional[int] = None,
                 max_iter: Optional[int] = None) -> FormalGroupLaw:
    """The formal Brauer group law over k (or k[params]), validated."""
    law, _ = run_artin(G_ell, N, max_iter)
    return law


def artin_family(W: WeierstrassModel, N: int,
                 max_iter: Optional[int] = None,
                 validate: bool = True) -> FormalGroupLaw:
    """Formal Brauer group law of a Weierstrass family over F_p[params]."""
    report = validate_k3(W)
    if not report.is_k3_shape:
        raise SurfaceError(
            f"model degrees {report.degrees} do not describe an elliptic K3"
        )
    law, _ = run_artin(specialize(W, N), N, max_iter, validate)
    return law


def artin_p_series(G_ell: FormalGroupLaw, p: int,
                   max_iter: Optional[int] = None) -> TruncSeries:
    """[p] of the formal Brauer group without forming the bivariate law.

    The p-fold sum of x/t under the elliptic law is reduced to t-degree
    -1 the same way, and t times the result is the p-series.
    """
    N = G_ell.order
    max_iter = max_iter or 2 * N
    if not _depends_on_t(G_ell):
        raise SurfaceError("the elliptic law does not involve t")
    inverse = G_ell.inverse if G_ell.inverse is not None else (
        formal_inverse(G_ell)
    )
    (x,) = _scaled_variables(G_ell, 1)
    P = x
    for _ in range(p - 1):
        P = G_ell(P, x)
    state = eliminate_coboundaries(P, G_ell, inverse, max_iter,
                                   _window(G_ell) * p)
    return times_t(state.F)


def shortcut_law(G_ell: FormalGroupLaw) -> TruncSeries:
    """t times the t-degree -1 part of x/t + y/t, without elimination.

    This is not a formal group law in general; it fails associativity.
    """
    x, y = _scaled_variables(G_ell, 2)
    F = G_ell(x, y)
    ring = F.ring
    ti = _t_index(ring)
    kept = {}
    for e, c in F.terms.items():
        part = {ce: cc for ce, cc in c.terms.items() if ce[ti] == -1}
        if part:
            kept[e] = MultiPoly(ring, part, trusted=True)
    return times_t(TruncSeries(ring, F.vars, F.order, kept, trusted=True))


def char2_height_predicate(coeffs: Mapping[Tuple[int, int], int]) -> str:
    """Lower bound on the height of an elliptic K3 surface in char 2.

    The model must be normalized with a2 = 0 and a_{1,2} = 1.

    Raises:
        NormalizationError: If the normalization does not hold.
    """
    def a(i, j):
        return coeffs.get((i, j), 0) % 2

    if any(v % 2 for (i, _), v in coeffs.items() if i == 2):
        raise NormalizationError("a2 must vanish")
    if a(1, 2) != 1:
        raise NormalizationError("a_{1,2} must equal 1")
    if a(1, 1):
        return H1
    if a(3, 3):
        return H2
    obstruction = 0
    for monomial in CHAR2_OBSTRUCTION:
        value = 1
        for i, j in monomial:
            value *= a(i, j)
        obstruction ^= value
    if obstruction:
        return H3
    return H4
