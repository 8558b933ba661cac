"""
brauerkit/stienstra.py

Logarithms of formal Brauer groups of K3 surfaces read off from
coefficients of powers of the defining equations.

For a complete intersection K3 surface cut out by f_1, ..., f_{n-2} in
projective n-space, the logarithm is sum_m beta_m t^m / m where beta_m is
the coefficient of (x_0 ... x_n)^(m-1) in (f_1 ... f_{n-2})^(m-1). For the
double cover w^2 = f of the plane branched along a sextic, beta_m
vanishes for even m and is the coefficient of (x_0 x_1 x_2)^(m-1) in
f^((m-1)/2) otherwise.

Classes:
    - CompleteIntersectionK3: quartic, (2,3) or (2,2,2) complete intersection.
    - DoublePlaneK3: double cover of the plane branched along a sextic.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from brauerkit.algebra import (
    Exponent,
    Integers,
    IntegersMod,
    MultiPoly,
    PolyRing,
    PrimeField,
    QuotientRing,
    Rationals,
    Ring,
    convert,
    parse_poly,
)
from brauerkit.errors import NonIntegralError, SurfaceError
from brauerkit.fgl import (
    FormalGroupLaw,
    HeightResult,
    base_change,
    fgl_from_log,
    height_from_p_series,
    p_series_from_log,
    reduce_series_mod_p,
)
from brauerkit.series import TruncSeries

logger = logging.getLogger(__name__)

LOG_VARIABLE = "t"


def coordinate_names(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n + 1))


class _K3Surface:
    """Shared plumbing of the two surface types."""

    coordinates: Tuple[str, ...] = ()

    @property
    def ring(self) -> PolyRing:
        raise NotImplementedError

    @property
    def params(self) -> Tuple[str, ...]:
        return tuple(
            v for v in self.ring.variables if v not in self.coordinates
        )

    @property
    def base(self) -> Ring:
        return self.ring.base

    def equations(self) -> Tuple[MultiPoly, ...]:
        raise NotImplementedError

    def expansion(self) -> MultiPoly:
        """The polynomial whose powers carry the beta coefficients."""
        raise NotImplementedError

    def beta_index(self, j: int) -> int:
        """The m with beta_m read from the j-th power."""
        raise NotImplementedError

    def target_exponent(self, j: int) -> int:
        raise NotImplementedError

    def _rebuild(self, equations):
        raise NotImplementedError

    def specialize(self, values: Mapping[str, object]):
        """Substitute values for some parameters."""
        kept = tuple(v for v in self.params if v not in values)
        target = PolyRing(self.base, self.coordinates + kept)
        return self._rebuild(
            tuple(f.substitute(values, target) for f in self.equations())
        )

    def reduce_mod_p(self, p: int):
        """The surface over F_p (or F_p[params])."""
        target = PolyRing(PrimeField(p), self.ring.variables)
        return self._rebuild(
            tuple(convert(f, self.ring, target) for f in self.equations())
        )

    def coefficient_ring(self, truncation: Sequence = ()) -> Ring:
        """Ring holding beta_m: the base, or base[params] mod truncation."""
        if not self.params:
            return self.base
        R = PolyRing(self.base, self.params)
        if truncation:
            return QuotientRing(R, tuple(_as_poly(m, R) for m in truncation))
        return R


def _as_poly(m, ring: PolyRing) -> MultiPoly:
    if isinstance(m, MultiPoly):
        return ring.coerce(m)
    if isinstance(m, str):
        return parse_poly(m, ring)
    return ring.monomial(m)


def _check_homogeneous(f: MultiPoly, coords: Sequence[int], what: str):
    if not f:
        raise SurfaceError(f"{what} is zero")
    if not f.is_homogeneous(coords):
        raise SurfaceError(f"{what} is not homogeneous: {f}")
    e = next(iter(f.terms))
    return sum(e[i] for i in coords)


@dataclass(frozen=True)
class CompleteIntersectionK3(_K3Surface):
    """Complete intersection of n-2 hypersurfaces in projective n-space.

    Attributes:
        n (int): Ambient dimension, 3, 4 or 5.
        polys (tuple): Homogeneous equations in x0..xn, degrees summing to
            n + 1. Further ring variables are parameters.
    """

    n: int
    polys: Tuple[MultiPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        object.__setattr__(self, "coordinates", coordinate_names(self.n))
        if self.n not in (3, 4, 5):
            raise SurfaceError(f"ambient dimension {self.n} not in 3..5")
        if len(self.polys) != self.n - 2:
            raise SurfaceError(
                f"P^{self.n} needs {self.n - 2} equations, "
                f"got {len(self.polys)}"
            )
        ring = self.polys[0].ring
        for name in self.coordinates:
            ring.index(name)
        coords = [ring.index(v) for v in self.coordinates]
        total = 0
        for i, f in enumerate(self.polys):
            if f.ring != ring:
                raise SurfaceError("equations live in different rings")
            total += _check_homogeneous(f, coords, f"f{i + 1}")
        if total != self.n + 1:
            raise SurfaceError(
                f"degrees sum to {total}, a K3 surface in P^{self.n} "
                f"needs {self.n + 1}"
            )

    @classmethod
    def parse(cls, texts: Sequence[str], params: Sequence[str] = (),
              base: Optional[Ring] = None) -> "CompleteIntersectionK3":
        n = len(texts) + 2
        names = coordinate_names(n) + tuple(params)
        ring = PolyRing(base or Integers(), names)
        return cls(n, tuple(parse_poly(t, ring) for t in texts))

    @property
    def ring(self) -> PolyRing:
        return self.polys[0].ring

    def equations(self):
        return self.polys

    def expansion(self) -> MultiPoly:
        g = self.ring.one
        for f in self.polys:
            g = g * f
        return g

    def beta_index(self, j: int) -> int:
        return j + 1

    def target_exponent(self, j: int) -> int:
        return j

    def _rebuild(self, equations):
        return CompleteIntersectionK3(self.n, equations)


@dataclass(frozen=True)
class DoublePlaneK3(_K3Surface):
    """The double cover w^2 = f of the plane branched along a sextic f."""

    sextic: MultiPoly

    def __post_init__(self):
        object.__setattr__(self, "coordinates", coordinate_names(2))
        ring = self.sextic.ring
        coords = [ring.index(v) for v in self.coordinates]
        degree = _check_homogeneous(self.sextic, coords, "branch curve")
        if degree != 6:
            raise SurfaceError(f"branch curve has degree {degree}, not 6")

    @classmethod
    def parse(cls, text: str, params: Sequence[str] = (),
              base: Optional[Ring] = None) -> "DoublePlaneK3":
        names = coordinate_names(2) + tuple(params)
        ring = PolyRing(base or Integers(), names)
        return cls(parse_poly(text, ring))

    @property
    def ring(self) -> PolyRing:
        return self.sextic.ring

    def equations(self):
        return (self.sextic,)

    def expansion(self) -> MultiPoly:
        return self.sextic

    def beta_index(self, j: int) -> int:
        return 2 * j + 1

    def target_exponent(self, j: int) -> int:
        return 2 * j

    def _rebuild(self, equations):
        return DoublePlaneK3(equations[0])


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def beta_sequence(X: _K3Surface, M: int, truncation: Sequence = ()):
    """beta_1, ..., beta_M as elements of `X.coefficient_ring(truncation)`.

    All powers of the expansion polynomial are formed in a single pass.
    Terms whose exponent in some coordinate exceeds M - 1 can never reach
    a target monomial and are dropped; so are parameter monomials in the
    truncation ideal.
    """
    if M < 1:
        raise SurfaceError(f"need at least one beta coefficient, M={M}")
    ring = X.ring
    coeff_ring = X.coefficient_ring(truncation)
    coords = [ring.index(v) for v in X.coordinates]
    params = [ring.index(v) for v in X.params]
    drop: List[Exponent] = []
    if truncation:
        for g in coeff_ring.generators:
            drop.extend(g.terms)
    cap = M - 1

    def keep(e: Exponent) -> bool:
        if any(e[i] > cap for i in coords):
            return False
        return not drop or not any(
            _divides(d, tuple(e[i] for i in params)) for d in drop
        )

    R = ring.sympy_ring
    g = R.from_dict({e: c for e, c in X.expansion().rep.items() if keep(e)})
    betas: Dict[int, object] = {}
    cur = R.one
    j = 0
    while True:
        target = X.target_exponent(j)
        found: Dict[Exponent, object] = {}
        for e, c in cur.items():
            if all(e[i] == target for i in coords):
                found[tuple(e[i] for i in params)] = c
        betas[X.beta_index(j)] = _as_coefficient(found, coeff_ring)
        if X.beta_index(j + 1) > M:
            break
        nxt = cur * g
        cur = R.from_dict({e: c for e, c in nxt.items() if keep(e)})
        j += 1
        logger.debug(f"power {j} of the expansion has {len(cur)} terms")
    zero = coeff_ring.zero
    return [betas.get(m, zero) for m in range(1, M + 1)]


def _as_coefficient(found: Dict[Exponent, object], ring: Ring):
    """Collected sympy coefficients as an element of `ring`."""
    if isinstance(ring, (PolyRing, QuotientRing)):
        rep = ring.poly_ring.sympy_ring.from_dict(found)
        return MultiPoly.from_rep(ring, rep)
    if () in found:
        return ring.domain_value(found[()])
    return ring.zero


def rational_ring(ring: Ring) -> Ring:
    """The same ring with integer coefficients replaced by rationals."""
    if isinstance(ring, (Integers, Rationals)):
        return Rationals()
    if isinstance(ring, PolyRing):
        return PolyRing(rational_ring(ring.base), ring.variables,
                        ring.laurent)
    if isinstance(ring, QuotientRing) and ring.is_monomial:
        target = rational_ring(ring.ring)
        return QuotientRing(
            target,
            tuple(convert(g, ring.ring, target) for g in ring.generators),
        )
    raise SurfaceError(f"{ring} has no rational version")


def log_from_betas(betas: Sequence, ring: Ring) -> TruncSeries:
    """sum beta_m t^m / m over the rational version of `ring`."""
    qring = rational_ring(ring)
    terms = {}
    for m, beta in enumerate(betas, start=1):
        if beta:
            terms[(m,)] = convert(beta, ring, qring) * qring.coerce(
                Fraction(1, m)
            )
    return TruncSeries(qring, (LOG_VARIABLE,), len(betas) + 1, terms,
                       trusted=True)


def ci_log(X: CompleteIntersectionK3, M: int,
           truncation: Sequence = ()) -> TruncSeries:
    """The logarithm up to t^M, as a series of order M + 1."""
    return log_from_betas(beta_sequence(X, M, truncation),
                          X.coefficient_ring(truncation))


def dp_log(X: DoublePlaneK3, M: int, truncation: Sequence = ()):
    """The logarithm of a double plane up to t^M."""
    return log_from_betas(beta_sequence(X, M, truncation),
                          X.coefficient_ring(truncation))


def surface_log(X: _K3Surface, M: int, truncation: Sequence = ()):
    if isinstance(X, DoublePlaneK3):
        return dp_log(X, M, truncation)
    return ci_log(X, M, truncation)


def family_log(X: _K3Surface, M: int) -> List[MultiPoly]:
    """beta_1, ..., beta_M of a family as polynomials in its parameters.

    Raises:
        SurfaceError: If X has no parameters.
    """
    if not X.params:
        raise SurfaceError("family_log needs a surface with parameters")
    return beta_sequence(X, M)


def _is_integral(value) -> bool:
    if isinstance(value, MultiPoly):
        return all(_is_integral(c) for c in value.terms.values())
    if isinstance(value, Fraction):
        return value.denominator == 1
    return True


def integral_ring(ring: Ring, p: Optional[int], precision: int) -> Ring:
    if isinstance(ring, PolyRing):
        return PolyRing(integral_ring(ring.base, p, precision),
                        ring.variables, ring.laurent)
    if p is None:
        return Integers()
    if precision == 1:
        return PrimeField(p)
    return IntegersMod(p ** precision)


def brauer_fgl(X: _K3Surface, p: Optional[int] = None, precision: int = 1,
               N: int = 11) -> FormalGroupLaw:
    """The formal Brauer group law, over Z or reduced mod p^precision.

    The law is recovered from the logarithm over the rationals; its
    coefficients must be integral before they are reduced.

    Raises:
        NonIntegralError: A coefficient of the rational law has a denominator.
    """
    L = surface_log(X, N - 1)
    law = fgl_from_log(L, validate=False)
    for e, c in law.series.terms.items():
        if not _is_integral(c):
            raise NonIntegralError(
                f"coefficient {c} of the law at {e} is not integral"
            )
    target = integral_ring(L.ring, p, precision)
    logger.debug(f"reducing the Brauer law of order {N} to {target}")
    return base_change(law, target)


def brauer_p_series(X: _K3Surface, p: int, N: int,
                    truncation: Sequence = (),
                    reduce: bool = True) -> TruncSeries:
    """[p] of the formal Brauer group from the logarithm alone.

    Computed as the s with L(s) = p L(t) over the rationals, then reduced
    modulo p unless `reduce` is False.
    """
    L = surface_log(X, N - 1, truncation)
    ps = p_series_from_log(L, p)
    if reduce:
        return reduce_series_mod_p(ps, p)
    return ps


def brauer_height(X: _K3Surface, p: int, h_max: int,
                  N: Optional[int] = None) -> HeightResult:
    N = N if N is not None else p ** h_max + 1
    ps = brauer_p_series(X, p, N, reduce=False)
    return height_from_p_series(ps, p, h_max)
