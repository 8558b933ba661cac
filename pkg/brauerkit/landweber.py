"""
brauerkit/landweber.py

Landweber exactness of a formal group law at a prime p.

The invariants v_n are the coefficients of t^(p^n) in the p-series, with
v_0 = p. Exactness at p asks that p, v_1, v_2, ... be a regular sequence
on the coefficient ring. For the families handled here the ring is a
polynomial ring over Z_(p) in at most two parameters: multiplication by
p is injective because the ring is torsion free, and the steps n >= 1
are decided over F_p[params] with Groebner bases. The sequence stops as
soon as (p, v_1, ..., v_n) is the unit ideal.

When v_h is too expensive to compute as a polynomial, its class is
obtained either modulo a monomial ideal (v_1, ..., v_{h-1}), by running
the logarithm with the parameters truncated, or at the single rational
point of V(v_1, ..., v_{h-1}), where a unit is detected by its value.

Example usage:

    >>> from brauerkit.algebra import Integers, PolyRing
    >>> from brauerkit.series import TruncSeries
    >>> from brauerkit.fgl import validate_fgl
    >>> R = Integers()
    >>> x = TruncSeries.variable(R, ("x", "y"), 6, "x")
    >>> y = TruncSeries.variable(R, ("x", "y"), 6, "y")
    >>> V = extract_v(validate_fgl(x + y - x * y), 2, 1)
    >>> print(regularity_check(V, R))
    exact at 2 (unit ideal at 1)
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from brauerkit.algebra import (
    Ideal,
    Integers,
    IntegersMod,
    MultiPoly,
    PolyRing,
    PrimeField,
    QuotientRing,
    Rationals,
    Ring,
    convert,
    finite_field,
    is_zero_divisor,
    radical_is_point,
    reduce_ring_mod_p,
)
from brauerkit.artin import artin_p_series
from brauerkit.elliptic import WeierstrassModel, discriminant, specialize
from brauerkit.errors import (
    SurfaceError,
    TruncationError,
    UnsupportedRingError,
)
from brauerkit.fgl import FormalGroupLaw, p_series
from brauerkit.series import TruncSeries
from brauerkit.stienstra import (
    CompleteIntersectionK3,
    DoublePlaneK3,
    _K3Surface,
    brauer_p_series,
)

logger = logging.getLogger(__name__)

RATIONAL = "rational"
INTEGRAL = "integral"
CHAR_P = "char_p"

EXACT = "exact_at_p"
FAILS = "fails_at"
INCONCLUSIVE = "inconclusive"

AUTO = "auto"
POLYNOMIAL = "polynomial"
TRUNCATION = "truncation"
POINT = "point"
STRATEGIES = (AUTO, POLYNOMIAL, TRUNCATION, POINT)

Surface = Union[_K3Surface, WeierstrassModel]


@dataclass(frozen=True)
class VSequence:
    """v_0 = p, v_1, ..., v_h read off a p-series.

    Attributes:
        p (int): The prime.
        v (tuple): v_0 as the integer p, then the coefficients of t^(p^n).
        ring (Ring): Where v_1, ..., v_h live.
        source (FormalGroupLaw): The law, when the sequence came from one.
    """

    p: int
    v: Tuple
    ring: Ring
    source: Optional[FormalGroupLaw] = field(default=None, compare=False)

    @property
    def height_bound(self) -> int:
        return len(self.v) - 1

    def reduced(self) -> Tuple:
        """v_1, ..., v_h with coefficients reduced modulo p."""
        target = reduce_ring_mod_p(self.ring, self.p)
        return tuple(convert(v, self.ring, target) for v in self.v[1:])

    def render(self) -> List[str]:
        out = [str(self.p)]
        for v in self.v[1:]:
            out.append(v.render() if isinstance(v, MultiPoly)
                       else self.ring.render(v))
        return out


@dataclass(frozen=True)
class TopResidue:
    """The class of v_n known only modulo an ideal or at a point.

    `method` is "truncation" (then `modulus` holds the monomial
    generators) or "point" (then `modulus` is the point).
    """

    n: int
    method: str
    value: object
    modulus: Tuple
    unit: bool

    def render(self) -> str:
        value = self.value.render() if isinstance(self.value, MultiPoly) \
            else str(self.value)
        if self.method == POINT:
            return f"v{self.n}{self.modulus} = {value}"
        gens = ", ".join(
            g.render() if isinstance(g, MultiPoly) else str(g)
            for g in self.modulus
        )
        return f"v{self.n} = {value} mod ({gens})"


@dataclass(frozen=True)
class ExactnessVerdict:
    p: int
    regular_up_to: int
    unit_at: Optional[int]
    verdict: str
    fails_at: Optional[int] = None

    def __str__(self) -> str:
        if self.verdict == EXACT:
            return f"exact at {self.p} (unit ideal at {self.unit_at})"
        if self.verdict == FAILS:
            return f"fails at {self.fails_at}"
        return f"inconclusive (regular up to {self.regular_up_to})"


@dataclass(frozen=True)
class LocusWitness:
    """A parameter point on V(p, v_1, ..., v_n) and its fibre's smoothness.

    `smooth` is None when nothing could be decided; `certified` is True
    only for points over F_p whose fibre passed a Groebner check.
    """

    locus: Tuple[str, ...]
    point: Optional[Tuple]
    field: str
    smooth: Optional[bool]
    certified: bool

    def render(self) -> str:
        gens = ", ".join(self.locus)
        if self.point is None:
            return f"({gens}): no witness"
        coords = ", ".join(str(c) for c in self.point)
        status = {True: "smooth", False: "singular", None: "undecided"}[
            self.smooth
        ]
        mark = "" if self.certified else " (unverified)"
        return f"({gens}): [{coords}] over {self.field} {status}{mark}"


@dataclass(frozen=True)
class ExactnessReport:
    p: int
    h_max: int
    strategy: str
    p_series: TruncSeries
    vseq: VSequence
    top: Optional[TopResidue]
    verdict: ExactnessVerdict
    witnesses: Tuple[LocusWitness, ...]
    top_locus: Tuple[Tuple, ...]
    ring_shape: str

    def lines(self) -> List[str]:
        out = [f"prime: {self.p}", f"strategy: {self.strategy}"]
        for n, v in enumerate(self.vseq.render()):
            out.append(f"v{n}: {v}")
        if self.top is not None:
            out.append(f"residue: {self.top.render()}")
        out.append(f"verdict: {self.verdict}")
        for w in self.witnesses:
            out.append(f"locus {w.render()}")
        out.append(f"coefficient ring: {self.ring_shape}")
        return out

    def as_dict(self) -> Dict:
        return {
            "prime": self.p,
            "hmax": self.h_max,
            "strategy": self.strategy,
            "v": self.vseq.render(),
            "residue": self.top.render() if self.top else None,
            "verdict": self.verdict.verdict,
            "regular_up_to": self.verdict.regular_up_to,
            "unit_at": self.verdict.unit_at,
            "fails_at": self.verdict.fails_at,
            "loci": [w.render() for w in self.witnesses],
            "ring": self.ring_shape,
        }


def extract_v_from_p_series(ps: TruncSeries, p: int, h_max: int,
                            source: Optional[FormalGroupLaw] = None
                            ) -> VSequence:
    """v_0, ..., v_{h_max} from a one-variable p-series.

    Raises:
        TruncationError: If the series stops before t^(p^h_max).
    """
    if ps.order <= p ** h_max:
        raise TruncationError(
            f"order {ps.order} does not reach t^{p ** h_max}"
        )
    v = [p]
    for n in range(1, h_max + 1):
        v.append(ps.coefficient((p ** n,)))
    return VSequence(p, tuple(v), ps.ring, source)


def extract_v(G: FormalGroupLaw, p: int, h_max: int) -> VSequence:
    return extract_v_from_p_series(p_series(G, p), p, h_max, G)


def base_kind(ring: Ring) -> str:
    """How multiplication by p behaves on `ring`."""
    root = ring
    while isinstance(root, (PolyRing, QuotientRing)):
        root = root.base
    if isinstance(root, Rationals):
        return RATIONAL
    if isinstance(root, Integers):
        return INTEGRAL
    if isinstance(root, IntegersMod):
        return CHAR_P
    raise UnsupportedRingError(f"no regularity check over {ring}")


def _residue_is_unit(ring: Ring, value) -> bool:
    if isinstance(value, MultiPoly):
        return ring.is_unit(value)
    return bool(ring.normalize(value))


def regularity_check(V: VSequence, base: Union[Ring, str],
                     top: Optional[TopResidue] = None) -> ExactnessVerdict:
    """Decide whether p, v_1, ..., v_h is regular on the coefficient ring.

    `base` is the coefficient ring or one of "rational", "integral",
    "char_p". Over the rationals p is a unit and the law is exact; in
    characteristic p multiplication by p is zero. For integral bases
    the steps n >= 1 run over F_p[params].

    Raises:
        UnsupportedRingError: For bases with more than four parameters,
            or when `top` was taken modulo an ideal different from
            (v_1, ..., v_{n-1}).
    """
    p = V.p
    kind = base if isinstance(base, str) else base_kind(base)
    if kind == RATIONAL:
        return ExactnessVerdict(p, 0, 0, EXACT)
    if kind == CHAR_P:
        return ExactnessVerdict(p, -1, None, FAILS, fails_at=0)
    logger.debug(f"multiplication by {p} is injective on a torsion-free base")

    R = reduce_ring_mod_p(V.ring, p)
    values = V.reduced()
    if not isinstance(R, PolyRing):
        for n, v in enumerate(values, start=1):
            if R.normalize(v):
                return ExactnessVerdict(p, n, n, EXACT)
            return ExactnessVerdict(p, n - 1, None, FAILS, fails_at=n)
        if top is not None and top.unit:
            return ExactnessVerdict(p, top.n, top.n, EXACT)
        return ExactnessVerdict(p, 0, None, INCONCLUSIVE)

    gens: List[MultiPoly] = []
    regular = 0
    for n, v in enumerate(values, start=1):
        if is_zero_divisor(v, Ideal(R, gens)):
            logger.debug(f"v{n} = {v} is a zero divisor")
            return ExactnessVerdict(p, regular, None, FAILS, fails_at=n)
        gens.append(v)
        regular = n
        if Ideal(R, gens).is_unit():
            return ExactnessVerdict(p, regular, n, EXACT)
    if top is not None and top.n == len(values) + 1:
        lower = Ideal(R, gens)
        if top.method == TRUNCATION:
            if lower != Ideal(R, top.modulus):
                raise UnsupportedRingError(
                    f"residue of v{top.n} was taken modulo a different ideal"
                )
        elif not radical_is_point(lower, top.modulus):
            raise UnsupportedRingError(
                f"V(v1, ..., v{top.n - 1}) is not the point {top.modulus}"
            )
        if top.unit:
            return ExactnessVerdict(p, top.n, top.n, EXACT)
    return ExactnessVerdict(p, regular, None, INCONCLUSIVE)


def _rank(rows: List[List], F: Ring) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next(
            (i for i in range(rank, len(rows)) if not F.is_zero(rows[i][col])),
            None,
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = F.inverse(rows[rank][col])
        for i in range(len(rows)):
            if i != rank and not F.is_zero(rows[i][col]):
                factor = F.mul(rows[i][col], inv)
                rows[i] = [
                    F.sub(a, F.mul(factor, b))
                    for a, b in zip(rows[i], rows[rank])
                ]
        rank += 1
    return rank


def _point_field(point: Sequence, default: Ring) -> Ring:
    for c in point:
        if isinstance(c, MultiPoly):
            return c.ring
    return default


def smooth_at_point(f: Sequence[MultiPoly], point: Sequence) -> bool:
    """Whether the variety f = 0 is nonsingular at `point`.

    The Jacobian must have rank len(f) there. Coordinates are residues
    or elements of a finite field built by `finite_field`.

    Raises:
        SurfaceError: If the point does not lie on the variety.
    """
    f = list(f)
    if not f:
        raise SurfaceError("no equations given")
    F = _point_field(point, f[0].ring.base)
    point = [F.coerce(c) for c in point]
    if all(F.is_zero(c) for c in point) and all(
        g.is_homogeneous() for g in f
    ):
        raise SurfaceError("the zero vector is not a projective point")
    for g in f:
        if not F.is_zero(g.evaluate(point, F)):
            raise SurfaceError(f"point {point} is not on {g}")
    jacobian = [
        [g.derivative(v).evaluate(point, F) for v in g.ring.variables]
        for g in f
    ]
    return _rank(jacobian, F) == len(f)


def is_smooth_hypersurface(f: MultiPoly) -> bool:
    """Whether the projective hypersurface f = 0 has no singular point.

    The singular locus is cut out by f and its partial derivatives; it is
    empty in projective space exactly when that ideal contains a power
    of every variable.
    """
    ring = f.ring
    ideal = Ideal(ring, [f] + [f.derivative(v) for v in ring.variables])
    return ideal.standard_monomials() is not None


def _params(surface: Surface) -> Tuple[str, ...]:
    return surface.params


def family_p_series(surface: Surface, p: int, N: int,
                    truncation: Sequence = ()) -> TruncSeries:
    """[p] of the formal Brauer group of a surface or family, mod p."""
    if isinstance(surface, WeierstrassModel):
        if truncation:
            raise UnsupportedRingError(
                "parameter truncation is only available for the "
                "logarithm route"
            )
        field_p = surface.field
        if not isinstance(field_p, PrimeField) or field_p.modulus != p:
            raise SurfaceError(f"model over {field_p} used at p={p}")
        return artin_p_series(specialize(surface, N), p)
    return brauer_p_series(surface, p, N, truncation)


def _specialize(surface: Surface, values: Dict[str, int]):
    if isinstance(surface, WeierstrassModel):
        return surface.specialize_params(values)
    return surface.specialize(values)


def rational_points(gens: Sequence, params: Sequence[str], F: Ring):
    """Points of F^k, in a fixed order, where every generator vanishes."""
    if isinstance(F, QuotientRing):
        elements = list(F.elements())
    else:
        elements = list(range(F.modulus))
    for point in itertools.product(elements, repeat=len(params)):
        if all(
            F.is_zero(g.evaluate(point, F)) if isinstance(g, MultiPoly)
            else F.is_zero(F.coerce(g))
            for g in gens
        ):
            yield point


def fibre_is_smooth(surface: Surface, p: int,
                    values: Dict[str, int]) -> Optional[bool]:
    """Smoothness of the member of a family at integer parameter values.

    Elliptic models count as smooth when the discriminant is nonzero of
    t-adic valuation below 12. Returns None when no criterion applies.
    """
    if isinstance(surface, WeierstrassModel):
        W = surface.specialize_params(values) if values else surface
        disc = discriminant(W)
        return bool(disc.delta) and disc.t_adic_valuation < 12
    X = surface.specialize(values).reduce_mod_p(p)
    if isinstance(X, DoublePlaneK3):
        if p == 2:
            return None
        return is_smooth_hypersurface(X.sextic)
    if isinstance(X, CompleteIntersectionK3) and X.n == 3:
        return is_smooth_hypersurface(X.polys[0])
    return None


def locus_witness(surface: Surface, p: int, gens: Sequence,
                  names: Tuple[str, ...]) -> LocusWitness:
    """Search V(gens) over F_p, then over F_{p^2}, for a smooth fibre."""
    params = _params(surface)
    field_p = PrimeField(p)
    for point in rational_points(gens, params, field_p):
        values = dict(zip(params, point))
        smooth = fibre_is_smooth(surface, p, values)
        if smooth:
            return LocusWitness(names, point, str(field_p), True, True)
    if params:
        field_q = finite_field(p, 2)
        for point in rational_points(gens, params, field_q):
            if all(c.is_constant() for c in point):
                continue
            rendered = tuple(c.render() for c in point)
            return LocusWitness(names, rendered, f"GF({p}^2)", None, False)
    return LocusWitness(names, None, str(field_p), None, False)


def _truncated_residue(surface: _K3Surface, p: int, n: int,
                       lower: Ideal) -> TopResidue:
    monomials = [g.leading()[0] for g in lower.groebner_basis]
    ps = family_p_series(surface, p, p ** n + 1, truncation=monomials)
    residue = ps.coefficient((p ** n,))
    logger.debug(f"v{n} modulo {monomials}: {residue}")
    return TopResidue(
        n, TRUNCATION, residue, tuple(lower.groebner_basis),
        _residue_is_unit(ps.ring, residue),
    )


def _point_residue(surface: Surface, p: int, n: int,
                   point: Tuple) -> TopResidue:
    values = dict(zip(_params(surface), point))
    fibre = _specialize(surface, values)
    ps = family_p_series(fibre, p, p ** n + 1)
    value = convert(ps.coefficient((p ** n,)), ps.ring, PrimeField(p))
    logger.debug(f"v{n} at {point}: {value}")
    signed = value - p if value > p // 2 else value
    return TopResidue(n, POINT, signed, tuple(point), bool(value))


def ring_shape(params: Sequence[str], p: int,
               verdict: ExactnessVerdict) -> str:
    """A plain statement of the coefficient ring of the resulting theory."""
    base = f"Z_({p})[{', '.join(params)}]" if params else f"Z_({p})"
    if verdict.verdict == EXACT:
        gens = ", ".join([str(p)] + [f"v{n}" for n in
                                     range(1, verdict.unit_at + 1)])
        return (
            f"{base}: ({gens}) is the unit ideal, the law is Landweber "
            f"exact at {p} with heights at most {verdict.unit_at}"
        )
    if verdict.verdict == FAILS:
        return f"{base}: v{verdict.fails_at} is a zero divisor, not exact"
    return f"{base}: regular up to v{verdict.regular_up_to}, undecided"


def exactness_report(surface: Surface, p: int, h_max: int,
                     strategy: str = AUTO) -> ExactnessReport:
    """Landweber exactness at p of the formal Brauer group of a family.

    With the "polynomial" strategy all of v_1, ..., v_h are computed in
    F_p[params]. Otherwise v_h is reduced modulo (v_1, ..., v_{h-1}):
    "truncation" needs that ideal to be monomial, "point" needs its zero
    set to be one rational point. "auto" picks the first that applies.

    Raises:
        UnsupportedRingError: When the requested strategy does not apply.
    """
    if strategy not in STRATEGIES:
        raise UnsupportedRingError(f"unknown strategy {strategy!r}")
    params = _params(surface)
    if strategy == AUTO and (not params or h_max <= 2):
        strategy = POLYNOMIAL
    lower_h = h_max if strategy == POLYNOMIAL else h_max - 1
    ps = family_p_series(surface, p, p ** lower_h + 1)
    V = extract_v_from_p_series(ps, p, lower_h)
    values = V.reduced()

    top = None
    top_locus: Tuple[Tuple, ...] = ()
    if strategy != POLYNOMIAL and params:
        R = reduce_ring_mod_p(V.ring, p)
        lower = Ideal(R, values)
        top_locus = tuple(rational_points(values, params, PrimeField(p)))
        if lower.is_unit():
            pass
        elif strategy in (AUTO, TRUNCATION) and lower.is_monomial() and (
            isinstance(surface, _K3Surface)
        ):
            strategy = TRUNCATION
            top = _truncated_residue(surface, p, h_max, lower)
        elif strategy in (AUTO, POINT) and len(top_locus) == 1 and (
            radical_is_point(lower, top_locus[0])
        ):
            strategy = POINT
            top = _point_residue(surface, p, h_max, top_locus[0])
        else:
            raise UnsupportedRingError(
                f"no way to reduce v{h_max} modulo (v1, ..., v{lower_h})"
            )

    verdict = regularity_check(V, INTEGRAL, top)
    logger.debug(f"exactness at {p}: {verdict}")

    witnesses = []
    rendered = V.render()
    for n in range(h_max):
        names = tuple(rendered[: n + 1])
        witnesses.append(locus_witness(surface, p, values[:n], names))
    return ExactnessReport(
        p, h_max, strategy, ps, V, top, verdict, tuple(witnesses),
        top_locus, ring_shape(params, p, verdict),
    )
