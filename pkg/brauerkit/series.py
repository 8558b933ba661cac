"""
brauerkit/series.py

Truncated power series in one to three series variables with coefficients
in any ring of the `brauerkit.algebra` tower, including Laurent
polynomials in t. A series of order N keeps the terms of total degree
below N in the series variables; coefficient degrees are never truncated.

A series is stored as one element of a sympy polynomial ring holding the
series variables and the coefficient variables together, and the
truncated arithmetic is done by `sympy.polys.ring_series`.

Example usage:

    >>> from brauerkit.algebra import Integers
    >>> x = TruncSeries.variable(Integers(), ("x", "y"), 3, "x")
    >>> y = TruncSeries.variable(Integers(), ("x", "y"), 3, "y")
    >>> print((x + y) * (x + y))
    x^2 + 2*x*y + y^2 + O(3)
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy.polys.orderings import lex
from sympy.polys.ring_series import (
    mul_xin,
    rs_diff,
    rs_mul,
    rs_pow,
    rs_series_inversion,
    rs_series_reversion,
    rs_trunc,
)

from brauerkit.algebra import (
    Exponent,
    MultiPoly,
    PolyRing,
    QuotientRing,
    Ring,
    grevlex_key,
    join_terms,
    render_monomial,
    render_term,
    sympy_ring,
)
from brauerkit.errors import (
    CompositionError,
    InexactDivisionError,
    NonUnitError,
    RingMismatchError,
    TruncationError,
    UnmappableCoefficientError,
)

logger = logging.getLogger(__name__)


class _Layout:
    """Where a series over `ring` in `nvars` variables sits in sympy.

    Generator 0 carries the truncation degree: the total series degree
    when there are several series variables, otherwise the series variable
    itself. The coefficient ring's variables follow the series variables.
    """

    def __init__(self, ring: Ring, nvars: int):
        self.nvars = nvars
        self.shift = 1 if nvars > 1 else 0
        self.cut = self.shift + nvars
        if isinstance(ring, (PolyRing, QuotientRing)):
            self.base = ring.base
            self.ncoeff = ring.nvars
            self.coeff_ring = ring.poly_ring.sympy_ring
            self.laurent_index = ring.laurent_index
        else:
            self.base = ring
            self.ncoeff = 0
            self.coeff_ring = None
            self.laurent_index = None
        self.quotient = ring if isinstance(ring, QuotientRing) else None
        names = ("_h",) * self.shift
        names += tuple(f"_s{i}" for i in range(nvars))
        names += tuple(f"_c{j}" for j in range(self.ncoeff))
        self.sympy_ring = sympy_ring(names, self.base.domain, lex)
        self.x = self.sympy_ring.gens[0]

    def head(self, e: Exponent) -> Exponent:
        return (sum(e),) + e if self.shift else e

    def encode(self, terms: Dict[Exponent, object]):
        out = {}
        zero = (0,) * self.ncoeff
        for e, c in terms.items():
            head = self.head(e)
            if self.coeff_ring is None:
                out[head + zero] = self.base.domain_new(c)
            else:
                for f, d in c.rep.items():
                    out[head + f] = d
        return self.sympy_ring.from_dict(out)

    def embed(self, value):
        """A coefficient as a series of degree zero."""
        head = (0,) * self.cut
        if self.coeff_ring is None:
            return self.sympy_ring.from_dict(
                {head: self.base.domain_new(value)}
            )
        return self.sympy_ring.from_dict(
            {head + f: d for f, d in value.rep.items()}
        )

    def slices(self, rep) -> Dict[Exponent, dict]:
        out: Dict[Exponent, dict] = {}
        for k, v in rep.items():
            out.setdefault(k[self.shift:self.cut], {})[k[self.cut:]] = v
        return out

    def decode(self, rep, ring: Ring) -> Dict[Exponent, object]:
        if self.coeff_ring is None:
            value = self.base.domain_value
            return {k[self.shift:]: value(v) for k, v in rep.items()}
        return {
            e: MultiPoly.from_rep(ring, self.coeff_ring.from_dict(d), True)
            for e, d in self.slices(rep).items()
        }

    def reduce(self, rep):
        """Bring every coefficient into quotient normal form."""
        if self.quotient is None:
            return rep
        out = {}
        for e, d in self.slices(rep).items():
            head = self.head(e)
            part = self.quotient.reduce_rep(self.coeff_ring.from_dict(d))
            for f, c in part.items():
                out[head + f] = c
        return self.sympy_ring.from_dict(out)


@lru_cache(maxsize=None)
def _layout(ring: Ring, nvars: int) -> _Layout:
    return _Layout(ring, nvars)


class TruncSeries:
    """A power series truncated at total degree `order`.

    Attributes:
        ring (Ring): Coefficient ring.
        vars (tuple): Series variable names.
        order (int): Terms of total degree >= order are discarded.
        rep: The backing sympy ring element.
        terms (dict): Exponent tuple to nonzero coefficient, read-only.
    """

    __slots__ = ("ring", "vars", "order", "rep", "_terms", "_graded")

    def __init__(self, ring: Ring, vars: Sequence[str], order: int,
                 terms: Optional[Dict[Exponent, object]] = None,
                 trusted: bool = False):
        if order < 1:
            raise TruncationError(f"series order must be positive: {order}")
        self.ring = ring
        self.vars = tuple(vars)
        self.order = order
        out = {}
        for e, c in (terms or {}).items():
            if not trusted:
                e = tuple(int(k) for k in e)
                if len(e) != len(self.vars) or min(e, default=0) < 0:
                    raise RingMismatchError(
                        f"exponent {e} does not fit {self.vars}"
                    )
                c = ring.coerce(c)
            if sum(e) >= order:
                continue
            c = ring.normalize(c)
            if c:
                out[e] = c
        self.rep = self.layout.encode(out)
        self._terms = None
        self._graded = None

    @classmethod
    def from_rep(cls, ring: Ring, vars: Sequence[str], order: int,
                 rep) -> "TruncSeries":
        """Wrap a sympy element already truncated and reduced."""
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.vars = tuple(vars)
        obj.order = order
        obj.rep = rep
        obj._terms = None
        obj._graded = None
        return obj

    @classmethod
    def zero(cls, ring, vars, order) -> "TruncSeries":
        return cls(ring, vars, order, {}, trusted=True)

    @classmethod
    def constant(cls, ring, vars, order, value) -> "TruncSeries":
        zero = (0,) * len(vars)
        return cls(ring, vars, order, {zero: ring.coerce(value)}, True)

    @classmethod
    def variable(cls, ring, vars, order, name) -> "TruncSeries":
        vars = tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if sum(exp) != 1:
            raise RingMismatchError(f"{name!r} is not one of {vars}")
        return cls(ring, vars, order, {exp: ring.one}, trusted=True)

    @property
    def layout(self) -> _Layout:
        return _layout(self.ring, len(self.vars))

    @property
    def terms(self) -> Dict[Exponent, object]:
        if self._terms is None:
            self._terms = self.layout.decode(self.rep, self.ring)
        return self._terms

    def _wrap(self, rep, order: Optional[int] = None) -> "TruncSeries":
        return TruncSeries.from_rep(
            self.ring, self.vars, self.order if order is None else order, rep
        )

    def _new(self, terms, order: Optional[int] = None) -> "TruncSeries":
        return TruncSeries(
            self.ring, self.vars,
            self.order if order is None else order, terms, trusted=True,
        )

    def _check(self, other: "TruncSeries") -> None:
        if self.vars != other.vars:
            raise RingMismatchError(
                f"series variables differ: {self.vars} vs {other.vars}"
            )
        if self.order != other.order:
            raise TruncationError(
                f"series orders differ: {self.order} vs {other.order}"
            )
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError(
                f"coefficient rings differ: {self.ring} vs {other.ring}"
            )

    def graded(self) -> List[Tuple[int, Exponent, object]]:
        """Terms as (degree, exponent, coefficient) sorted by degree."""
        if self._graded is None:
            self._graded = sorted(
                ((sum(e), e, c) for e, c in self.terms.items()),
                key=lambda item: item[0],
            )
        return self._graded

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return self._wrap(self.rep + other.rep)

    def __neg__(self) -> "TruncSeries":
        return self._wrap(-self.rep)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return self._wrap(self.rep - other.rep)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("negative powers of a series are not supported")
        if n == 0:
            return TruncSeries.constant(self.ring, self.vars, self.order, 1)
        if not self.rep:
            return self
        layout = self.layout
        if layout.quotient is None:
            return self._wrap(rs_pow(self.rep, n, layout.x, self.order))
        result = TruncSeries.constant(self.ring, self.vars, self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.vars != other.vars or self.order != other.order:
            return False
        if self.ring is other.ring or self.ring == other.ring:
            return self.rep == other.rep
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __repr__(self) -> str:
        return f"TruncSeries({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    def scale(self, value) -> "TruncSeries":
        value = self.ring.coerce(value)
        if not value:
            return TruncSeries.zero(self.ring, self.vars, self.order)
        layout = self.layout
        return self._wrap(layout.reduce(self.rep * layout.embed(value)))

    def coefficient(self, exponent: Sequence[int]):
        return self.terms.get(tuple(exponent), self.ring.zero)

    def constant_term(self):
        return self.coefficient((0,) * len(self.vars))

    def valuation(self) -> int:
        """Lowest total degree present; the order for the zero series."""
        if not self.rep:
            return self.order
        return min(k[0] for k in self.rep)

    def homogeneous_part(self, degree: int) -> Dict[Exponent, object]:
        return {e: c for e, c in self.terms.items() if sum(e) == degree}

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise TruncationError(
                f"cannot raise order {self.order} to {order}"
            )
        return self.with_order(order)

    def with_order(self, order: int) -> "TruncSeries":
        """Re-declare the order; raising it treats the series as exact."""
        if order < 1:
            raise TruncationError(f"series order must be positive: {order}")
        if order >= self.order:
            return self._wrap(self.rep, order)
        return self._wrap(rs_trunc(self.rep, self.layout.x, order), order)

    def map_coefficients(self, fn: Callable, ring: Ring) -> "TruncSeries":
        return TruncSeries(
            ring, self.vars, self.order,
            {e: fn(c) for e, c in self.terms.items()}, trusted=True,
        )

    def derivative(self, var: str) -> "TruncSeries":
        i = self.vars.index(var)
        layout = self.layout
        gen = layout.sympy_ring.gens[layout.shift + i]
        rep = rs_diff(self.rep, gen)
        if layout.shift:
            rep = mul_xin(rep, 0, -1)
        order = max(self.order - 1, 1)
        return self._wrap(rs_trunc(rep, layout.x, order), order)

    def integrate(self) -> "TruncSeries":
        """Antiderivative of a one-variable series, zero constant term."""
        if len(self.vars) != 1:
            raise RingMismatchError("integration needs a one-variable series")
        layout = self.layout
        base = layout.base
        out = {}
        for k, c in self.rep.items():
            try:
                inv = base.domain_new(base.coerce(Fraction(1, k[0] + 1)))
            except UnmappableCoefficientError:
                raise NonUnitError(
                    f"{k[0] + 1} is not invertible in {self.ring}"
                ) from None
            out[(k[0] + 1,) + k[1:]] = c * inv
        return self._wrap(
            layout.sympy_ring.from_dict(out), self.order + 1
        )

    def specialize(self, var: str) -> "TruncSeries":
        """Set every series variable other than `var` to zero."""
        i = self.vars.index(var)
        out = {
            (e[i],): c
            for e, c in self.terms.items()
            if sum(e) == e[i]
        }
        return TruncSeries(self.ring, (var,), self.order, out, trusted=True)

    def render(self) -> str:
        """Ascending total degree, descending grevlex within a degree."""
        pieces = []
        terms = self.terms
        ordered = sorted(
            terms,
            key=lambda e: (sum(e), tuple(-k for k in grevlex_key(e)[1])),
        )
        for e in ordered:
            coeff = self.ring.render(terms[e])
            pieces.append(render_term(coeff, render_monomial(self.vars, e)))
        body = join_terms(pieces) if pieces else "0"
        return f"{body} + O({self.order})"


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Product truncated at the common order."""
    a._check(b)
    layout = a.layout
    return a._wrap(layout.reduce(rs_mul(a.rep, b.rep, layout.x, a.order)))


def series_substitute(f: TruncSeries, args: Sequence[TruncSeries]):
    """Evaluate f at the series `args`, one per variable of f.

    The result lives in the ring, variables and order of the arguments.
    """
    if len(args) != len(f.vars):
        raise RingMismatchError(
            f"{len(f.vars)} arguments expected, got {len(args)}"
        )
    head = args[0]
    for arg in args[1:]:
        head._check(arg)
    for arg in args:
        if arg.constant_term():
            raise CompositionError(
                "substituted series must have zero constant term"
            )
    ring, N = head.ring, head.order
    if f.ring is ring or f.ring == ring:
        terms = f.terms
    else:
        terms = {e: ring.coerce(c) for e, c in f.terms.items()}
    vals = [arg.valuation() for arg in args]
    powers: List[List[TruncSeries]] = [
        [TruncSeries.constant(ring, head.vars, N, 1), arg] for arg in args
    ]

    def power(level: int, k: int) -> TruncSeries:
        table = powers[level]
        while len(table) <= k:
            table.append(table[-1] * args[level])
        return table[k]

    def evaluate(group: Dict[Exponent, object], level: int, budget: int):
        rows: Dict[int, Dict[Exponent, object]] = {}
        for e, c in group.items():
            rows.setdefault(e[0], {})[e[1:]] = c
        total = TruncSeries.zero(ring, head.vars, N)
        for k in sorted(rows):
            used = k * vals[level]
            if used >= budget:
                continue
            if level == len(args) - 1:
                inner = rows[k][()]
                term = power(level, k).scale(inner) if k else (
                    TruncSeries.constant(ring, head.vars, N, inner)
                )
            else:
                inner = evaluate(rows[k], level + 1, budget - used)
                term = power(level, k) * inner if k else inner
            total = total + term
        return total

    return evaluate(terms, 0, N)


def _reversion(g: TruncSeries) -> TruncSeries:
    """Compositional inverse of a one-variable g = t + O(t^2).

    `rs_series_reversion` works in a ring with a second series slot for
    the solution. A Laurent coefficient variable t is split into t and a
    separate u = t^-1 there, and recombined afterwards.
    """
    layout = g.layout
    li = layout.laurent_index
    names = ("_s0", "_s1") + tuple(f"_c{j}" for j in range(layout.ncoeff))
    if li is not None:
        names += ("_u",)
    work = sympy_ring(names, layout.base.domain, lex)
    lifted = {}
    for k, c in g.rep.items():
        f = list(k[1:])
        extra = ()
        if li is not None:
            extra = (max(-f[li], 0),)
            f[li] = max(f[li], 0)
        lifted[(k[0], 0) + tuple(f) + extra] = c
    x, y = work.gens[0], work.gens[1]
    r = rs_series_reversion(work.from_dict(lifted), x, g.order, y)
    out: dict = {}
    zero = layout.base.domain.zero
    for k, c in r.items():
        f = list(k[2:2 + layout.ncoeff])
        if li is not None:
            f[li] -= k[-1]
        key = (k[1],) + tuple(f)
        out[key] = out.get(key, zero) + c
    rep = layout.sympy_ring.from_dict(out)
    return g._wrap(layout.reduce(rep))


def series_solve(f: TruncSeries, rhs: TruncSeries) -> TruncSeries:
    """Find s with f(s) = rhs for one-variable f with a unit linear term.

    With a the linear coefficient of f, s is the reversion of f/a
    evaluated at rhs/a.
    """
    if len(f.vars) != 1 or len(rhs.vars) != 1:
        raise RingMismatchError("series_solve needs one-variable series")
    if f.order < rhs.order:
        raise TruncationError(
            f"order {f.order} of f is below the target {rhs.order}"
        )
    if f.constant_term() or rhs.constant_term():
        raise CompositionError("series_solve needs zero constant terms")
    ring, N = rhs.ring, rhs.order
    if f.ring is not ring and f.ring != ring:
        f = f.map_coefficients(ring.coerce, ring)
    f = TruncSeries.from_rep(ring, rhs.vars, f.order, f.rep).truncate(N)
    lead = f.coefficient((1,))
    if not lead or not ring.is_unit(lead):
        raise NonUnitError("linear coefficient is not a unit")
    inv = ring.inverse(lead)
    g = _reversion(f.scale(inv))
    return series_substitute(g, [rhs.scale(inv)])


def series_reversion(f: TruncSeries) -> TruncSeries:
    """The compositional inverse g with f(g(t)) = t = g(f(t))."""
    t = TruncSeries.variable(f.ring, f.vars, f.order, f.vars[0])
    return series_solve(f, t)


def _divide_homogeneous(num: dict, den: dict, ring: Ring) -> dict:
    lead = max(den)
    inv = ring.inverse(den[lead])
    rest = dict(num)
    q = {}
    while rest:
        e = max(rest)
        if any(x < y for x, y in zip(e, lead)):
            raise InexactDivisionError("division is not exact")
        c = ring.normalize(rest[e] * inv)
        shift = tuple(x - y for x, y in zip(e, lead))
        q[shift] = c
        for de, dc in den.items():
            k = tuple(x + y for x, y in zip(shift, de))
            v = ring.normalize(rest.get(k, ring.zero) - c * dc)
            if v:
                rest[k] = v
            else:
                rest.pop(k, None)
    return q


def _inverse(den: TruncSeries) -> TruncSeries:
    """Inverse of a series whose constant term is a unit."""
    inv = den.ring.inverse(den.constant_term())
    layout = den.layout
    monic = den.scale(inv)
    rep = rs_series_inversion(monic.rep, layout.x, den.order)
    rep = rs_trunc(rep, layout.x, den.order)
    return den._wrap(layout.reduce(rep)).scale(inv)


def _shifted_divide(num: TruncSeries, den: TruncSeries, d: int):
    """One-variable quotient when den = t^d * (unit + O(t))."""
    N = num.order
    layout = num.layout
    top = num._wrap(mul_xin(num.rep, 0, -d), N - d)
    unit = den._wrap(rs_trunc(mul_xin(den.rep, 0, -d), layout.x, N - d),
                     N - d)
    return top * _inverse(unit)


def series_exact_divide(num: TruncSeries, den: TruncSeries):
    """Quotient q with q*den = num.

    A unit constant term in `den` gives ordinary inversion at the same
    order. Otherwise, with d the valuation of `den`, the quotient is
    determined up to order N - d and exactness is checked by
    back-multiplication.
    """
    num._check(den)
    if not den:
        raise InexactDivisionError("division by the zero series")
    c0 = den.constant_term()
    if c0 and den.ring.is_unit(c0):
        return num * _inverse(den)
    ring, N = num.ring, num.order
    d = den.valuation()
    if num.valuation() < d:
        raise InexactDivisionError(
            "numerator has lower valuation than denominator"
        )
    low = den.homogeneous_part(d)
    if len(num.vars) == 1 and ring.is_unit(low[(d,)]):
        quotient = _shifted_divide(num, den, d)
    else:
        parts: Dict[int, dict] = {}
        for e, c in den.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        q: dict = {}
        for k in range(N - d):
            residual = dict(num.homogeneous_part(d + k))
            for e, c in q.items():
                i = sum(e)
                for de, dc in parts.get(d + k - i, {}).items():
                    key = tuple(x + y for x, y in zip(e, de))
                    residual[key] = ring.normalize(
                        residual.get(key, ring.zero) - c * dc
                    )
            residual = {e: c for e, c in residual.items() if c}
            if residual:
                q.update(_divide_homogeneous(residual, low, ring))
        quotient = TruncSeries(ring, num.vars, N - d, q, trusted=True)
    check = quotient.with_order(N) * den
    if check != num:
        raise InexactDivisionError("division is not exact")
    return quotient
