"""
brauerkit/algebra.py

Exact arithmetic for the `brauerkit` package: the coefficient ring tower
(integers, rationals, residue rings, prime fields, polynomial rings with
one optional Laurent variable, quotient rings), sparse multivariate
polynomials, a polynomial parser, and ideal membership and zero-divisor
tests over prime fields.

Polynomials are stored as elements of `sympy.polys.rings` rings over the
ZZ, QQ and GF(m) domains; Groebner bases come from
`sympy.polys.groebnertools`. The wrappers here add the ring tower, the
canonical text form and the quotient reduction used by the rest of the
package, and expose coefficients as plain `int` and `Fraction` values.

Classes:
    - Ring and its subclasses Integers, Rationals, IntegersMod, PrimeField,
      PolyRing and QuotientRing.
    - MultiPoly: a sparse polynomial, immutable once built.
    - Ideal: an ideal of a polynomial ring over a prime field with a
      lazily computed reduced Groebner basis.

Example usage:

    >>> R = PolyRing(Integers(), ("x", "y"))
    >>> x, y = R.gens()
    >>> print((x + y) * (x - y))
    x^2 - y^2
"""

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import (
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from sympy import Symbol
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import ProductOrder, grevlex, lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing as SympyPolyRing

from brauerkit.errors import (
    InexactDivisionError,
    NonUnitError,
    ParseError,
    RingMismatchError,
    UnmappableCoefficientError,
    UnsupportedRingError,
)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Terms = Dict[Exponent, object]

MAX_GROEBNER_VARIABLES = 4

ELIMINATION_VARIABLE = "_y"


def grevlex_key(exponent: Exponent) -> tuple:
    """Return the sort key of a monomial in graded reverse-lex order."""
    return grevlex(exponent)


def is_prime(n: int) -> bool:
    """Trial division primality test for the small primes we work with."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _head(exponent: Exponent) -> Exponent:
    return exponent[:1]


def _tail(exponent: Exponent) -> Exponent:
    return exponent[1:]


# lex on the first variable, grevlex on the rest
ELIMINATION_ORDER = ProductOrder((lex, _head), (grevlex, _tail))


@lru_cache(maxsize=None)
def sympy_ring(names: Tuple[str, ...], domain, order=grevlex):
    """The sympy polynomial ring on `names`, shared by equal requests."""
    return SympyPolyRing(tuple(Symbol(n) for n in names), domain, order)


@lru_cache(maxsize=None)
def _residue_domain(modulus: int):
    return GF(modulus)


class Ring:
    """Base class of the coefficient ring tower.

    Elements are plain Python values (`int`, `Fraction`) for the numeric
    rings and `MultiPoly` instances for polynomial and quotient rings. All
    of them support the arithmetic operators; `normalize` brings the
    result of an operator back to canonical form.
    """

    characteristic = 0
    is_field = False

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def domain(self):
        """The sympy ground domain, for the numeric rings."""
        raise UnsupportedRingError(f"{self} has no sympy ground domain")

    def normalize(self, value):
        return value

    def coerce(self, value):
        raise NotImplementedError

    def __call__(self, value):
        return self.coerce(value)

    def accepts(self, ring: "Ring") -> bool:
        """Whether elements of `ring` coerce into this ring."""
        return ring == self

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def mul(self, a, b):
        return self.normalize(a * b)

    def neg(self, a):
        return self.normalize(-a)

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inverse(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def render(self, a) -> str:
        return str(a)


@dataclass(frozen=True)
class Integers(Ring):
    """The ring of integers with arbitrary precision."""

    @property
    def domain(self):
        return ZZ

    def domain_new(self, value):
        return ZZ(value if type(value) is int else self.coerce(value))

    def domain_value(self, c) -> int:
        return int(c)

    def coerce(self, value):
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        raise UnmappableCoefficientError(f"{value!r} is not an integer")

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def inverse(self, a):
        if a in (1, -1):
            return a
        raise NonUnitError(f"{a} is not a unit in ZZ")

    def __str__(self) -> str:
        return "ZZ"


@dataclass(frozen=True)
class Rationals(Ring):
    """The field of rational numbers, elements are `Fraction` or `int`."""

    is_field = True

    @property
    def domain(self):
        return QQ

    def domain_new(self, value):
        value = self.coerce(value)
        return QQ(value.numerator, value.denominator)

    def domain_value(self, c) -> Fraction:
        return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))

    def coerce(self, value):
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise UnmappableCoefficientError(f"{value!r} is not rational")

    def accepts(self, ring: Ring) -> bool:
        return isinstance(ring, (Rationals, Integers))

    def is_unit(self, a) -> bool:
        return a != 0

    def inverse(self, a):
        if a == 0:
            raise NonUnitError("division by zero in QQ")
        return 1 / Fraction(a)

    def __str__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class IntegersMod(Ring):
    """The residue ring Z/mZ, elements are ints in 0..m-1."""

    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise UnsupportedRingError(
                f"modulus must be at least 2, got {self.modulus}"
            )

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.modulus

    @property
    def domain(self):
        return _residue_domain(self.modulus)

    def domain_new(self, value):
        return self.domain.convert(self.coerce(value))

    def domain_value(self, c) -> int:
        return int(c) % self.modulus

    def normalize(self, value):
        return value % self.modulus

    def coerce(self, value):
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value % self.modulus
        if isinstance(value, Fraction):
            den = value.denominator
            if gcd(den, self.modulus) != 1:
                raise UnmappableCoefficientError(
                    f"{value} has a denominator that is not invertible "
                    f"mod {self.modulus}"
                )
            return value.numerator * pow(den, -1, self.modulus) % (
                self.modulus
            )
        raise UnmappableCoefficientError(
            f"{value!r} cannot be mapped to Z/{self.modulus}"
        )

    def accepts(self, ring: Ring) -> bool:
        return ring == self or isinstance(ring, Integers)

    def is_unit(self, a) -> bool:
        return gcd(a, self.modulus) == 1

    def inverse(self, a):
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            raise NonUnitError(
                f"{a} is not a unit mod {self.modulus}"
            ) from None

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inverse(a), -n
        return pow(a, n, self.modulus)

    def __str__(self) -> str:
        return f"ZZ/{self.modulus}"


@dataclass(frozen=True)
class PrimeField(IntegersMod):
    """The prime field F_p."""

    is_field = True

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise UnsupportedRingError(f"{self.modulus} is not prime")

    @property
    def prime(self) -> int:
        return self.modulus

    def __str__(self) -> str:
        return f"GF({self.modulus})"


NUMERIC_RINGS = (Integers, Rationals, IntegersMod)


@dataclass(frozen=True)
class PolyRing(Ring):
    """Polynomial ring base[variables], with at most one Laurent variable.

    The base must be one of the numeric rings; elements are backed by a
    sympy ring in graded reverse-lex order over the base's domain.

    Attributes:
        base (Ring): The coefficient ring.
        variables (tuple): Distinct variable names, in term-order priority.
        laurent (str): Optional variable allowed to carry negative powers.
    """

    base: Ring
    variables: Tuple[str, ...]
    laurent: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise UnsupportedRingError(
                f"duplicate variable names in {self.variables}"
            )
        if self.laurent is not None and self.laurent not in self.variables:
            raise UnsupportedRingError(
                f"Laurent variable {self.laurent!r} is not a ring variable"
            )
        if not isinstance(self.base, NUMERIC_RINGS):
            raise UnsupportedRingError(
                f"polynomial rings over {self.base} are not supported"
            )

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.base.characteristic

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def poly_ring(self) -> "PolyRing":
        return self

    @property
    def sympy_ring(self):
        return sympy_ring(self.variables, self.base.domain)

    @property
    def laurent_index(self) -> Optional[int]:
        if self.laurent is None:
            return None
        return self.variables.index(self.laurent)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingMismatchError(
                f"{name!r} is not a variable of {self}"
            ) from None

    @property
    def zero(self):
        return MultiPoly.from_rep(self, self.sympy_ring.zero)

    @property
    def one(self):
        return self.constant(self.base.one)

    def constant(self, value) -> "MultiPoly":
        value = self.base.coerce(value)
        return MultiPoly(self, {(0,) * self.nvars: value}, trusted=True)

    def monomial(self, exponent: Sequence[int], coefficient=1):
        return MultiPoly(self, {tuple(exponent): coefficient})

    def gen(self, name: str) -> "MultiPoly":
        return MultiPoly.from_rep(
            self, self.sympy_ring.gens[self.index(name)]
        )

    def gens(self) -> Tuple["MultiPoly", ...]:
        return tuple(self.gen(v) for v in self.variables)

    def accepts(self, ring: Ring) -> bool:
        if ring == self or self.base.accepts(ring):
            return True
        if isinstance(ring, Integers):
            return True
        if isinstance(ring, PolyRing):
            return set(ring.variables) <= set(self.variables) and (
                self.base.accepts(ring.base)
            )
        return False

    def to_rep(self, terms: Mapping, trusted: bool = False):
        """Build the sympy element of an exponent -> coefficient mapping."""
        base = self.base
        out = {}
        for exp, coeff in terms.items():
            if not trusted:
                exp = self._check_exponent(exp)
            out[exp] = base.domain_new(coeff)
        return self.sympy_ring.from_dict(out)

    def reduce_rep(self, rep):
        return rep

    def _check_exponent(self, exp) -> Exponent:
        exp = tuple(int(e) for e in exp)
        if len(exp) != self.nvars:
            raise RingMismatchError(
                f"exponent {exp} does not match variables {self.variables}"
            )
        li = self.laurent_index
        for i, e in enumerate(exp):
            if e < 0 and i != li:
                raise RingMismatchError(
                    f"negative exponent on non-Laurent variable "
                    f"{self.variables[i]!r}"
                )
        return exp

    def normalize(self, value):
        if isinstance(value, MultiPoly) and value.ring is self:
            return value
        return self.coerce(value)

    def coerce(self, value):
        if isinstance(value, MultiPoly):
            if value.ring is self or value.ring == self:
                return value
            if isinstance(value.ring, (PolyRing, QuotientRing)):
                src = value.ring.poly_ring
                if self.base.accepts(value.ring):
                    return self.constant(value)
                if set(src.variables) <= set(self.variables):
                    return _reindex(value, self)
            if self.base.accepts(value.ring):
                return self.constant(value)
            raise RingMismatchError(
                f"cannot coerce element of {value.ring} into {self}"
            )
        return self.constant(value)

    def is_unit(self, a) -> bool:
        if len(a.terms) != 1:
            return False
        (exp, coeff), = a.terms.items()
        li = self.laurent_index
        if any(e for i, e in enumerate(exp) if i != li):
            return False
        return self.base.is_unit(coeff)

    def inverse(self, a):
        if not self.is_unit(a):
            raise NonUnitError(f"{a} is not a unit in {self}")
        (exp, coeff), = a.terms.items()
        inv = tuple(-e for e in exp)
        return MultiPoly(self, {inv: self.base.inverse(coeff)}, trusted=True)

    def render(self, a) -> str:
        return a.render()

    def __str__(self) -> str:
        names = ", ".join(self.variables)
        if self.laurent:
            return f"{self.base}[{names}; {self.laurent}^-1]"
        return f"{self.base}[{names}]"


def _elimination_ring(ring: PolyRing):
    """`ring` with one extra leading variable eliminated first."""
    return sympy_ring(
        (ELIMINATION_VARIABLE,) + ring.variables,
        ring.base.domain,
        ELIMINATION_ORDER,
    )


def _tagged(rep, target, tag: int):
    """Lift `rep` into an elimination ring times the extra variable^tag."""
    return target.from_dict({(tag,) + e: c for e, c in rep.items()})


def _untagged(rep, target):
    return target.from_dict({e[1:]: c for e, c in rep.items()})


@dataclass(frozen=True)
class QuotientRing(Ring):
    """Quotient of a polynomial ring by an ideal.

    Supported when the polynomial ring is over a prime field (reduction by
    a Groebner basis) or when the ideal is generated by monomials over any
    base (reduction deletes the terms lying in the ideal). A finite field
    extension is a quotient with `field_order` set to its size.
    """

    ring: PolyRing
    generators: Tuple["MultiPoly", ...]
    field_order: int = 0
    _basis: tuple = field(
        default=(), init=False, compare=False, hash=False, repr=False
    )
    _monomials: tuple = field(
        default=(), init=False, compare=False, hash=False, repr=False
    )

    def __post_init__(self):
        gens = tuple(self.ring.coerce(g) for g in self.generators)
        gens = tuple(g for g in gens if g)
        object.__setattr__(self, "generators", gens)
        if self.ring.laurent is not None:
            raise UnsupportedRingError(
                "quotients of Laurent polynomial rings are not supported"
            )
        if all(len(g.terms) == 1 for g in gens):
            monos = tuple(next(iter(g.terms)) for g in gens)
            if isinstance(self.ring.base, PrimeField) or all(
                self.ring.base.is_unit(c)
                for g in gens
                for c in g.terms.values()
            ):
                object.__setattr__(self, "_monomials", _minimal(monos))
                return
        if not isinstance(self.ring.base, PrimeField):
            raise UnsupportedRingError(
                "quotients by non-monomial ideals need a prime-field base"
            )
        basis = Ideal(self.ring, gens).groebner_basis
        object.__setattr__(self, "_basis", tuple(g.rep for g in basis))

    @property
    def base(self) -> Ring:
        return self.ring.base

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.ring.variables

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def laurent(self):
        return None

    @property
    def laurent_index(self):
        return None

    @property
    def poly_ring(self) -> PolyRing:
        return self.ring

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.ring.characteristic

    @property
    def is_field(self) -> bool:  # type: ignore[override]
        return self.field_order > 0

    @property
    def is_monomial(self) -> bool:
        return not self._basis

    def index(self, name: str) -> int:
        return self.ring.index(name)

    @property
    def zero(self):
        return MultiPoly.from_rep(self, self.ring.sympy_ring.zero)

    @property
    def one(self):
        return self.constant(self.base.one)

    def constant(self, value):
        return MultiPoly.from_rep(self, self.ring.constant(value).rep)

    def gen(self, name: str):
        return MultiPoly.from_rep(self, self.ring.gen(name).rep)

    def gens(self):
        return tuple(self.gen(v) for v in self.variables)

    def accepts(self, ring: Ring) -> bool:
        return ring == self or self.ring.accepts(ring)

    def to_rep(self, terms: Mapping, trusted: bool = False):
        return self.reduce_rep(self.ring.to_rep(terms, trusted))

    def reduce_rep(self, rep):
        """Normal form of a sympy element of the underlying ring."""
        if self._monomials:
            out = rep.copy()
            for e in list(out):
                if any(_divides(m, e) for m in self._monomials):
                    del out[e]
            return out
        if self._basis:
            return rep.rem(list(self._basis))
        return rep

    def normalize(self, value):
        if isinstance(value, MultiPoly) and value.ring is self:
            return value
        return self.coerce(value)

    def coerce(self, value):
        if isinstance(value, MultiPoly) and (
            value.ring is self or value.ring == self
        ):
            return value
        return MultiPoly.from_rep(self, self.ring.coerce(value).rep)

    def standard_monomials(self) -> Optional[List[Exponent]]:
        if self._monomials:
            return _standard_monomials(list(self._monomials), self.nvars)
        leads = [b.LM for b in self._basis]
        return _standard_monomials(leads, self.nvars)

    def is_unit(self, a) -> bool:
        try:
            self.inverse(a)
        except NonUnitError:
            return False
        return True

    def inverse(self, a):
        if not a:
            raise NonUnitError(f"zero is not a unit in {self}")
        if self.field_order:
            return self.pow(a, self.field_order - 2)
        if self._basis:
            return self._groebner_inverse(a)
        zero_exp = (0,) * self.nvars
        c0 = a.terms.get(zero_exp)
        if c0 is None or not self.base.is_unit(c0):
            raise NonUnitError(f"{a} is not a unit in {self}")
        inv0 = self.base.inverse(c0)
        nil = a * inv0 - 1
        if not all(self._is_nilpotent(e) for e in nil.terms):
            raise NonUnitError(f"{a} is not a unit in {self}")
        result, power = self.one, self.one
        while True:
            power = -(power * nil)
            if not power:
                return result * inv0
            result = result + power

    def _is_nilpotent(self, exponent: Exponent) -> bool:
        support = {i for i, k in enumerate(exponent) if k}
        return any(
            {i for i, k in enumerate(m) if k} <= support
            for m in self._monomials
        )

    def _groebner_inverse(self, a):
        """Invert modulo a Groebner basis.

        a is a unit exactly when 1 lies in I + (a). The inverse is then
        the normal form of y modulo I + (a*y - 1) in an order that
        eliminates y first.
        """
        if not isinstance(self.base, PrimeField):
            raise UnsupportedRingError(
                f"inverses in {self} need a prime-field base"
            )
        lifted = MultiPoly.from_rep(self.ring, a.rep)
        if not Ideal(self.ring, self.generators + (lifted,)).is_unit():
            raise NonUnitError(f"{a} is not a unit in {self}")
        elim = _elimination_ring(self.ring)
        y = elim.gens[0]
        seq = [_tagged(b, elim, 0) for b in self._basis]
        seq.append(y * _tagged(a.rep, elim, 0) - 1)
        rest = y.rem(groebner(seq, elim))
        if any(e[0] for e in rest):
            raise NonUnitError(f"{a} is not a unit in {self}")
        inverse = _untagged(rest, self.ring.sympy_ring)
        logger.debug(f"inverse of {a} in {self} has {len(inverse)} terms")
        return MultiPoly.from_rep(self, inverse)

    def render(self, a) -> str:
        return a.render()

    def elements(self) -> Iterable["MultiPoly"]:
        """Enumerate a finite quotient, for point searches."""
        monos = self.standard_monomials()
        if monos is None or not isinstance(self.base, IntegersMod):
            raise UnsupportedRingError(f"{self} is not finite")
        monos = sorted(monos, key=grevlex_key)
        m = self.base.modulus

        def _walk(i, acc):
            if i == len(monos):
                yield MultiPoly(self, dict(acc), trusted=True)
                return
            for c in range(m):
                if c:
                    acc[monos[i]] = c
                else:
                    acc.pop(monos[i], None)
                yield from _walk(i + 1, acc)
            acc.pop(monos[i], None)

        return _walk(0, {})

    def __str__(self) -> str:
        gens = ", ".join(g.render() for g in self.generators)
        return f"{self.ring}/({gens})"


def finite_field(p: int, degree: int = 2) -> Ring:
    """Return F_p (degree 1) or F_{p^2} as a quotient F_p[i]/(m(i))."""
    field_p = PrimeField(p)
    if degree == 1:
        return field_p
    if degree != 2:
        raise UnsupportedRingError("only F_p and F_{p^2} are provided")
    R = PolyRing(field_p, ("i",))
    (i,) = R.gens()
    if p == 2:
        modulus = i * i + i + 1
    else:
        squares = {x * x % p for x in range(p)}
        n = next(x for x in range(2, p) if x not in squares)
        modulus = i * i - n
    return QuotientRing(R, (modulus,), field_order=p * p)


class MultiPoly:
    """A sparse polynomial over a `PolyRing` or `QuotientRing`.

    `rep` is the backing sympy ring element, kept in normal form for
    quotient rings. `terms` is a read-only view mapping exponent tuples to
    nonzero coefficients as plain Python values. Instances are never
    mutated after construction.
    """

    __slots__ = ("ring", "rep", "_terms", "_hash")

    def __init__(self, ring, terms: Optional[Mapping] = None,
                 trusted: bool = False):
        self.ring = ring
        self.rep = ring.to_rep(terms if terms is not None else {}, trusted)
        self._terms = None
        self._hash = None

    @classmethod
    def from_rep(cls, ring, rep, reduced: bool = False) -> "MultiPoly":
        """Wrap a sympy element of `ring`'s underlying sympy ring."""
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.rep = rep if reduced else ring.reduce_rep(rep)
        obj._terms = None
        obj._hash = None
        return obj

    @property
    def terms(self) -> Terms:
        if self._terms is None:
            value = self.ring.base.domain_value
            self._terms = {e: value(c) for e, c in self.rep.items()}
        return self._terms

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.ring is self.ring:
                return other
            if self.ring.accepts(other.ring):
                return self.ring.coerce(other)
            if hasattr(other.ring, "accepts") and other.ring.accepts(
                self.ring
            ):
                return NotImplemented
            raise RingMismatchError(
                f"cannot combine elements of {self.ring} and {other.ring}"
            )
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly.from_rep(self.ring, self.rep + other.rep, True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly.from_rep(self.ring, -self.rep, True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly.from_rep(self.ring, self.rep - other.rep, True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            scalar = self.ring.base.domain_new(other)
            return MultiPoly.from_rep(self.ring, self.rep * scalar)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly.from_rep(self.ring, self.rep * other.rep)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.ring.inverse(self) ** (-n)
        if n == 0:
            return self.ring.one
        if not self.rep:
            return self
        if isinstance(self.ring, PolyRing):
            return MultiPoly.from_rep(self.ring, self.rep ** n, True)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                return False
            return self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.rep
            zero = (0,) * self.ring.nvars
            return len(self.terms) == 1 and self.terms.get(zero) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.ring.variables

    def coefficient(self, exponent: Sequence[int]):
        exponent = tuple(exponent)
        if len(exponent) != self.ring.nvars:
            raise RingMismatchError(
                f"monomial {exponent} does not match {self.ring.variables}"
            )
        return self.terms.get(exponent, self.ring.base.zero)

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return not self.rep or set(self.rep) == {zero}

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.base.zero)

    def is_monomial(self) -> bool:
        return len(self.rep) == 1

    def leading(self, key: Callable = grevlex_key):
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    def degree(self, var: Optional[str] = None) -> int:
        """Total degree, or degree in `var`; -1 for the zero polynomial."""
        if not self.rep:
            return -1
        if var is None:
            return max(sum(e) for e in self.rep)
        i = self.ring.index(var)
        return max(e[i] for e in self.rep)

    def min_degree(self, var: str) -> int:
        i = self.ring.index(var)
        return min(e[i] for e in self.rep)

    def is_homogeneous(self, indices: Optional[Sequence[int]] = None):
        if indices is None:
            indices = range(self.ring.nvars)
        degrees = {sum(e[i] for i in indices) for e in self.rep}
        return len(degrees) <= 1

    def derivative(self, var: str) -> "MultiPoly":
        i = self.ring.index(var)
        rep = self.rep
        out = {}
        for e, c in rep.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return MultiPoly.from_rep(self.ring, rep.ring.from_dict(out))

    def map_coefficients(self, fn: Callable, ring) -> "MultiPoly":
        """Apply `fn` to every coefficient, landing in `ring`."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError(f"{ring} has a different variable count")
        return MultiPoly(
            ring, {e: fn(c) for e, c in self.terms.items()}, trusted=True
        )

    def substitute(self, values: Mapping[str, object],
                   target: Optional[Ring] = None):
        """Evaluation homomorphism sending variables to `values`.

        Variables missing from `values` must exist in `target` and are kept.
        Coefficients are coerced into `target` (default: the own ring).
        """
        target = target if target is not None else self.ring
        images = []
        for name in self.ring.variables:
            if name in values:
                images.append(target.coerce(values[name]))
            else:
                images.append(target.coerce(target.gen(name)))
        cache: Dict[Tuple[int, int], object] = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = target.pow(images[i], e)
            return cache[key]

        total = target.zero
        for exp, coeff in self.terms.items():
            term = target.coerce(coeff)
            for i, e in enumerate(exp):
                if e:
                    term = target.mul(term, power(i, e))
            total = target.add(total, term)
        return total

    def evaluate(self, point: Sequence, target: Optional[Ring] = None):
        """Evaluate at a point with entries in `target` (default base)."""
        target = target if target is not None else self.ring.base
        if len(point) != self.ring.nvars:
            raise RingMismatchError("point dimension mismatch")
        values = dict(zip(self.ring.variables, point))
        return self.substitute(values, target)

    def monic(self) -> "MultiPoly":
        _, lc = self.leading()
        return self * self.ring.coerce(self.ring.base.inverse(lc))

    def render(self) -> str:
        """Canonical text: descending grevlex, `*` products, `^` powers."""
        if not self.rep:
            return "0"
        base = self.ring.base
        names = self.ring.variables
        terms = self.terms
        pieces = []
        for exp in sorted(terms, key=grevlex_key, reverse=True):
            mono = render_monomial(names, exp)
            pieces.append(render_term(base.render(terms[exp]), mono))
        return join_terms(pieces)


def render_monomial(names: Sequence[str], exp: Sequence[int]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_term(coeff: str, mono: str) -> Tuple[bool, str]:
    """Return (negative, body) for one coefficient-monomial pair."""
    compound = _is_compound(coeff)
    negative = coeff.startswith("-") and not compound
    if negative:
        coeff = coeff[1:]
    if compound:
        coeff = f"({coeff})"
    if not mono:
        return negative, coeff
    if coeff == "1":
        return negative, mono
    return negative, f"{coeff}*{mono}"


def join_terms(pieces: Sequence[Tuple[bool, str]]) -> str:
    out = []
    for i, (negative, body) in enumerate(pieces):
        if i == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def _is_compound(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0 and text[i - 1] != "^":
            return True
    return False


def _reindex(poly: MultiPoly, target: PolyRing) -> MultiPoly:
    src = poly.ring.poly_ring
    positions = [target.index(v) for v in src.variables]
    out = {}
    for e, c in poly.terms.items():
        exp = [0] * target.nvars
        for pos, k in zip(positions, e):
            exp[pos] = k
        out[tuple(exp)] = target.base.coerce(c)
    return MultiPoly(target, out, trusted=True)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Add, subtract or multiply two polynomials of the same ring."""
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} and {b.ring} differ")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def coefficient_of(p: MultiPoly, monomial: Sequence[int]):
    """Return the coefficient of `monomial` in `p`, or zero."""
    return p.coefficient(monomial)


def convert(value, source: Ring, target: Ring):
    """Map an element of `source` to `target` structurally.

    Numbers go through `target.coerce`. Polynomials are mapped coefficient
    by coefficient onto the variables of `target` with the same names.
    """
    if not isinstance(value, MultiPoly):
        if isinstance(target, (PolyRing, QuotientRing)):
            return target.constant(convert(value, source, target.base))
        return target.coerce(value)
    src = value.ring
    if isinstance(target, (PolyRing, QuotientRing)) and src == target:
        return value
    if not isinstance(target, (PolyRing, QuotientRing)):
        if value.is_constant():
            return convert(value.constant_term(), src.base, target)
        raise UnmappableCoefficientError(
            f"{value} has variables that do not exist in {target}"
        )
    if target.base.accepts(src) and not set(src.variables) & set(
        target.variables
    ):
        return target.constant(value)
    positions = []
    for name in src.variables:
        positions.append(
            target.variables.index(name) if name in target.variables
            else None
        )
    out = {}
    for e, c in value.terms.items():
        exp = [0] * target.nvars
        for pos, k in zip(positions, e):
            if k and pos is None:
                raise UnmappableCoefficientError(
                    f"{value} has variables that do not exist in {target}"
                )
            if pos is not None:
                exp[pos] = k
        key = tuple(exp)
        mapped = convert(c, src.base, target.base)
        out[key] = out[key] + mapped if key in out else mapped
    return MultiPoly(target, out, trusted=True)


_OPERATORS = "+-*/^()"


def _tokenize(text: str) -> List[Tuple[str, object, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in _OPERATORS:
            tokens.append(("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", column=i)
    tokens.append(("end", None, len(text)))
    return tokens


class _PolyParser:
    """Recursive-descent parser for `+ - * / ^` and parentheses."""

    def __init__(self, text: str, ring):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        kind, got, col = self.take()
        if got != value:
            found = "end of input" if kind == "end" else repr(got)
            raise ParseError(f"expected {value!r}, found {found}", column=col)

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", column=0)
        value = self.expr()
        kind, got, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {got!r}", column=col)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, _ = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, col = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                value = value * self._constant_inverse(rhs, col)
        return value

    def _constant_inverse(self, rhs, col):
        if not rhs.is_constant() or not rhs:
            raise ParseError("division by a non-constant", column=col)
        try:
            inv = self.ring.base.inverse(rhs.constant_term())
        except NonUnitError:
            raise ParseError(
                f"cannot divide by {rhs} in {self.ring.base}", column=col
            ) from None
        return self.ring.constant(inv)

    def factor(self):
        kind, got, col = self.peek()
        if kind == "op" and got in ("+", "-"):
            self.take()
            value = self.factor()
            return -value if got == "-" else value
        return self.power()

    def power(self):
        value = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            _, _, col = self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, exp, ecol = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer", column=ecol)
            try:
                value = value ** (sign * exp)
            except NonUnitError:
                raise ParseError(
                    "negative power of a non-Laurent expression", column=col
                ) from None
        return value

    def atom(self):
        kind, got, col = self.take()
        if kind == "num":
            return self.ring.constant(got)
        if kind == "name":
            if got not in self.ring.variables:
                raise ParseError(f"unknown variable {got!r}", column=col)
            return self.ring.gen(got)
        if kind == "op" and got == "(":
            value = self.expr()
            self.expect(")")
            return value
        found = "end of input" if kind == "end" else repr(got)
        raise ParseError(f"unexpected {found}", column=col)


def parse_poly(text: str, ring) -> MultiPoly:
    """Parse `text` into a polynomial of `ring`.

    Raises:
        ParseError: With the 0-based column of the offending token.
    """
    return _PolyParser(text, ring).parse()


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimal(monomials: Iterable[Exponent]) -> Tuple[Exponent, ...]:
    """Minimal generators of a monomial ideal."""
    out: List[Exponent] = []
    for m in sorted(set(monomials), key=grevlex_key):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return tuple(out)


def _standard_monomials(leads: Sequence[Exponent], n: int):
    """Monomials outside the lead ideal, None when infinitely many."""
    bounds = []
    for i in range(n):
        pure = [m[i] for m in leads if sum(m) == m[i] and m[i] > 0]
        if not pure:
            if any(sum(m) == 0 for m in leads):
                return []
            return None
        bounds.append(min(pure))
    out = [()]
    for b in bounds:
        out = [m + (k,) for m in out for k in range(b)]
    return [m for m in out if not any(_divides(g, m) for g in leads)]


def _require_groebner_ring(ring) -> None:
    if not isinstance(ring, PolyRing) or not isinstance(
        ring.base, PrimeField
    ):
        raise UnsupportedRingError(
            f"Groebner bases need a polynomial ring over a prime field, "
            f"got {ring}"
        )
    if ring.laurent is not None:
        raise UnsupportedRingError("Groebner bases of Laurent rings")
    if ring.nvars > MAX_GROEBNER_VARIABLES:
        raise UnsupportedRingError(
            f"{ring.nvars} variables exceed the limit of "
            f"{MAX_GROEBNER_VARIABLES}"
        )


class Ideal:
    """An ideal of a polynomial ring over a prime field.

    The reduced Groebner basis (graded reverse-lex) is computed on first
    use and cached; the cache is written once under a lock.
    """

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        _require_groebner_ring(ring)
        gens = []
        for g in generators:
            if isinstance(g, MultiPoly) and g.ring != ring:
                raise RingMismatchError(f"{g} does not belong to {ring}")
            g = ring.coerce(g)
            if g:
                gens.append(g)
        self.ring = ring
        self.generators: Tuple[MultiPoly, ...] = tuple(gens)
        self._basis: Optional[Tuple[MultiPoly, ...]] = None
        self._lock = threading.Lock()

    @property
    def groebner_basis(self) -> Tuple[MultiPoly, ...]:
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    basis = []
                    if self.generators:
                        basis = groebner(
                            [g.rep for g in self.generators],
                            self.ring.sympy_ring,
                        )
                    logger.debug(
                        f"Groebner basis of {len(self.generators)} "
                        f"generators has {len(basis)} elements"
                    )
                    self._basis = tuple(
                        MultiPoly.from_rep(self.ring, b, True)
                        for b in sorted(basis, key=lambda b: grevlex(b.LM))
                    )
        return self._basis

    def reduce(self, f) -> MultiPoly:
        """Normal form of f modulo the ideal."""
        f = self.ring.coerce(f)
        basis = [b.rep for b in self.groebner_basis]
        if not basis:
            return f
        return MultiPoly.from_rep(self.ring, f.rep.rem(basis), True)

    def contains(self, f) -> bool:
        return not self.reduce(f)

    __contains__ = contains

    def is_unit(self) -> bool:
        basis = self.groebner_basis
        return len(basis) == 1 and basis[0].is_constant() and bool(basis[0])

    def is_monomial(self) -> bool:
        return all(b.is_monomial() for b in self.groebner_basis)

    def standard_monomials(self) -> Optional[List[Exponent]]:
        leads = [b.rep.LM for b in self.groebner_basis]
        if not leads:
            return None
        return _standard_monomials(leads, self.ring.nvars)

    def __add__(self, other) -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else other
        return Ideal(self.ring, tuple(self.generators) + tuple(extra))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and (
            self.groebner_basis == other.groebner_basis
        )

    __hash__ = None  # type: ignore[assignment]

    def quotient(self, v) -> "Ideal":
        """The ideal quotient (I : v), via intersection with (v).

        I and (v) are intersected by eliminating y from y*I + (1 - y)*(v);
        each generator of the intersection is then divided by v.
        """
        v = self.ring.coerce(v)
        if not v:
            return Ideal(self.ring, [1])
        elim = _elimination_ring(self.ring)
        seq = [_tagged(g.rep, elim, 1) for g in self.generators]
        seq.append(_tagged(v.rep, elim, 0) - _tagged(v.rep, elim, 1))
        basis = groebner(seq, elim)
        target = self.ring.sympy_ring
        gens = []
        for h in basis:
            if any(e[0] for e in h):
                continue
            try:
                q = _untagged(h, target).exquo(v.rep)
            except ExactQuotientFailed:
                raise InexactDivisionError(
                    "ideal quotient generator not divisible"
                ) from None
            gens.append(MultiPoly.from_rep(self.ring, q, True))
        logger.debug(
            f"ideal quotient by {v} has {len(gens)} generators"
        )
        return Ideal(self.ring, gens)

    def __repr__(self) -> str:
        gens = ", ".join(g.render() for g in self.generators)
        return f"Ideal({gens})"


def buchberger(ideal: Ideal) -> Ideal:
    """Compute and cache the reduced Groebner basis of `ideal`."""
    ideal.groebner_basis
    return ideal


def is_unit_ideal(ideal: Ideal) -> bool:
    return ideal.is_unit()


def ideal_contains(ideal: Ideal, f) -> bool:
    return ideal.contains(f)


def is_monomial_ideal(ideal: Ideal) -> bool:
    return ideal.is_monomial()


def standard_monomials(ideal: Ideal) -> Optional[List[Exponent]]:
    return ideal.standard_monomials()


def is_zero_divisor(v, ideal: Ideal) -> bool:
    """Whether v is a zero divisor modulo I, that is (I : v) != I."""
    if isinstance(v, MultiPoly) and v.ring != ideal.ring:
        raise RingMismatchError(f"{v} does not belong to {ideal.ring}")
    colon = ideal.quotient(v)
    return any(not ideal.contains(g) for g in colon.generators)


def radical_is_point(ideal: Ideal, point: Sequence[int]) -> bool:
    """Certify that the zero set of `ideal` is the single rational `point`.

    Holds when the quotient is finite dimensional, proper, and contains a
    power (x_i - P_i)^k for every variable, with k bounded by the
    dimension of the quotient.
    """
    if ideal.is_unit():
        return False
    monos = ideal.standard_monomials()
    if monos is None:
        return False
    bound = len(monos)
    for name, coord in zip(ideal.ring.variables, point):
        h = ideal.ring.gen(name) - coord
        power = ideal.ring.one
        for _ in range(bound):
            power = power * h
            if ideal.contains(power):
                break
        else:
            return False
    return True


def reduce_ring_mod_p(ring: Ring, p: int) -> Ring:
    """The ring obtained by reducing coefficients modulo the prime p."""
    if isinstance(ring, (Integers, Rationals)):
        return PrimeField(p)
    if isinstance(ring, IntegersMod):
        if ring.modulus % p:
            raise UnmappableCoefficientError(
                f"{ring} does not reduce modulo {p}"
            )
        return PrimeField(p)
    if isinstance(ring, PolyRing):
        return PolyRing(
            reduce_ring_mod_p(ring.base, p), ring.variables, ring.laurent
        )
    if isinstance(ring, QuotientRing):
        target = reduce_ring_mod_p(ring.ring, p)
        gens = tuple(convert(g, ring.ring, target) for g in ring.generators)
        return QuotientRing(target, gens)
    raise UnsupportedRingError(f"cannot reduce {ring} modulo {p}")
