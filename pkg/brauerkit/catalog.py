"""
brauerkit/catalog.py

Worked surfaces and one- and two-parameter families, kept as data so the
command line, the job runner and the golden table build them the same way.

Each entry is a factory taking the prime where it matters; the integral
surfaces ignore it and are reduced later by the pipelines.
"""

from typing import Callable, Dict, Optional

from brauerkit.algebra import PrimeField
from brauerkit.elliptic import WeierstrassModel
from brauerkit.errors import SurfaceError
from brauerkit.stienstra import CompleteIntersectionK3, DoublePlaneK3

FERMAT_QUARTIC = "x0^4 + x1^4 + x2^4 + x3^4"
DIAGONAL_SEXTIC = "x0^6 + x1^6 + x2^6"

QUARTIC_FAMILY = (
    "x0^4 + x0^2*x1*x3 + x0*x1*x2^2 + x0*x3^3 + x1^4 + x2^4"
    " + a*x1*x3^3 + b*x1*x2^2*x3"
)
SEXTIC_FAMILY = (
    "-x0^6 + x0^2*x1^4 + x0*x1^5 + x1*x2^5 + x2^6"
    " + a*x0*x1^2*x2^3 + b*x0^2*x1^2*x2^2"
)

CHAR5_MODEL = {"a2": "3*t^2", "a6": "4*t^10 + 3*t^6 + 4*t^2"}
CHAR2_MODEL = {"a1": "t^2", "a4": "t"}
ELLIPTIC_FAMILY = {
    "a1": "a + b*t",
    "a2": "1 + t",
    "a3": "t^2",
    "a4": "1 + t^4 + t^8",
    "a6": "t^7 + t^8",
}
FAMILY_PARAMS = ("a", "b")


def fermat_quartic(p: Optional[int] = None) -> CompleteIntersectionK3:
    return CompleteIntersectionK3.parse([FERMAT_QUARTIC])


def diagonal_sextic(p: Optional[int] = None) -> DoublePlaneK3:
    return DoublePlaneK3.parse(DIAGONAL_SEXTIC)


def quartic_family(p: Optional[int] = None) -> CompleteIntersectionK3:
    return CompleteIntersectionK3.parse([QUARTIC_FAMILY], FAMILY_PARAMS)


def sextic_family(p: Optional[int] = None) -> DoublePlaneK3:
    return DoublePlaneK3.parse(SEXTIC_FAMILY, FAMILY_PARAMS)


def char5_model(p: Optional[int] = None) -> WeierstrassModel:
    return WeierstrassModel.parse(CHAR5_MODEL, PrimeField(5))


def char2_model(p: Optional[int] = None) -> WeierstrassModel:
    return WeierstrassModel.parse(CHAR2_MODEL, PrimeField(2))


def elliptic_family(p: Optional[int] = None) -> WeierstrassModel:
    return WeierstrassModel.parse(
        ELLIPTIC_FAMILY, PrimeField(p or 3), FAMILY_PARAMS
    )


SURFACES: Dict[str, Callable] = {
    "fermat_quartic": fermat_quartic,
    "diagonal_sextic": diagonal_sextic,
    "quartic_family": quartic_family,
    "sextic_family": sextic_family,
    "char5_model": char5_model,
    "char2_model": char2_model,
    "elliptic_family": elliptic_family,
}

# Primes the fixed-characteristic models are defined over.
NATIVE_PRIME = {"char5_model": 5, "char2_model": 2}


def surface(name: str, p: Optional[int] = None):
    """Build a catalog surface by name.

    Raises:
        SurfaceError: For unknown names.
    """
    try:
        factory = SURFACES[name]
    except KeyError:
        known = ", ".join(sorted(SURFACES))
        raise SurfaceError(
            f"unknown surface {name!r}; known: {known}", module="catalog"
        ) from None
    return factory(p)
