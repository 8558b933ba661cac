"""
brauerkit/jobs.py

Job documents and the pipeline that runs them.

A job is an INI document with three sections:

    [ring]
    prime = 5
    precision = 1
    params = a, b
    coefficients = integers

    [surface]
    kind = complete_intersection
    f1 = x0^4 + x1^4 + x2^4 + x3^4

    [outputs]
    requested = fgl, height
    order = 11
    hmax = 1

`kind` is one of complete_intersection (keys f1..f3), double_plane (key
f) or elliptic_weierstrass (keys a1, a2, a3, a4, a6 in t, over F_prime).
Instead of equations, `catalog = <name>` picks a worked surface.
`coefficients` is integers, rationals or prime. Outputs are taken from
log, fgl, p_series, height, landweber and discriminant.
"""

import configparser
import json
import logging
import re
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from brauerkit import catalog
from brauerkit.algebra import (
    Integers,
    PolyRing,
    PrimeField,
    Rationals,
    parse_poly,
)
from brauerkit.artin import artin_p_series, run_artin
from brauerkit.config import Config
from brauerkit.elliptic import (
    COEFFICIENT_NAMES,
    WeierstrassModel,
    discriminant,
    specialize,
    validate_k3,
)
from brauerkit.errors import JobError, ParseError
from brauerkit.fgl import height_from_p_series, p_series
from brauerkit.landweber import exactness_report
from brauerkit.stienstra import (
    CompleteIntersectionK3,
    DoublePlaneK3,
    brauer_fgl,
    brauer_height,
    brauer_p_series,
    coordinate_names,
    surface_log,
)

logger = logging.getLogger(__name__)

SCHEMA = "brauerkit/1"

COMPLETE_INTERSECTION = "complete_intersection"
DOUBLE_PLANE = "double_plane"
ELLIPTIC = "elliptic_weierstrass"
KINDS = (COMPLETE_INTERSECTION, DOUBLE_PLANE, ELLIPTIC)

OUTPUTS = ("log", "fgl", "p_series", "height", "landweber", "discriminant")
COEFFICIENTS = ("integers", "rationals", "prime")

_SECTION = re.compile(r"^\s*\[([^\]]+)\]")
_KEY = re.compile(r"^\s*([A-Za-z0-9_]+)\s*[=:]")


@dataclass(frozen=True)
class JobSpec:
    """A validated job.

    Attributes:
        kind (str): Surface kind, one of KINDS.
        prime (Optional[int]): Working prime; required for heights.
        precision (int): Laws are reduced modulo prime**precision.
        params (Tuple[str, ...]): Parameter names of a family.
        coefficients (str): integers, rationals or prime.
        polynomials (Dict[str, str]): Equation key to polynomial text.
        requested (Tuple[str, ...]): Outputs, in canonical order.
        order (int): Truncation order N.
        hmax (int): Largest height to resolve.
        catalog (str): Catalog surface name, when used instead of equations.
        max_iter (int): Elimination round bound, 0 for twice the order.
        lines (Dict[str, int]): Document line of each equation key.
    """

    kind: str
    prime: Optional[int]
    precision: int
    params: Tuple[str, ...]
    coefficients: str
    polynomials: Dict[str, str]
    requested: Tuple[str, ...]
    order: int
    hmax: int
    catalog: str = ""
    max_iter: int = 0
    lines: Dict[str, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise JobError(f"unknown surface kind {self.kind!r}")
        if self.coefficients not in COEFFICIENTS:
            raise JobError(f"unknown coefficients {self.coefficients!r}")
        unknown = set(self.requested) - set(OUTPUTS)
        if unknown:
            raise JobError(f"unknown outputs: {', '.join(sorted(unknown))}")
        needs_prime = {"height", "landweber", "p_series"} & set(
            self.requested
        )
        if (needs_prime or self.kind == ELLIPTIC) and not self.prime:
            raise JobError("a prime is required for the requested outputs")
        if {"height", "landweber"} & set(self.requested):
            if self.order <= self.prime ** self.hmax:
                raise JobError(
                    f"order {self.order} cannot resolve height {self.hmax} "
                    f"at p={self.prime}; need more than "
                    f"{self.prime ** self.hmax}"
                )
        if "log" in self.requested and self.kind == ELLIPTIC:
            raise JobError("log is only available for Stienstra surfaces")
        if "discriminant" in self.requested and self.kind != ELLIPTIC:
            raise JobError("discriminant needs an elliptic_weierstrass job")


def _key_lines(text: str) -> Dict[Tuple[str, str], int]:
    out = {}
    section = ""
    for lineno, line in enumerate(text.splitlines(), start=1):
        m = _SECTION.match(line)
        if m:
            section = m.group(1).strip().lower()
            continue
        m = _KEY.match(line)
        if m:
            out[(section, m.group(1).lower())] = lineno
    return out


def _split(value: str) -> Tuple[str, ...]:
    return tuple(v.strip() for v in value.split(",") if v.strip())


def parse_job(text: str, defaults: Optional[Config] = None) -> JobSpec:
    """Read a job document; missing values come from `defaults`.

    Raises:
        JobError: For malformed documents or inconsistent settings.
    """
    defaults = defaults or Config()
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as e:
        raise JobError(f"Error reading the job document: {e}")
    for section in ("ring", "surface", "outputs"):
        if not parser.has_section(section):
            raise JobError(f"missing section [{section}]")
    ring, surf, outs = parser["ring"], parser["surface"], parser["outputs"]
    lines = _key_lines(text)

    name = surf.get("catalog", "").strip()
    kind = surf.get("kind", "").strip()
    if name:
        built = catalog.surface(name)
        if not kind:
            kind = ELLIPTIC if isinstance(built, WeierstrassModel) else (
                DOUBLE_PLANE if isinstance(built, DoublePlaneK3)
                else COMPLETE_INTERSECTION
            )
    if kind == COMPLETE_INTERSECTION:
        keys = [k for k in ("f1", "f2", "f3") if k in surf]
    elif kind == DOUBLE_PLANE:
        keys = ["f"] if "f" in surf else []
    else:
        keys = [k for k in COEFFICIENT_NAMES if k in surf]
    if not keys and not name:
        raise JobError(f"no equations given for a {kind or 'surface'} job")
    polynomials = {k: surf[k] for k in keys}

    requested = _split(outs.get("requested", ""))
    try:
        prime = ring.getint("prime", fallback=defaults.prime)
        if name in catalog.NATIVE_PRIME:
            prime = catalog.NATIVE_PRIME[name]
        return JobSpec(
            kind=kind,
            prime=prime,
            precision=ring.getint("precision", fallback=defaults.precision),
            params=_split(ring.get("params", "")),
            coefficients=ring.get("coefficients", "integers").strip(),
            polynomials=polynomials,
            requested=tuple(o for o in OUTPUTS if o in requested)
            + tuple(o for o in requested if o not in OUTPUTS),
            order=outs.getint("order", fallback=defaults.order),
            hmax=outs.getint("hmax", fallback=defaults.hmax),
            catalog=name,
            max_iter=outs.getint("max_iter", fallback=defaults.max_iter),
            lines={k: lines.get(("surface", k), 0) for k in keys},
        )
    except ValueError as e:
        raise JobError(f"invalid number in job document: {e}")


def override(job: JobSpec, prime: Optional[int] = None,
             order: Optional[int] = None,
             hmax: Optional[int] = None) -> JobSpec:
    """Apply command-line values, which win over the document."""
    if job.catalog in catalog.NATIVE_PRIME:
        prime = None
    changes = {
        k: v for k, v in (("prime", prime), ("order", order), ("hmax", hmax))
        if v is not None
    }
    return replace(job, **changes) if changes else job


def _base(job: JobSpec):
    if job.kind == ELLIPTIC:
        return PrimeField(job.prime)
    if job.coefficients == "rationals":
        return Rationals()
    return Integers()


def build_surface(job: JobSpec):
    """The surface or model of a job.

    Raises:
        ParseError: With the document line of the offending equation.
    """
    if job.catalog:
        return catalog.surface(job.catalog, job.prime)
    base = _base(job)
    key = None
    try:
        if job.kind == ELLIPTIC:
            key = "a"
            return WeierstrassModel.parse(job.polynomials, base, job.params)
        if job.kind == DOUBLE_PLANE:
            key = "f"
            return DoublePlaneK3.parse(job.polynomials["f"], job.params,
                                       base)
        key = "f1"
        return CompleteIntersectionK3.parse(
            [job.polynomials[k] for k in sorted(job.polynomials)],
            job.params, base,
        )
    except ParseError as e:
        line = _failing_line(job, key, e)
        raise ParseError(e.args[0], column=e.column, line=line) from None


def _failing_line(job: JobSpec, key: Optional[str], error: ParseError):
    # The parsers report the column only; find the value that fails.
    laurent = None
    if job.kind == ELLIPTIC:
        names = ("t",) + job.params
        laurent = "t"
    elif job.kind == DOUBLE_PLANE:
        names = coordinate_names(2) + job.params
    else:
        names = coordinate_names(len(job.polynomials) + 2) + job.params
    ring = PolyRing(_base(job), names, laurent)
    for k in sorted(job.polynomials):
        text = job.polynomials[k]
        if not text.strip() and job.kind == ELLIPTIC:
            continue
        try:
            parse_poly(text, ring)
        except ParseError:
            return job.lines.get(k, 0)
    return job.lines.get(key, 0)


@dataclass
class JobResult:
    """Rendered results, in request order."""

    job: JobSpec
    values: Dict[str, object] = field(default_factory=dict)
    text_lines: List[str] = field(default_factory=list)

    def text(self) -> str:
        return "\n".join(self.text_lines) + "\n"

    def machine(self) -> str:
        document = {"schema": SCHEMA, "kind": self.job.kind}
        document["prime"] = self.job.prime
        document["order"] = self.job.order
        document.update(self.values)
        return json.dumps(document, sort_keys=True, indent=2) + "\n"

    def render(self, format: str = "text") -> str:
        if format == "machine":
            return self.machine()
        if format != "text":
            raise JobError(f"unknown output format {format!r}")
        return self.text()

    def add(self, key: str, label: str, value) -> None:
        self.values[key] = value
        if isinstance(value, list):
            for item in value:
                self.text_lines.append(f"{label}: {item}")
        else:
            self.text_lines.append(f"{label}: {value}")


def _run_stienstra(job: JobSpec, X, result: JobResult) -> None:
    N, p = job.order, job.prime
    if "log" in job.requested:
        result.add("log", "log", surface_log(X, N - 1).render())
    if "fgl" in job.requested:
        reduce_at = p if job.coefficients == "prime" else None
        law = brauer_fgl(X, reduce_at, job.precision, N)
        result.add("fgl", "law", law.render())
    if "p_series" in job.requested:
        result.add("p_series", "p-series",
                   brauer_p_series(X, p, N).render())
    if "height" in job.requested:
        result.add("height", "height",
                   str(brauer_height(X, p, job.hmax, N)))


def _run_elliptic(job: JobSpec, W: WeierstrassModel,
                  result: JobResult) -> None:
    N, p = job.order, job.prime
    if "discriminant" in job.requested:
        disc = discriminant(W)
        shape = validate_k3(W)
        result.add("discriminant", "discriminant", disc.delta.render())
        result.add("discriminant_valuation", "discriminant valuation",
                   disc.t_adic_valuation)
        result.add("k3_shape", "k3 shape", shape.is_k3_shape)
    law = None
    if "fgl" in job.requested:
        law, state = run_artin(specialize(W, N), N, job.max_iter or None)
        result.add("fgl", "law", law.render())
        result.add("iterations", "iterations", state.iteration)
    ps = None
    if {"p_series", "height"} & set(job.requested):
        if law is not None:
            ps = p_series(law, p)
        else:
            ps = artin_p_series(specialize(W, N), p, job.max_iter or None)
    if "p_series" in job.requested:
        result.add("p_series", "p-series", ps.render())
    if "height" in job.requested:
        result.add("height", "height",
                   str(height_from_p_series(ps, p, job.hmax)))


def run(job: JobSpec) -> JobResult:
    """Run every requested output of a job.

    Raises:
        ParseError: When an equation does not parse.
        BrauerkitError: Pipeline errors, carrying the failing module.
    """
    surface = build_surface(job)
    result = JobResult(job)
    logger.debug(f"running {job.kind} job for {', '.join(job.requested)}")
    if isinstance(surface, WeierstrassModel):
        _run_elliptic(job, surface, result)
    else:
        _run_stienstra(job, surface, result)
    if "landweber" in job.requested:
        report = exactness_report(surface, job.prime, job.hmax)
        result.add("landweber", "landweber", report.lines())
    return result
