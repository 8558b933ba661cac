"""
brauerkit/errors.py

Exception hierarchy for the `brauerkit` package. Every error raised by a
pipeline stage derives from `BrauerkitError` and records the module it
came from, so the command line can report provenance.
"""

from typing import Optional, Sequence


class BrauerkitError(Exception):
    """Base class for all brauerkit errors.

    Attributes:
        module (str): Short name of the module that raised the error.
    """

    module = "brauerkit"

    def __init__(self, message: str, module: Optional[str] = None):
        super().__init__(message)
        if module is not None:
            self.module = module


class RingMismatchError(BrauerkitError):
    module = "algebra"


class UnsupportedRingError(BrauerkitError):
    module = "algebra"


class ParseError(BrauerkitError):
    """Raised when a polynomial string or job document cannot be parsed.

    Attributes:
        line (int): 1-based line in the job document (0 when unknown).
        column (int): 0-based column inside the offending value.
    """

    module = "algebra"

    def __init__(self, message: str, column: int = 0, line: int = 0):
        self.line = line
        self.column = column
        super().__init__(message)

    def __str__(self) -> str:
        base = super().__str__()
        if self.line:
            return f"line {self.line}, column {self.column}: {base}"
        return f"column {self.column}: {base}"


class TruncationError(BrauerkitError):
    module = "series"


class InexactDivisionError(BrauerkitError):
    module = "series"


class NonUnitError(BrauerkitError):
    module = "algebra"


class FGLAxiomError(BrauerkitError):
    """A series failed one of the formal group law axioms.

    Attributes:
        axiom (str): "unitality", "commutativity" or "associativity".
        monomial (str): Rendering of the first offending monomial.
        degree (int): Total degree of that monomial.
    """

    module = "fgl"

    def __init__(self, axiom: str, monomial: str, degree: int):
        self.axiom = axiom
        self.monomial = monomial
        self.degree = degree
        super().__init__(
            f"{axiom} violated at {monomial} (degree {degree})"
        )


class UnmappableCoefficientError(BrauerkitError):
    module = "algebra"


class NonIntegralError(BrauerkitError):
    module = "stienstra"


class ConvergenceError(BrauerkitError):
    """The coboundary elimination did not reach t-degree -1.

    Attributes:
        residual (list): Renderings of monomials still off degree -1.
    """

    module = "artin"

    def __init__(self, message: str, residual: Sequence[str] = ()):
        self.residual = list(residual)
        if self.residual:
            shown = ", ".join(self.residual[:5])
            message = f"{message}; residual terms: {shown}"
        super().__init__(message)


class NormalizationError(BrauerkitError):
    module = "artin"


class SurfaceError(BrauerkitError):
    module = "stienstra"


class JobError(BrauerkitError):
    module = "cli"


class CompositionError(BrauerkitError):
    module = "series"
