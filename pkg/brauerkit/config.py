"""
brauerkit/config.py

This module provides the configuration class for the `brauerkit` package.
It defines the `Config` class, which holds the defaults every pipeline
falls back to: the working prime, truncation order, height bound, output
format and logging level.

Classes:
    - Config: Run settings shared by the command line and job documents.

Example usage:

    >>> config = Config(prime="3", order="28", slow="yes")
    >>> print(config.prime)
    3

    >>> print(config.order)
    28

    >>> print(config.slow)
    True
"""

from dataclasses import dataclass, field, fields


@dataclass
class Config:
    """Run settings.

    Attributes:
        prime (int): Prime the height and Landweber pipelines work at. Defaults to 5.
        order (int): Truncation order N of all series. Defaults to 11.
        hmax (int): Largest height to resolve. Defaults to 1.
        precision (int): Reduce laws modulo prime**precision. Defaults to 1.
        format (str): Output format, 'text' or 'machine'. Defaults to 'text'.
        log_level (str): Logging level of the command line. Defaults to 'WARNING'.
        max_iter (int): Bound on coboundary elimination rounds, 0 for twice the order. Defaults to 0.
        report (str): Optional PDF path for the golden table. Defaults to ''.
        slow (bool): Include the order-28 and order-122 golden cases. Defaults to False.
        extra (dict): Additional configuration parameters not explicitly defined as attributes.
    """  # noqa: E501

    prime: int = 5
    order: int = 11
    hmax: int = 1
    precision: int = 1
    format: str = "text"
    log_level: str = "WARNING"
    max_iter: int = 0
    report: str = ""
    slow: bool = False
    extra: dict = field(default_factory=dict)

    def __init__(self, **kwargs):
        """
        Initializes the Config object with the provided keyword arguments.

        Args:
            **kwargs: Arbitrary keyword arguments used to initialize the configuration fields; INI strings are coerced to the field types.
        """  # noqa: E501
        for f in fields(self):
            key = f.name.lower()
            if f.name == "extra":
                continue
            if key in kwargs:
                val = kwargs.pop(key)
                if f.type.__name__ == "bool" and not isinstance(val, bool):  # type: ignore
                    val = str(val).lower() in ("yes", "true", "on", "1")

                if f.type.__name__ == "int" and not isinstance(val, int):  # type: ignore
                    val = int(val)

                setattr(self, key, val)
            else:
                setattr(self, key, f.default)

        # Unknown keys are kept for job documents and plugins
        self.extra = kwargs

    def update(self, **overrides) -> "Config":
        """Return a copy with the non-None `overrides` applied."""
        values = {
            f.name: getattr(self, f.name)
            for f in fields(self)
            if f.name != "extra"
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        values.update(self.extra)
        return Config(**values)
