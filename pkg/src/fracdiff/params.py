"""Parameter types for the density evaluators.

The fractional order is carried as an exact rational whenever it was given
as one ("2/3", Fraction(1, 4), ...), so closed-form dispatch and the pole
bookkeeping of the Wright series never depend on float equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, UnsupportedOrder

__all__ = ["FractionalParams", "parse_order", "METHODS"]

METHODS = ("series", "integral", "integral-by-parts", "closed-form", "stable")

Orderlike = Union[float, int, str, Fraction]


def parse_order(nu: Orderlike) -> tuple[float, Optional[Fraction]]:
    """Normalise a fractional order to (float value, exact tag or None).

    Strings and Fractions yield exact tags ("2/3" -> Fraction(2, 3));
    integers are exact; plain floats carry no tag.
    """
    if isinstance(nu, Fraction):
        return float(nu), nu
    if isinstance(nu, int):
        return float(nu), Fraction(nu)
    if isinstance(nu, str):
        frac = Fraction(nu)  # accepts "2/3", "0.75", "1"
        return float(frac), frac
    return float(nu), None


@dataclass(frozen=True)
class FractionalParams:
    """Order nu in (0, 2), diffusivity lam > 0, time t > 0.

    nu = 2 is rejected: there the equation degenerates to the wave equation
    and the fundamental solution is a pair of travelling impulses, not a
    density.
    """

    nu: float
    lam: float
    t: float
    nu_exact: Optional[Fraction] = field(default=None)

    def __post_init__(self):
        if isinstance(self.nu, (str, Fraction)):
            value, tag = parse_order(self.nu)
            object.__setattr__(self, "nu", value)
            if self.nu_exact is None:
                object.__setattr__(self, "nu_exact", tag)
        if not (0.0 < self.nu < 2.0):
            raise UnsupportedOrder(f"order nu={self.nu} outside (0, 2)")
        if self.nu_exact is not None and not (0 < self.nu_exact < 2):
            raise UnsupportedOrder(f"order nu={self.nu_exact} outside (0, 2)")
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise DomainError("lam must be positive and finite")
        if not (self.t > 0.0 and math.isfinite(self.t)):
            raise DomainError("t must be positive and finite")

    @classmethod
    def of(cls, nu: Orderlike, lam: float = 1.0, t: float = 1.0) -> "FractionalParams":
        value, tag = parse_order(nu)
        return cls(nu=value, lam=float(lam), t=float(t), nu_exact=tag)

    @property
    def scale(self) -> float:
        """Reduced-variable scale lam * t^(nu/2)."""
        return self.lam * self.t ** (self.nu / 2.0)

    def reduced(self, x: float) -> float:
        """Reduced argument |x| / (lam t^(nu/2))."""
        return abs(x) / self.scale

    def order_fraction(self) -> Fraction:
        """Exact tag when present, else the exact binary rational of the float."""
        return self.nu_exact if self.nu_exact is not None else Fraction(self.nu)
