"""Annuity arithmetic: lump-sum capital costs as constant annual payments.

All monetary quantities are plain floats in millions of constant base-year
dollars. The ``MoneyLump`` / ``MoneyPerYear`` aliases mark whether a value is
a one-time capital sum or an annual flow; nothing in this package rounds
internally, display rounding belongs to the report emitters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TypeAlias

MoneyLump: TypeAlias = float
MoneyPerYear: TypeAlias = float


@dataclass(frozen=True)
class RateSpec:
    """Investor-required annual return and asset lifetime for annuitization."""

    annual_rate: float
    lifetime_years: int

    def __post_init__(self) -> None:
        if not isinstance(self.lifetime_years, int):
            raise ValueError(
                f"lifetime_years must be an integer, got {self.lifetime_years!r}"
            )
        if self.lifetime_years < 1:
            raise ValueError(f"lifetime_years must be >= 1, got {self.lifetime_years}")
        if not math.isfinite(self.annual_rate) or self.annual_rate < 0:
            raise ValueError(
                f"annual_rate must be finite and >= 0, got {self.annual_rate}"
            )


def annuity_factor(rate: RateSpec) -> float:
    """Annual payment per unit of capital (ordinary annuity, end-of-year payments).

    r / (1 - (1+r)^-T) for r > 0. The zero-rate limit 1/T is an explicit
    branch; the formula is singular at r = 0.
    """
    r = rate.annual_rate
    years = rate.lifetime_years
    if r == 0.0:
        return 1.0 / years
    # 1 - (1+r)^-T via expm1/log1p so tiny rates keep full precision.
    return r / -math.expm1(-years * math.log1p(r))


def annuitize(capital: MoneyLump, rate: RateSpec) -> MoneyPerYear:
    """Constant annual payment equivalent to a lump-sum capital cost.

    Raises ValueError for negative or non-finite capital.
    """
    if not math.isfinite(capital) or capital < 0:
        raise ValueError(f"capital must be finite and >= 0, got {capital}")
    return capital * annuity_factor(rate)


def present_value_of_annuity(payment: MoneyPerYear, rate: RateSpec) -> MoneyLump:
    """Lump sum equivalent to a constant annual payment; inverse of annuitize."""
    if not math.isfinite(payment):
        raise ValueError(f"payment must be finite, got {payment}")
    return payment / annuity_factor(rate)
