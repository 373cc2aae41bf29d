"""Market pricing arithmetic.

Money is Decimal throughout; list price and wholesale receipt round to two
decimals half-up. Markup follows the cost-plus convention: a 150% markup on
a 4.00 base cost lists at 10.00.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from ..errors import UsageError

_CENT = Decimal("0.01")


def _money(value) -> Decimal:
    return Decimal(str(value))


@dataclass(frozen=True)
class PriceQuote:
    market: str
    list_price: Decimal
    wholesale_receipt: Decimal

    def to_dict(self) -> dict:
        return {
            "market": self.market,
            "list_price": str(self.list_price),
            "wholesale_receipt": str(self.wholesale_receipt),
        }


def compute_price(base_cost, markup_pct, market: str, discount_pct) -> PriceQuote:
    """Price one market: list = cost x (1 + markup/100); receipt applies the
    wholesale discount, rounded to two decimals half-up."""
    base = _money(base_cost)
    markup = _money(markup_pct)
    discount = _money(discount_pct)
    if base < 0:
        raise UsageError(f"base cost must be non-negative, got {base}")
    if markup < 0:
        raise UsageError(f"markup percent must be non-negative, got {markup}")
    if not (0 <= discount <= 100):
        raise UsageError(f"discount percent must be in [0,100], got {discount}")

    list_price = (base * (1 + markup / 100)).quantize(_CENT, rounding=ROUND_HALF_UP)
    receipt = (list_price * (1 - discount / 100)).quantize(_CENT, rounding=ROUND_HALF_UP)
    return PriceQuote(market=market, list_price=list_price, wholesale_receipt=receipt)
