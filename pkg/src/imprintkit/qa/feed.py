"""Distribution metadata feeds: bit-exact CSV emission with validation.

Dialect (the compatibility contract): comma separator, CRLF line endings,
UTF-8 without byte-order mark, every text field quoted, money and percentage
fields unquoted. Column order is ``isbn, title, binding_type, trim_size,
rendition`` followed by ``price_<MARKET>, discount_<MARKET>`` pairs in the
config's market order. The column names are this artifact's own contract,
not a distributor's proprietary schema.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from ..config import binding_matches_rendition
from ..errors import GateError, UsageError
from ..gateway import ApprovalRecord, GateRequirement, gate
from ..report import Finding, Layer, Severity, ValidationReport

_TEXT_COLUMNS = ("isbn", "title", "binding_type", "trim_size", "rendition")


@dataclass(frozen=True)
class DistributionRow:
    isbn: str
    title: str
    binding_type: str
    trim_size: str
    rendition: str
    prices: dict[str, Decimal] = field(default_factory=dict)
    discounts: dict[str, Decimal] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "isbn": self.isbn,
            "title": self.title,
            "binding_type": self.binding_type,
            "trim_size": self.trim_size,
            "rendition": self.rendition,
            "prices": {m: str(v) for m, v in self.prices.items()},
            "discounts": {m: str(v) for m, v in self.discounts.items()},
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "DistributionRow":
        return cls(
            isbn=raw["isbn"],
            title=raw["title"],
            binding_type=raw["binding_type"],
            trim_size=raw["trim_size"],
            rendition=raw["rendition"],
            prices={m: Decimal(v) for m, v in raw.get("prices", {}).items()},
            discounts={m: Decimal(v) for m, v in raw.get("discounts", {}).items()},
        )


def validate_isbn13(isbn: str) -> bool:
    """ISBN-13 check-digit validation (alternating 1/3 weights)."""
    digits = isbn.replace("-", "").replace(" ", "")
    if len(digits) != 13 or not digits.isdigit():
        return False
    total = sum(int(d) * (1 if i % 2 == 0 else 3) for i, d in enumerate(digits))
    return total % 10 == 0


def isbn13_check_digit(first_twelve: str) -> str:
    if len(first_twelve) != 12 or not first_twelve.isdigit():
        raise UsageError("need exactly twelve digits to compute an ISBN-13 check digit")
    total = sum(int(d) * (1 if i % 2 == 0 else 3) for i, d in enumerate(first_twelve))
    return str((10 - total % 10) % 10)


def feed_columns(cfg) -> list[str]:
    markets = cfg["pricing.markets"]
    columns = list(_TEXT_COLUMNS)
    for market in markets:
        columns += [f"price_{market}", f"discount_{market}"]
    return columns


def validate_rows(rows: list[DistributionRow], cfg) -> ValidationReport:
    """Per-row checks: ISBN check digit, binding/rendition consistency, and
    price/discount coverage for every configured market."""
    report = ValidationReport()
    markets = cfg["pricing.markets"]
    for i, row in enumerate(rows):
        if not validate_isbn13(row.isbn):
            report.findings.append(
                Finding(
                    Layer.SEMANTIC,
                    f"rows[{i}].isbn",
                    f"ISBN {row.isbn!r} fails check-digit validation",
                )
            )
        if not binding_matches_rendition(row.binding_type, row.rendition):
            report.findings.append(
                Finding(
                    Layer.BUSINESS_RULE,
                    f"rows[{i}].binding_type",
                    f"binding_type {row.binding_type!r} conflicts with rendition "
                    f"{row.rendition!r}",
                )
            )
        for market in markets:
            if market not in row.prices:
                report.findings.append(
                    Finding(
                        Layer.SEMANTIC,
                        f"rows[{i}].price_{market}",
                        f"missing price for market {market}",
                    )
                )
            if market not in row.discounts:
                report.findings.append(
                    Finding(
                        Layer.SEMANTIC,
                        f"rows[{i}].discount_{market}",
                        f"missing discount for market {market}",
                    )
                )
            elif not (0 <= row.discounts[market] <= 100):
                report.findings.append(
                    Finding(
                        Layer.SEMANTIC,
                        f"rows[{i}].discount_{market}",
                        f"discount {row.discounts[market]} out of range [0,100]",
                    )
                )
    return report


def _quote(text: str) -> str:
    return '"' + text.replace('"', '""') + '"'


def _format_money(value: Decimal) -> str:
    return str(value.quantize(Decimal("0.01")))


def _format_discount(value: Decimal) -> str:
    return str(value.to_integral_value()) if value == value.to_integral_value() else str(value)


def emit_distribution_csv(rows: list[DistributionRow], cfg) -> str:
    """Render rows to the canonical CSV text (no validation, no gate)."""
    markets = cfg["pricing.markets"]
    lines = [",".join(_quote(c) for c in feed_columns(cfg))]
    for row in rows:
        cells = [
            _quote(row.isbn),
            _quote(row.title),
            _quote(row.binding_type),
            _quote(row.trim_size),
            _quote(row.rendition),
        ]
        for market in markets:
            cells.append(_format_money(row.prices[market]))
            cells.append(_format_discount(row.discounts[market]))
        lines.append(",".join(cells))
    return "\r\n".join(lines) + "\r\n"


def parse_distribution_csv(text: str, cfg) -> list[DistributionRow]:
    """Parse feed CSV back into rows; the inverse of emit_distribution_csv."""
    markets = cfg["pricing.markets"]
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise UsageError("CSV document is empty") from None
    expected = feed_columns(cfg)
    if header != expected:
        raise UsageError(f"unexpected feed header {header!r}")
    rows = []
    for record in reader:
        if not record:
            continue
        base = dict(zip(_TEXT_COLUMNS, record[:5]))
        prices: dict[str, Decimal] = {}
        discounts: dict[str, Decimal] = {}
        for j, market in enumerate(markets):
            try:
                prices[market] = Decimal(record[5 + 2 * j])
                discounts[market] = Decimal(record[6 + 2 * j])
            except (IndexError, InvalidOperation) as exc:
                raise UsageError(f"malformed money cell for market {market}: {exc}") from exc
        rows.append(DistributionRow(prices=prices, discounts=discounts, **base))
    return rows


@dataclass(frozen=True)
class ExportResult:
    report: ValidationReport
    csv_text: str | None

    @property
    def exported(self) -> bool:
        return self.csv_text is not None


def export_distribution_csv(
    rows: list[DistributionRow],
    cfg,
    *,
    approval: ApprovalRecord | GateRequirement | None = None,
) -> ExportResult:
    """Validate rows and emit the feed.

    Refuses (no document) when any error-severity finding exists. Emission is
    a distribution submission, so it additionally demands a human approval
    record; a clean row set without approval raises GateError.
    """
    report = validate_rows(rows, cfg)
    if not report.passed:
        return ExportResult(report=report, csv_text=None)

    requirement = gate("distribution_submission")
    if isinstance(approval, GateRequirement):
        requirement = approval
    elif isinstance(approval, ApprovalRecord):
        requirement = GateRequirement(
            action_kind="distribution_submission",
            requires_human=True,
            approval_record=approval,
        )
    if not requirement.satisfied:
        raise GateError("distribution export requires a recorded human approval")

    return ExportResult(report=report, csv_text=emit_distribution_csv(rows, cfg))
