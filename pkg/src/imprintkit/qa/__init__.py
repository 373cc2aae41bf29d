"""Quality assurance and distribution: verification, reviews, pricing, feeds."""

from .citation import SUPPORTED_STYLES, check_citation_format
from .feed import (
    DistributionRow,
    ExportResult,
    emit_distribution_csv,
    export_distribution_csv,
    feed_columns,
    isbn13_check_digit,
    parse_distribution_csv,
    validate_isbn13,
    validate_rows,
)
from .pricing import PriceQuote, compute_price
from .review import ReviewFinding, consistency_review
from .sensitivity import (
    SensitivityFinding,
    SensitivityPolicy,
    SensitivityRule,
    default_policy,
    load_policy,
    sensitivity_scan,
)
from .verification import (
    CheckerUnavailable,
    CheckOutcome,
    FixtureChecker,
    SourceChecker,
    VerificationRecord,
    VerificationStatus,
    all_verified,
    build_verification_appendix,
    verify_all,
    verify_quotation,
)

__all__ = [
    "CheckOutcome",
    "CheckerUnavailable",
    "DistributionRow",
    "ExportResult",
    "FixtureChecker",
    "PriceQuote",
    "ReviewFinding",
    "SUPPORTED_STYLES",
    "SensitivityFinding",
    "SensitivityPolicy",
    "SensitivityRule",
    "SourceChecker",
    "VerificationRecord",
    "VerificationStatus",
    "all_verified",
    "build_verification_appendix",
    "check_citation_format",
    "compute_price",
    "consistency_review",
    "default_policy",
    "emit_distribution_csv",
    "export_distribution_csv",
    "feed_columns",
    "isbn13_check_digit",
    "load_policy",
    "parse_distribution_csv",
    "sensitivity_scan",
    "validate_isbn13",
    "validate_rows",
    "verify_all",
    "verify_quotation",
]
