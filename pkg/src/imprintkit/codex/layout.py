"""Deterministic pilsa page layout.

Each quotation opens a two-page spread: the verso (even folio) carries the
quotation, citation, and any editorial note; the facing recto (odd folio) is
a dot-grid journaling page. Every 8th recto carries an inspirational message,
drawn cyclically from the message list. Folios start at 2 so the first
quotation lands on an even page.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from ..errors import UsageError
from .manifest import QuotationRecord

#: A message appears on every recto whose 1-based ordinal is divisible by 8.
MESSAGE_INTERVAL = 8


class PageSide(str, Enum):
    VERSO = "verso"
    RECTO = "recto"


class PageKind(str, Enum):
    QUOTATION = "quotation"
    DOT_GRID = "dot_grid"
    DOT_GRID_WITH_MESSAGE = "dot_grid_with_message"


@dataclass(frozen=True)
class PageRecord:
    folio: int
    side: PageSide
    kind: PageKind
    quotation_index: int | None = None
    message_index: int | None = None

    def to_dict(self) -> dict:
        return {
            "folio": self.folio,
            "side": self.side.value,
            "kind": self.kind.value,
            "quotation_index": self.quotation_index,
            "message_index": self.message_index,
        }


@dataclass(frozen=True)
class PageSequence:
    pages: tuple[PageRecord, ...]
    messages: tuple[str, ...]

    @property
    def quotation_count(self) -> int:
        return sum(1 for p in self.pages if p.kind is PageKind.QUOTATION)

    @property
    def message_pages(self) -> tuple[PageRecord, ...]:
        return tuple(p for p in self.pages if p.kind is PageKind.DOT_GRID_WITH_MESSAGE)

    def message_text(self, page: PageRecord) -> str:
        if page.message_index is None:
            raise UsageError("page carries no message")
        return self.messages[page.message_index]


def build_pilsa_layout(
    quotations: Sequence[QuotationRecord], messages: Sequence[str]
) -> PageSequence:
    """Lay out the quotation block as alternating verso/recto pages.

    The page count is exactly twice the quotation count. Messages are
    required as soon as the layout has a message slot (8 or more rectos).
    """
    if not quotations:
        raise UsageError("cannot lay out an empty quotation block")
    if len(quotations) >= MESSAGE_INTERVAL and not messages:
        raise UsageError(
            f"{len(quotations)} quotations create message slots; provide at "
            "least one inspirational message"
        )

    pages: list[PageRecord] = []
    for i in range(len(quotations)):
        verso_folio = 2 * (i + 1)
        pages.append(
            PageRecord(
                folio=verso_folio,
                side=PageSide.VERSO,
                kind=PageKind.QUOTATION,
                quotation_index=i,
            )
        )
        recto_ordinal = i + 1
        if recto_ordinal % MESSAGE_INTERVAL == 0:
            message_index = (recto_ordinal // MESSAGE_INTERVAL - 1) % len(messages)
            pages.append(
                PageRecord(
                    folio=verso_folio + 1,
                    side=PageSide.RECTO,
                    kind=PageKind.DOT_GRID_WITH_MESSAGE,
                    message_index=message_index,
                )
            )
        else:
            pages.append(
                PageRecord(folio=verso_folio + 1, side=PageSide.RECTO, kind=PageKind.DOT_GRID)
            )
    return PageSequence(pages=tuple(pages), messages=tuple(messages))
