"""The traditional Korean cover palette and deterministic color choice."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from ..errors import ContractError, UsageError

#: The seven canonical palette keys, in catalog order.
PALETTE_KEYS = (
    "mungyeong_cheongja",
    "andong_hwangto",
    "goryeo_dancheong",
    "naju_jjok",
    "seoul_doldam",
    "jeonju_hanji",
    "boseong_nokcha",
)


@dataclass(frozen=True)
class PaletteColor:
    key: str
    korean_name: str
    english_gloss: str
    rgb: tuple[int, int, int]

    def to_dict(self) -> dict:
        return {
            "key": self.key,
            "korean_name": self.korean_name,
            "english_gloss": self.english_gloss,
            "rgb": list(self.rgb),
        }


@lru_cache(maxsize=1)
def load_palette() -> tuple[PaletteColor, ...]:
    """Load the seven-color cover palette and verify its key inventory."""
    text = resources.files("imprintkit.codex").joinpath("data/palette.json").read_text("utf-8")
    raw = json.loads(text)
    colors = tuple(
        PaletteColor(
            key=c["key"],
            korean_name=c["korean_name"],
            english_gloss=c["english_gloss"],
            rgb=tuple(c["rgb"]),
        )
        for c in raw["colors"]
    )
    if tuple(c.key for c in colors) != PALETTE_KEYS:
        raise ContractError("palette data does not carry exactly the seven canonical keys")
    return colors


def stable_hash(text: str) -> int:
    """Platform-stable 64-bit hash: the first 8 bytes of SHA-256, big-endian."""
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "big")


def choose_cover_color(
    title_key: str, palette: Sequence[PaletteColor] | None = None
) -> PaletteColor:
    """Pick the cover color for a title: stable_hash(title_key) mod palette size."""
    if palette is None:
        palette = load_palette()
    if not palette:
        raise UsageError("palette must be non-empty")
    return palette[stable_hash(title_key) % len(palette)]
