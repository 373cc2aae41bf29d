"""Typography roles and availability-driven font fallback.

The recommended set names five role fonts. Fonts the availability oracle
reports missing are swapped for their configured substitute from the open
font library; a missing font with no substitute entry is an error, so the
result is always fully assigned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Callable, Mapping

from ..errors import ContractError, TypographyError


class FontSource(str, Enum):
    ADOBE = "adobe"
    GOOGLE = "google"
    LOCAL = "local"


#: The five typography roles every set must assign.
ROLES = ("body", "heading", "korean", "quotations", "mnemonics")

#: An availability oracle answers "can this font be used right now?".
#: It may do I/O behind the scenes and must always be injected.
FontAvailability = Callable[[str], bool]


@dataclass(frozen=True)
class FontChoice:
    name: str
    source: FontSource

    def to_dict(self) -> dict:
        return {"name": self.name, "source": self.source.value}


@dataclass(frozen=True)
class TypographySet:
    body: FontChoice
    heading: FontChoice
    korean: FontChoice
    quotations: FontChoice
    mnemonics: FontChoice

    def role(self, name: str) -> FontChoice:
        if name not in ROLES:
            raise ContractError(f"unknown typography role {name!r}")
        return getattr(self, name)

    def as_dict(self) -> dict[str, dict]:
        return {role: self.role(role).to_dict() for role in ROLES}

    @classmethod
    def from_names(cls, names: Mapping[str, str]) -> "TypographySet":
        """Build a set from role-to-font-name pairs using the shipped catalog
        to assign sources. All five roles must be present."""
        missing = [role for role in ROLES if role not in names]
        if missing:
            raise ContractError(f"typography recommendation missing role(s): {missing}")
        catalog = font_catalog()["sources"]
        choices = {
            role: FontChoice(
                name=names[role],
                source=FontSource(catalog.get(names[role], "local")),
            )
            for role in ROLES
        }
        return cls(**choices)

    @classmethod
    def from_config(cls, cfg) -> "TypographySet":
        return cls.from_names({role: cfg[f"typography.{role}"] for role in ROLES})


@lru_cache(maxsize=1)
def font_catalog() -> dict:
    text = resources.files("imprintkit.codex").joinpath("data/font_catalog.json").read_text(
        "utf-8"
    )
    return json.loads(text)


def resolve_typography(
    recommended: TypographySet, availability: FontAvailability
) -> TypographySet:
    """Pass available fonts through; substitute unavailable ones.

    Substitutes come from the catalog's substitution table and are sourced
    from the open font library, which the pipeline can always download from.
    """
    substitutes = font_catalog()["substitutes"]
    resolved: dict[str, FontChoice] = {}
    for role in ROLES:
        choice = recommended.role(role)
        if availability(choice.name):
            resolved[role] = choice
            continue
        substitute = substitutes.get(choice.name)
        if substitute is None:
            raise TypographyError(
                f"font {choice.name!r} (role {role}) is unavailable and has no "
                "configured substitute"
            )
        resolved[role] = FontChoice(name=substitute, source=FontSource.GOOGLE)
    return TypographySet(**resolved)
