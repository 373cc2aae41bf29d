"""Typeset-ready source emission for interiors and covers.

Output targets the memoir document class. Emission is a pure function of its
inputs — identical inputs give byte-identical source — and every reserved
typesetting character in quotation content is escaped. Compiling the output
is outside this package; the structural contract is the source text itself.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Sequence

from ..errors import ContractError
from .layout import PageKind, PageSequence
from .manifest import QUOTATION_WORD_LIMIT, CodexManifest, QuotationRecord
from .palette import PaletteColor
from .typography import ROLES, TypographySet

_TEX_ESCAPES = {
    "\\": r"\textbackslash{}",
    "%": r"\%",
    "&": r"\&",
    "#": r"\#",
    "$": r"\$",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}


def escape_tex(text: str) -> str:
    """Escape every reserved typesetting character, character by character."""
    return "".join(_TEX_ESCAPES.get(ch, ch) for ch in text)


@lru_cache(maxsize=1)
def cover_geometry() -> dict:
    text = resources.files("imprintkit.codex").joinpath("data/cover_geometry.json").read_text(
        "utf-8"
    )
    return json.loads(text)


def spine_width_inches(page_count: int) -> float:
    """Linear paper-thickness model shipped as data."""
    geo = cover_geometry()
    return round(page_count * geo["spine_inches_per_page"] + geo["spine_base_inches"], 4)


_ROLE_COMMANDS = {
    "body": None,  # main font
    "heading": "headingfont",
    "korean": "koreanfont",
    "quotations": "quotationfont",
    "mnemonics": "mnemonicfont",
}


def _preamble(typography: TypographySet, color: PaletteColor) -> list[str]:
    lines = [
        r"\documentclass[10pt,twoside,openany]{memoir}",
        r"\usepackage{fontspec}",
        r"\usepackage{xcolor}",
        rf"\setmainfont{{{typography.body.name}}}",
    ]
    for role in ROLES:
        command = _ROLE_COMMANDS[role]
        if command:
            lines.append(rf"\newfontfamily\{command}{{{typography.role(role).name}}}")
    r, g, b = color.rgb
    lines += [
        rf"\definecolor{{coveraccent}}{{RGB}}{{{r},{g},{b}}}",
        r"\newcounter{gridrow}",
        r"\newcommand{\dotrow}{\noindent\leaders\hbox to 1.5em{\hss\textperiodcentered\hss}\hfill\strut\par}",
        r"\newcommand{\dotgridbody}{\setcounter{gridrow}{0}%",
        r"  \loop\dotrow\stepcounter{gridrow}\ifnum\value{gridrow}<24\repeat}",
        r"\newcommand{\quotationspread}[4]{\cleartoverso",
        r"  \begin{center}{\quotationfont\large #1\par}\vspace{1em}",
        r"  {\small #2\par}{\footnotesize #3\par}{\footnotesize\itshape #4\par}\end{center}}",
        r"\newcommand{\dotgridpage}{\clearpage\dotgridbody}",
        r"\newcommand{\dotgridmessagepage}[1]{\clearpage\dotgridbody\vfill{\centering\itshape #1\par}}",
    ]
    return lines


def _part_heading(part: str) -> str:
    return part.replace("_", " ").title()


def emit_typeset_source(
    manifest: CodexManifest,
    quotations: Sequence[QuotationRecord],
    layout: PageSequence,
    typography: TypographySet,
    color: PaletteColor,
) -> str:
    """Emit the interior source: manifest parts in order, one quotation-spread
    construct per quotation, dot-grid rectos with cyclic messages."""
    if layout.quotation_count != len(quotations):
        raise ContractError(
            f"layout holds {layout.quotation_count} quotations but {len(quotations)} were given"
        )
    oversized = [i for i, q in enumerate(quotations) if q.word_count >= QUOTATION_WORD_LIMIT]
    if oversized:
        raise ContractError(
            f"quotation(s) {oversized} at or over the {QUOTATION_WORD_LIMIT}-word limit; "
            "validation must refuse these before emission"
        )

    title_info = manifest.layout_requirements.get("title_page", {})
    title = title_info.get("title", "Untitled")
    subtitle = title_info.get("subtitle", "")
    imprint = title_info.get("imprint", "")

    lines = _preamble(typography, color)
    lines.append(r"\begin{document}")
    for part in manifest.parts:
        lines.append(f"% part: {part}")
        if part == "title_page":
            lines += [
                r"\begin{titlingpage}\begin{center}",
                rf"{{\headingfont\Huge {escape_tex(title)}\par}}",
            ]
            if subtitle:
                lines.append(rf"\vspace{{1em}}{{\Large {escape_tex(subtitle)}\par}}")
            if imprint:
                lines.append(rf"\vfill{{\large {escape_tex(imprint)}\par}}")
            lines.append(r"\end{center}\end{titlingpage}")
        elif part == "contents":
            lines.append(r"\tableofcontents*")
        elif part == "quotations_for_transcription":
            lines.append(r"\chapter{Quotations for Transcription}")
            lines.append(r"\setcounter{page}{2}% first quotation falls on an even folio")
            for page in layout.pages:
                if page.kind is PageKind.QUOTATION:
                    q = quotations[page.quotation_index]
                    note = escape_tex(q.editorial_note or "")
                    lines.append(f"% page {page.folio} verso quotation {page.quotation_index}")
                    lines.append(
                        r"\quotationspread{%s}{%s}{%s}{%s}"
                        % (
                            escape_tex(q.text),
                            escape_tex(q.author),
                            escape_tex(q.citation),
                            note,
                        )
                    )
                elif page.kind is PageKind.DOT_GRID_WITH_MESSAGE:
                    lines.append(f"% page {page.folio} recto dot grid with message")
                    lines.append(
                        r"\dotgridmessagepage{%s}" % escape_tex(layout.message_text(page))
                    )
                else:
                    lines.append(f"% page {page.folio} recto dot grid")
                    lines.append(r"\dotgridpage")
        elif part == "mnemonics":
            lines.append(rf"\chapter{{{_part_heading(part)}}}")
            items = manifest.layout_requirements.get(part, {}).get("items", [])
            if items:
                lines.append(r"\begin{itemize}")
                lines += [rf"\item {{\mnemonicfont {escape_tex(str(item))}}}" for item in items]
                lines.append(r"\end{itemize}")
        else:
            lines.append(rf"\chapter{{{_part_heading(part)}}}")
            content = manifest.layout_requirements.get(part, {}).get("content", "")
            if content:
                lines.append(escape_tex(str(content)))
    lines.append(r"\end{document}")
    return "\n".join(lines) + "\n"


def emit_cover_source(
    *,
    title: str,
    tagline: str,
    imprint: str,
    color: PaletteColor,
    page_count: int,
    trim_size: str = "6x9",
) -> str:
    """Emit the cover source: full-bleed palette background with computed spine."""
    try:
        width_in, height_in = (float(x) for x in trim_size.split("x"))
    except ValueError:
        raise ContractError(f"trim size {trim_size!r} is not WxH") from None
    spine = spine_width_inches(page_count)
    geo = cover_geometry()
    total_width = round(2 * width_in + spine + 2 * geo["bleed_inches"], 4)
    total_height = round(height_in + 2 * geo["bleed_inches"], 4)
    r, g, b = color.rgb
    lines = [
        r"\documentclass{memoir}",
        r"\usepackage{fontspec}",
        r"\usepackage[dvipsnames]{xcolor}",
        r"\usepackage{eso-pic}",
        rf"\setstocksize{{{total_height}in}}{{{total_width}in}}",
        rf"\settrimmedsize{{{total_height}in}}{{{total_width}in}}{{*}}",
        rf"\definecolor{{coverbackground}}{{RGB}}{{{r},{g},{b}}}",
        rf"% palette: {color.key} ({color.english_gloss}); spine {spine}in for {page_count} pages",
        r"\begin{document}",
        r"\AddToShipoutPictureBG{\color{coverbackground}\rule{\paperwidth}{\paperheight}}",
        r"\begin{center}\vspace*{2in}",
        rf"{{\Huge {escape_tex(title)}\par}}",
        rf"\vspace{{1em}}{{\Large {escape_tex(tagline)}\par}}",
        rf"\vfill{{\large {escape_tex(imprint)}\par}}",
        r"\end{center}",
        r"\end{document}",
    ]
    return "\n".join(lines) + "\n"
