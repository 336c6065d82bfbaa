"""Boilerplate removal and HTML stripping.

The cleaning dictionary is a UTF-8 file with one phrase per line; lines
prefixed ``re:`` are regular expressions, everything else matches exactly.
Cleaning removes every dictionary match and collapses whitespace, repeating
until a fixpoint so that the operation is idempotent even when a removal
butts two half-matches together.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from html.parser import HTMLParser
from importlib import resources
from pathlib import Path

_MAX_PASSES = 25


@dataclass(frozen=True)
class CleaningDictionary:
    patterns: tuple[re.Pattern, ...]
    version: int = 1

    @classmethod
    def from_lines(cls, lines: list[str], version: int = 1) -> "CleaningDictionary":
        patterns = []
        for raw in lines:
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if line.startswith("re:"):
                body = line[3:]
                if not body:
                    raise ValueError("empty regex entry in cleaning dictionary")
                patterns.append(re.compile(body))
            else:
                patterns.append(re.compile(re.escape(line)))
        return cls(patterns=tuple(patterns), version=version)

    @classmethod
    def from_file(cls, path: str | Path, version: int = 1) -> "CleaningDictionary":
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh.readlines(), version=version)


def load_default_dictionary() -> CleaningDictionary:
    text = resources.files("pressgauge.data").joinpath("cleaning_dictionary.txt").read_text("utf-8")
    return CleaningDictionary.from_lines(text.splitlines())


def _collapse_whitespace(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def clean_text(text: str, dictionary: CleaningDictionary) -> str:
    """Remove every dictionary phrase and normalize whitespace (idempotent)."""
    current = _collapse_whitespace(text)
    for _ in range(_MAX_PASSES):
        step = current
        for pattern in dictionary.patterns:
            step = pattern.sub(" ", step)
        step = _collapse_whitespace(step)
        if step == current:
            return current
        current = step
    raise RuntimeError("cleaning did not reach a fixpoint; dictionary likely pathological")


_SKIP_ELEMENTS = frozenset(
    {"script", "style", "noscript", "template", "iframe", "svg", "nav", "header", "footer", "aside", "form", "button", "figure", "figcaption"}
)
_BLOCK_ELEMENTS = frozenset({"p", "div", "section", "article", "li", "br", "h1", "h2", "h3", "h4", "blockquote"})


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.chunks: list[str] = []
        self.title_chunks: list[str] = []
        self._skip_depth = 0
        self._in_title = False

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_ELEMENTS:
            self._skip_depth += 1
        elif tag == "title":
            self._in_title = True
        elif tag in _BLOCK_ELEMENTS:
            self.chunks.append("\n")

    def handle_endtag(self, tag):
        if tag in _SKIP_ELEMENTS and self._skip_depth > 0:
            self._skip_depth -= 1
        elif tag == "title":
            self._in_title = False
        elif tag in _BLOCK_ELEMENTS:
            self.chunks.append("\n")

    def handle_data(self, data):
        if self._in_title:
            self.title_chunks.append(data)
        elif self._skip_depth == 0:
            self.chunks.append(data)


def html_to_text(html: str) -> tuple[str, str]:
    """(title, body text) from an HTML page, chrome elements dropped."""
    parser = _TextExtractor()
    parser.feed(html)
    title = _collapse_whitespace("".join(parser.title_chunks))
    body = _collapse_whitespace("".join(parser.chunks))
    return title, body
