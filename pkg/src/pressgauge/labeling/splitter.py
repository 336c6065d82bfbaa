"""Deterministic sentence segmentation.

A small rule-based splitter: terminal punctuation followed by whitespace and
a sentence-looking start ends a sentence, unless the preceding token is a
known abbreviation or an initial. No models, no state, same output every
time; joining the spans with single spaces reconstructs the (whitespace-
normalized) input exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

ABBREVIATIONS = frozenset(
    {
        "mr.", "mrs.", "ms.", "dr.", "prof.", "gov.", "sen.", "rep.", "gen.",
        "col.", "lt.", "sgt.", "capt.", "cmdr.", "adm.", "maj.", "jr.", "sr.",
        "st.", "mt.", "ft.", "inc.", "corp.", "co.", "ltd.", "dept.", "univ.",
        "assn.", "bros.", "vs.", "etc.", "e.g.", "i.e.", "a.m.", "p.m.",
        "u.s.", "u.k.", "u.n.", "d.c.", "jan.", "feb.", "mar.", "apr.",
        "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec.",
        "no.", "nos.", "fig.", "figs.", "est.", "approx.", "dist.", "atty.",
    }
)

_BOUNDARY = re.compile(r'([.!?]+)(["\'”’)\]]*)(\s+)')
_WS = re.compile(r"\s+")


@dataclass(frozen=True)
class SentenceSplit:
    article_id: str
    sentences: tuple[str, ...]

    def numbered(self) -> str:
        return "\n".join(f"{i}. {s}" for i, s in enumerate(self.sentences, start=1))


def _last_token(text: str) -> str:
    parts = text.rsplit(None, 1)
    return parts[-1] if parts else text


def _is_abbreviation(token: str) -> bool:
    lowered = token.lower().strip('("\'“‘')
    if lowered in ABBREVIATIONS:
        return True
    # Single-letter initials ("George W. Bush") and dotted acronyms.
    bare = lowered.rstrip(".")
    if len(bare) == 1 and bare.isalpha():
        return True
    if "." in bare and all(len(p) <= 1 for p in bare.split(".")):
        return True
    return False


def split_sentences(body: str, article_id: str = "") -> SentenceSplit:
    """Split text into sentences; deterministic and abbreviation-aware."""
    if not body or not body.strip():
        raise ValueError("cannot split empty text")
    text = _WS.sub(" ", body).strip()

    sentences = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        terminal, _, _ = match.groups()
        end = match.end() - len(match.group(3))  # sentence ends before the whitespace
        following = text[match.end() :]
        if not following:
            break
        candidate = text[start:end]
        if terminal.endswith("."):
            token = _last_token(candidate)
            if _is_abbreviation(token):
                continue
            # A lowercase continuation means the period did not end a sentence.
            if following[0].islower():
                continue
        sentences.append(candidate)
        start = match.end()
    tail = text[start:]
    if tail:
        sentences.append(tail)
    return SentenceSplit(article_id=article_id, sentences=tuple(sentences))


def truncate_at_sentence(text: str, max_words: int) -> tuple[str, bool]:
    """Cut text to at most ``max_words``, never mid-sentence.

    Returns the (possibly shortened) text and whether truncation happened.
    At least one sentence is always kept, even if it alone busts the budget.
    """
    if len(text.split()) <= max_words:
        return text, False
    kept: list[str] = []
    used = 0
    for sentence in split_sentences(text).sentences:
        words = len(sentence.split())
        if kept and used + words > max_words:
            break
        kept.append(sentence)
        used += words
        if used >= max_words:
            break
    return " ".join(kept), True
