"""Prompt templates and rendering.

The template bodies ship as data files and are treated as frozen protocol
text: rendering only substitutes the named placeholders, so a rendered
prompt is byte-identical to the template modulo bindings. Tests hold golden
renderings to keep the wording from drifting.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

TEMPLATE_NAMES = (
    "topic",
    "subtopic",
    "takeaways",
    "article_type",
    "article_lean",
    "article_tone",
    "headline_lean",
    "headline_tone",
    "sentence",
    "quote",
    "event_title",
    "cluster_recall",
    "cluster_precision",
    "fact_summary",
)

# The response keys each template instructs the model to emit. Empty means
# the response is bare text (the integer-only cluster refinement replies).
EXPECTED_KEYS = {
    "topic": ("topic",),
    "subtopic": ("subtopic",),
    "takeaways": ("takeaways",),
    "article_type": ("news_type", "justification"),
    "article_lean": ("reason", "lean"),
    "article_tone": ("reason", "tone"),
    "headline_lean": ("reason", "lean"),
    "headline_tone": ("reason", "tone"),
    "sentence": ("sentence", "type", "tone", "focus"),
    "quote": ("quote", "person_name", "person_occupation", "person_affiliation", "person_domain", "person_capacity"),
    "event_title": ("theme", "theme_short"),
    "cluster_recall": (),
    "cluster_precision": (),
    "fact_summary": ("synthetic_sentence",),
}

# Templates whose responses are JSON lists rather than single objects.
LIST_RESPONSE_TEMPLATES = frozenset({"sentence", "quote"})


class PromptError(ValueError):
    pass


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str
    expected_keys: tuple[str, ...]

    @property
    def placeholders(self) -> tuple[str, ...]:
        names = []
        for _, field_name, _, _ in string.Formatter().parse(self.body):
            if field_name is not None and field_name not in names:
                names.append(field_name)
        return tuple(names)

    def render(self, **bindings: str) -> str:
        """Substitute every placeholder; a missing binding is an error.

        Parsing the template into literal and field segments (rather than
        scanning the rendered text) means braces inside substituted article
        text can never be mistaken for placeholders.
        """
        pieces = []
        for literal, field_name, spec, conversion in string.Formatter().parse(self.body):
            pieces.append(literal)
            if field_name is None:
                continue
            if spec or conversion:
                raise PromptError(f"template {self.name}: unsupported format spec on {{{field_name}}}")
            if field_name not in bindings:
                raise PromptError(f"template {self.name}: unbound placeholder {{{field_name}}}")
            pieces.append(str(bindings[field_name]))
        return "".join(pieces)


def render_prompt(template: PromptTemplate, bindings: dict[str, str]) -> str:
    return template.render(**bindings)


def _template_from_text(name: str, text: str) -> PromptTemplate:
    return PromptTemplate(name=name, body=text.rstrip("\n"), expected_keys=EXPECTED_KEYS[name])


def load_templates(directory: str | Path | None = None) -> dict[str, PromptTemplate]:
    """Load all templates from a directory (default: the packaged set)."""
    templates = {}
    for name in TEMPLATE_NAMES:
        if directory is None:
            text = resources.files("pressgauge.data.prompts").joinpath(f"{name}.txt").read_text("utf-8")
        else:
            text = (Path(directory) / f"{name}.txt").read_text("utf-8")
        templates[name] = _template_from_text(name, text)
    return templates


def format_name_list(names: list[str]) -> str:
    """Canonical rendering of a choice list inside a prompt."""
    return ", ".join(names)


def format_numbered_lines(lines: list[str]) -> str:
    """Canonical "1. ..." numbering used for sentences, titles, and themes."""
    return "\n".join(f"{i}. {line}" for i, line in enumerate(lines, start=1))
