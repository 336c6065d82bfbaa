from __future__ import annotations

import json
from pathlib import Path

import pytest

from pressgauge.labeling.prompts import (
    EXPECTED_KEYS,
    TEMPLATE_NAMES,
    PromptError,
    format_numbered_lines,
    load_templates,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="module")
def templates():
    return load_templates()


@pytest.fixture(scope="module")
def golden_bindings():
    return json.loads((FIXTURES / "golden" / "prompt_bindings.json").read_text("utf-8"))


class TestRendering:
    def test_all_templates_render_byte_equal_to_goldens(self, templates, golden_bindings):
        for name in TEMPLATE_NAMES:
            rendered = templates[name].render(**golden_bindings[name])
            golden = (FIXTURES / "golden" / "prompts" / f"{name}.txt").read_text("utf-8")
            assert rendered == golden, f"template {name} drifted from its golden rendering"

    def test_unbound_placeholder_is_an_error(self, templates):
        with pytest.raises(PromptError, match="sentences"):
            templates["sentence"].render()

    def test_extra_bindings_are_ignored(self, templates):
        one = templates["takeaways"].render(article="Body.")
        two = templates["takeaways"].render(article="Body.", unrelated="x")
        assert one == two

    def test_braces_in_article_text_are_not_placeholders(self, templates):
        rendered = templates["takeaways"].render(article="Weird {body} with {braces}")
        assert "{body}" in rendered

    def test_headline_templates_carry_topic_context(self, templates, golden_bindings):
        rendered = templates["headline_tone"].render(**golden_bindings["headline_tone"])
        assert "on the topic of Weather and Natural Disasters (Hurricane) in the Disaster news category" in rendered

    def test_expected_keys_cover_every_template(self):
        assert set(EXPECTED_KEYS) == set(TEMPLATE_NAMES)


def test_numbered_lines_format():
    assert format_numbered_lines(["a", "b"]) == "1. a\n2. b"
