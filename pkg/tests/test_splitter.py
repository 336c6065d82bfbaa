from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pressgauge.labeling.splitter import split_sentences, truncate_at_sentence


def sentences_of(text):
    return list(split_sentences(text).sentences)


class TestSplitSentences:
    def test_title_abbreviation_does_not_split(self):
        assert sentences_of("Gov. Kemp praised Trump. He spoke Friday.") == [
            "Gov. Kemp praised Trump.",
            "He spoke Friday.",
        ]

    def test_country_abbreviation_mid_sentence(self):
        assert sentences_of("Costs in the U.S. are rising fast. Europe differs.") == [
            "Costs in the U.S. are rising fast.",
            "Europe differs.",
        ]

    def test_initials_do_not_split(self):
        assert sentences_of("George W. Bush spoke. The crowd listened.") == [
            "George W. Bush spoke.",
            "The crowd listened.",
        ]

    def test_single_sentence_without_terminal(self):
        assert sentences_of("A headline fragment without punctuation") == [
            "A headline fragment without punctuation"
        ]

    def test_question_and_exclamation(self):
        assert sentences_of("Will it pass? Nobody knows! Votes are due.") == [
            "Will it pass?",
            "Nobody knows!",
            "Votes are due.",
        ]

    def test_quote_with_trailing_quote_mark(self):
        text = 'She said, "It is done." The room emptied.'
        assert sentences_of(text) == ['She said, "It is done."', "The room emptied."]

    def test_empty_text_rejected(self):
        with pytest.raises(ValueError):
            split_sentences("   ")

    def test_determinism(self):
        text = "One thing happened. Then another. Finally, a third."
        assert sentences_of(text) == sentences_of(text)

    @given(st.text(alphabet=st.characters(blacklist_categories=("Cs", "Cc")), min_size=1, max_size=400))
    @settings(max_examples=100)
    def test_reconstruction_up_to_whitespace(self, text):
        if not text.strip():
            return
        split = split_sentences(text)
        normalized = " ".join(text.split())
        assert " ".join(split.sentences) == normalized

    def test_numbered_rendering(self):
        split = split_sentences("First. Second.")
        assert split.numbered() == "1. First.\n2. Second."


class TestTruncateAtSentence:
    def test_short_text_untouched(self):
        text = "Short body. Stays whole."
        assert truncate_at_sentence(text, 100) == (text, False)

    def test_cut_lands_on_sentence_boundary(self):
        text = "Alpha beta gamma. Delta epsilon zeta. Eta theta iota."
        cut, truncated = truncate_at_sentence(text, 7)
        assert truncated
        assert cut == "Alpha beta gamma. Delta epsilon zeta."

    def test_never_returns_empty(self):
        cut, truncated = truncate_at_sentence("One very long sentence that exceeds the budget on its own.", 3)
        assert truncated
        assert cut == "One very long sentence that exceeds the budget on its own."
