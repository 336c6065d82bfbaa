from pressgauge.labeling.prompts import PromptTemplate, load_templates, render_prompt
from pressgauge.labeling.providers import FixtureProvider, HttpProvider, MappingProvider, prompt_digest
from pressgauge.labeling.splitter import SentenceSplit, split_sentences, truncate_at_sentence
from pressgauge.labeling.engine import DeadLetterQueue, LabelingEngine

__all__ = [
    "DeadLetterQueue",
    "FixtureProvider",
    "HttpProvider",
    "LabelingEngine",
    "MappingProvider",
    "PromptTemplate",
    "SentenceSplit",
    "load_templates",
    "prompt_digest",
    "render_prompt",
    "split_sentences",
    "truncate_at_sentence",
]
