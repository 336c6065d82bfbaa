"""Pipeline configuration.

Everything tunable lives here: the publisher registry, the snapshot
schedule, prominence weights, clustering thresholds, provider settings, and
the analytics topic sets. A config is plain data loaded from YAML; the
packaged defaults are used for anything the file does not override.
Provider credentials are *never* part of the config file; they come from
environment variables only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from importlib import resources
from pathlib import Path
from typing import Any, Optional

import yaml

from pressgauge.core.types import Publisher, SnapshotSpec


@dataclass(frozen=True)
class ProminenceWeights:
    w_pos: float = 0.6
    w_font: float = 0.25
    w_img: float = 0.15


@dataclass(frozen=True)
class ProviderSettings:
    mode: str = "fixture"  # fixture | live
    label_model: str = "gpt-4o"
    classify_model: str = "gpt-4o-mini"  # topic/subtopic/takeaways, event titles, fact summaries
    embedding_model: str = "text-embedding-3-large"
    embedding_dim: int = 3072
    max_input_words: int = 6000  # provider accepts ~8191 tokens; words are the cheap proxy
    temperature: float = 0.0
    endpoint: str = ""  # live completions URL
    embedding_endpoint: str = ""  # live embeddings URL
    max_attempts: int = 3
    concurrency: int = 1  # parallel per-article labeling jobs (rate-limit budget)
    api_key_env: str = "PRESSGAUGE_PROVIDER_API_KEY"


@dataclass(frozen=True)
class ClusterConfig:
    article_threshold: float = 0.8
    fact_threshold: float = 0.85
    min_cluster_size: int = 2
    embed_title_prefix: bool = True  # embed "title. body", not body alone

    def __post_init__(self):
        for name in ("article_threshold", "fact_threshold"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ValueError(f"{name} must be in (0, 1), got {value}")
        if self.min_cluster_size < 1:
            raise ValueError("min_cluster_size must be >= 1")


@dataclass(frozen=True)
class AnalyticsTopicSets:
    """Editable topic sets behind the horse-race vs. policy comparison."""

    horserace_subtopics: tuple[str, ...] = ("Presidential Horse Race",)
    policy_topics: tuple[str, ...] = (
        "Immigration",
        "Abortion",
        "Healthcare Policy",
        "Gun Policy",
        "Environment",
        "Student Debt",
        "Economy",
    )


@dataclass(frozen=True)
class PipelineConfig:
    publishers: tuple[Publisher, ...]
    snapshot_spec: SnapshotSpec = SnapshotSpec()
    prominence: ProminenceWeights = ProminenceWeights()
    provider: ProviderSettings = ProviderSettings()
    clustering: ClusterConfig = ClusterConfig()
    analytics: AnalyticsTopicSets = AnalyticsTopicSets()
    cleaning_dictionary_path: Optional[str] = None  # None -> packaged default
    fixture_dir: Optional[str] = None
    store_path: str = "pressgauge.db"
    api_token_env: str = "PRESSGAUGE_API_TOKEN"

    def enabled_publishers(self) -> list[Publisher]:
        return [p for p in self.publishers if p.enabled]

    def publisher(self, publisher_id: str) -> Publisher:
        for p in self.publishers:
            if p.id == publisher_id:
                return p
        raise KeyError(f"unknown publisher {publisher_id!r}")


def default_publishers() -> tuple[Publisher, ...]:
    text = resources.files("pressgauge.data").joinpath("publishers.json").read_text("utf-8")
    doc = json.loads(text)
    return tuple(Publisher(**entry) for entry in doc["publishers"])


def default_config() -> PipelineConfig:
    return PipelineConfig(publishers=default_publishers())


def _sub_config(cls, doc: dict[str, Any]):
    known = {f.name for f in fields(cls)}
    unknown = set(doc) - known
    if unknown:
        raise ValueError(f"unknown {cls.__name__} keys: {sorted(unknown)}")
    coerced = {k: tuple(v) if isinstance(v, list) else v for k, v in doc.items()}
    return cls(**coerced)


def load_config(path: str | Path | None = None) -> PipelineConfig:
    """Load a YAML config file over the packaged defaults."""
    config = default_config()
    if path is None:
        return config
    with open(path, encoding="utf-8") as fh:
        doc = yaml.safe_load(fh) or {}

    if "publishers" in doc:
        config = replace(config, publishers=tuple(Publisher(**entry) for entry in doc.pop("publishers")))
    section_types = {
        "snapshot_spec": SnapshotSpec,
        "prominence": ProminenceWeights,
        "provider": ProviderSettings,
        "clustering": ClusterConfig,
        "analytics": AnalyticsTopicSets,
    }
    for key, cls in section_types.items():
        if key in doc:
            section = doc.pop(key)
            if key == "snapshot_spec" and "times_local" in section:
                section["times_local"] = tuple(section["times_local"])
            config = replace(config, **{key: _sub_config(cls, section)})
    for key in ("cleaning_dictionary_path", "fixture_dir", "store_path", "api_token_env"):
        if key in doc:
            config = replace(config, **{key: doc.pop(key)})
    if doc:
        raise ValueError(f"unknown config keys: {sorted(doc)}")
    return config
