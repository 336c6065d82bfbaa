from __future__ import annotations

import pytest

from pressgauge.config import default_config, load_config


def write_config(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadConfig:
    def test_defaults_without_file(self):
        config = load_config(None)
        assert len(config.publishers) == 10
        assert config.snapshot_spec.times_local == ("06:00", "10:00", "14:00", "18:00", "22:00")
        assert config.clustering.article_threshold == 0.8
        assert config.clustering.fact_threshold == 0.85

    def test_overrides_merge_over_defaults(self, tmp_path):
        path = write_config(
            tmp_path,
            """
publishers:
  - {id: one, display_name: One, homepage_url: "https://one.test"}
  - {id: two, display_name: Two, homepage_url: "https://two.test", enabled: false}
snapshot_spec:
  times_local: ["07:00", "19:00"]
  top_k_scraped: 12
  top_k_labeled: 8
clustering:
  article_threshold: 0.75
provider:
  mode: live
  endpoint: "https://llm.internal/complete"
  concurrency: 4
analytics:
  policy_topics: ["Immigration", "Abortion"]
cleaning_dictionary_path: /tmp/phrases.txt
fixture_dir: /tmp/fixtures
store_path: /tmp/p.db
""",
        )
        config = load_config(path)
        assert [p.id for p in config.publishers] == ["one", "two"]
        assert config.enabled_publishers()[0].id == "one" and len(config.enabled_publishers()) == 1
        assert config.snapshot_spec.times_local == ("07:00", "19:00")
        assert config.snapshot_spec.top_k_labeled == 8
        assert config.clustering.article_threshold == 0.75
        assert config.clustering.fact_threshold == 0.85  # untouched default
        assert config.provider.mode == "live"
        assert config.provider.concurrency == 4
        assert config.analytics.policy_topics == ("Immigration", "Abortion")
        assert config.cleaning_dictionary_path == "/tmp/phrases.txt"
        assert config.store_path == "/tmp/p.db"

    def test_unknown_top_level_key_rejected(self, tmp_path):
        path = write_config(tmp_path, "not_a_setting: 1\n")
        with pytest.raises(ValueError, match="unknown config keys"):
            load_config(path)

    def test_unknown_section_key_rejected(self, tmp_path):
        path = write_config(tmp_path, "clustering:\n  fuzz_factor: 2\n")
        with pytest.raises(ValueError, match="unknown ClusterConfig keys"):
            load_config(path)

    def test_invalid_threshold_rejected(self, tmp_path):
        path = write_config(tmp_path, "clustering:\n  article_threshold: 1.5\n")
        with pytest.raises(ValueError, match="article_threshold"):
            load_config(path)

    def test_publisher_lookup(self):
        config = default_config()
        assert config.publisher("usa-today").display_name == "USA Today"
        with pytest.raises(KeyError):
            config.publisher("nope")
