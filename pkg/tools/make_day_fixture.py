#!/usr/bin/env python3
"""The recorded 30-article day and the Oct 1, 2024 event table.

Imported and driven by make_fixtures.py. The day fixture is designed, not
scraped: three publishers x five snapshots x ten articles, six story groups
whose engineered embeddings cluster at the 0.8 threshold, a recall addition,
a malformed recall reply, a precision removal, and one cluster that
dissolves. After writing the fixtures the generator runs the real pipeline
against them and freezes the verified outputs as goldens.
"""

from __future__ import annotations

import math
import random
import shutil
import sys
from dataclasses import replace
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tools"))

from make_fixtures import (  # noqa: E402
    DAY_DATE,
    DAY_PUBLISHERS,
    DAY_TIMES,
    FIXTURES,
    HIERARCHY,
    TEMPLATES,
    label_responses,
    quote_responses,
    record_response,
    sentence_responses,
    write_json,
    write_ndjson,
)
from pressgauge.clustering.embeddings import EmbeddingVector, text_digest  # noqa: E402
from pressgauge.clustering.graph import build_graph, threshold_components  # noqa: E402
from pressgauge.config import default_config  # noqa: E402
from pressgauge.core.types import article_identity  # noqa: E402
from pressgauge.ingest.dedupe import canonical_url  # noqa: E402
from pressgauge.ingest.fetch import page_key  # noqa: E402
from pressgauge.labeling.prompts import format_numbered_lines  # noqa: E402

DIM = 48
MASTER_SEED = 20241015

# --------------------------------------------------------------------------
# Story design
# --------------------------------------------------------------------------

STORIES = {
    "g0": {
        "members": [("associated-press", 0), ("associated-press", 1), ("fox-news", 0), ("fox-news", 1), ("the-guardian", 0), ("the-guardian", 1)],
        "topic": ("Weather and Natural Disasters", "Hurricane"),
        "place": "the Carolinas",
        "shared_fact": "At least 14 deaths have been attributed to the flooding",
        "theme": "Hurricane Milo's flooding across the Southeast",
        "theme_short": "Hurricane Milo flooding",
        "titles": [
            "Hurricane Milo's floodwaters keep rising across the Carolinas",
            "Rescue crews reach towns cut off by Milo's flooding",
            "Milo aftermath: governors tour flooded counties",
            "Power outages linger as Milo's rains move north",
            "Flooded hospitals evacuate patients after Milo",
            "Milo recovery begins as rivers crest in the Carolinas",
        ],
        "lean": [0, 0, 1, 1, -1, 0],
        "tone": [-4, -3, -2, -3, -4, -2],
    },
    "g1": {
        "members": [("associated-press", 2), ("associated-press", 3), ("fox-news", 2), ("the-guardian", 2), ("the-guardian", 3)],
        "topic": ("Elections", "Presidential Horse Race"),
        "place": "Pennsylvania",
        "shared_fact": "The two campaigns are effectively tied in the latest swing-state polling averages",
        "theme": "A deadlocked presidential race tightens further in the swing states",
        "theme_short": "Swing-state race deadlocked",
        "titles": [
            "Polls show a dead heat across the northern swing states",
            "Both campaigns pour staff into Pennsylvania as margins vanish",
            "Swing-state sprint: the race tightens with three weeks left",
            "Canvassers blanket suburbs as the race stays deadlocked",
            "Betting markets wobble as swing-state polls converge",
        ],
        "lean": [0, -1, 2, -2, -1],
        "tone": [0, -1, 0, -1, 0],
    },
    "g2": {
        "members": [("associated-press", 4), ("associated-press", 5), ("fox-news", 3), ("the-guardian", 4)],
        "topic": ("War and International Conflict", "Israel-Lebanon Conflict"),
        "place": "southern Lebanon",
        "shared_fact": "Strikes overnight hit targets near the border for a third consecutive day",
        "theme": "Cross-border strikes escalate between Israel and Hezbollah",
        "theme_short": "Border strikes escalate",
        "titles": [
            "Strikes across the Lebanon border enter a third day",
            "Evacuations widen as the border conflict escalates",
            "Talks stall while strikes continue along the border",
            "Border villages empty out as strikes intensify",
        ],
        "lean": [0, 0, 1, -1],
        "tone": [-4, -4, -3, -5],
    },
    "g3": {
        "members": [("associated-press", 6), ("fox-news", 4), ("the-guardian", 5)],
        "topic": ("Labor", "Strikes"),
        "place": "Gulf ports",
        "shared_fact": "Roughly 45,000 dockworkers remain off the job at ports from Maine to Texas",
        "theme": "The dockworkers' strike stretches on and squeezes supply chains",
        "theme_short": "Port strike drags on",
        "titles": [
            "Port strike enters a second week with no talks scheduled",
            "Retailers reroute cargo as the dockworkers' strike drags on",
            "What the port strike means for holiday shelves",
        ],
        "lean": [0, 2, -2],
        "tone": [-2, -2, -1],
    },
    "g4": {
        "members": [("associated-press", 7), ("fox-news", 5)],
        "topic": ("Baseball", "MLB"),
        "place": "the Bronx",
        "shared_fact": "The series opener drew the largest postseason crowd at the stadium in a decade",
        "theme": "Playoff baseball returns with a blowout series opener",
        "theme_short": "Playoff opener blowout",
        "titles": [
            "Sluggers set the tone in a lopsided playoff opener",
            "Playoff opener turns into a rout in the Bronx",
        ],
        "lean": [0, 0],
        "tone": [3, 2],
    },
    "g5": {
        "members": [("associated-press", 8), ("the-guardian", 6)],
        "topic": ("Public Health", "Vaccines"),
        "place": "rural counties",
        "shared_fact": "Updated vaccines became available at pharmacies nationwide this week",
        "theme": "The fall vaccination campaign opens amid access gaps",
        "theme_short": "Fall vaccine campaign opens",
        "titles": [
            "Updated shots arrive as the fall vaccination push begins",
            "Vaccine campaign opens with gaps in rural access",
        ],
        "lean": [0, -2],
        "tone": [1, -1],
    },
}

MISC = [
    {
        "key": ("associated-press", 9),
        "title": "Insurance claims surge in counties flooded by Milo",
        "topic": ("Business", "Corporate Earnings"),
        "place": "flooded counties",
        "unique_fact": "Insurers logged more than 120,000 new claims in a week",
        "lean": 0,
        "tone": -2,
        "recall": "g0",
    },
    {
        "key": ("fox-news", 6),
        "title": "Early voting lines grow in the suburbs as the deadlocked race drives turnout",
        "topic": ("Elections", "Voting Rights and Administration"),
        "place": "suburban counties",
        "unique_fact": "Election offices reported record first-day early turnout in six states",
        "lean": 1,
        "tone": 0,
        "recall": "g1",
    },
    {
        "key": ("fox-news", 7),
        "title": "A thinner, brighter smartphone lineup debuts",
        "topic": ("Technology", "Consumer Technology"),
        "place": "the launch event",
        "unique_fact": "The flagship model ships in three sizes starting next Friday",
        "lean": 0,
        "tone": 2,
        "recall": "apple",  # malformed reply; stays unassigned with a warning
    },
    {
        "key": ("fox-news", 8),
        "title": "Meteor shower peaks this weekend for most of the country",
        "topic": ("Science", "Space Exploration"),
        "place": "dark-sky parks",
        "unique_fact": "Forecasters expect up to 60 meteors an hour at the peak",
        "lean": 0,
        "tone": 3,
        "recall": None,
    },
    {
        "key": ("fox-news", 9),
        "title": "Mortgage rates tick down for a fourth straight week",
        "topic": ("Housing", "Housing Market"),
        "place": "the housing market",
        "unique_fact": "The average 30-year rate slipped below 6.1 percent",
        "lean": 0,
        "tone": 1,
        "recall": None,
    },
    {
        "key": ("the-guardian", 7),
        "title": "Museum agrees to return looted bronzes after a decade of pressure",
        "topic": ("Arts and Entertainment", "Books and Literature"),
        "place": "the museum",
        "unique_fact": "Seventy-two bronzes will be repatriated under the agreement",
        "lean": -1,
        "tone": 1,
        "recall": None,
    },
    {
        "key": ("the-guardian", 8),
        "title": "A new cookbook revives the lost art of regional baking",
        "topic": ("Culture and Lifestyle - Other", "Food and Dining"),
        "place": "village bakeries",
        "unique_fact": "The collection gathers 140 recipes from four counties",
        "lean": 0,
        "tone": 4,
        "recall": None,
    },
    {
        "key": ("the-guardian", 9),
        "title": "Midweek upsets scramble the group stage",
        "topic": ("Sports - Other", "Soccer"),
        "place": "the group stage",
        "unique_fact": "Three group leaders lost on the same night for the first time since 2004",
        "lean": 0,
        "tone": 0,
        "recall": None,
    },
]

PRECISION_REMOVALS = {"g1": ("the-guardian", 3), "g4": ("fox-news", 5)}

FACT_SUMMARIES = {
    "g0": "Flooding from Hurricane Milo has killed at least 14 people as rivers keep rising across the Carolinas.",
    # Over the 25-word cap on purpose: the pipeline truncates and flags it.
    "g1": (
        "With three weeks remaining, the presidential race is effectively tied across the northern swing states, "
        "with both campaigns flooding Pennsylvania and neighboring battlegrounds with staff and advertising money."
    ),
    "g2": "Cross-border strikes between Israel and Hezbollah continued for a third consecutive day as evacuations widened.",
    "g3": "About 45,000 dockworkers remain on strike at East and Gulf Coast ports, squeezing supply chains.",
    "g5": "Updated fall vaccines reached pharmacies nationwide this week, though rural access gaps remain.",
}

QUOTE_SPEAKERS = [
    ("Dana Whitfield", "county emergency director", "Crowder County", "Politics", "spokesperson"),
    ("Luis Ortega", "logistics analyst", "Harbor Research", "Corporate", "expert"),
    ("Mara Chen", "field organizer", "a statewide campaign", "Politics", "participant"),
    ("Theo Brandt", "professor of public health", "State University", "Academia", "expert"),
    ("Iris Kowalski", "shop owner", "", "Other", "illustrative anecdote"),
]

SENT_TONES = ["neutral", "negative", "positive"]
FOCUS_CYCLE = ["neither", "neither", "republican", "democrat", "both", "neither"]


def publisher_domain(publisher_id: str) -> str:
    return {
        "associated-press": "apnews.com",
        "fox-news": "www.foxnews.com",
        "the-guardian": "www.theguardian.com",
    }[publisher_id]


def slugify(title: str) -> str:
    return "".join(ch if ch.isalnum() else "-" for ch in title.lower()).strip("-")[:60].rstrip("-")


def _unit(values: list[float]) -> list[float]:
    norm = math.sqrt(sum(v * v for v in values))
    return [v / norm for v in values]


def _rand_unit(rng: random.Random) -> list[float]:
    return _unit([rng.gauss(0.0, 1.0) for _ in range(DIM)])


def _near(center: list[float], rng: random.Random, noise: float = 0.02) -> list[float]:
    return _unit([c + rng.gauss(0.0, noise) for c in center])


class DayDesign:
    """Everything about the recorded day, derived deterministically."""

    def __init__(self):
        self.rng = random.Random(MASTER_SEED)
        self.articles: dict[tuple[str, int], dict] = {}
        self._build_articles()
        self._build_vectors()

    # -- article content ----------------------------------------------------

    def _body_sentences(self, key, story: dict | None, misc: dict | None, variant: int) -> tuple[list[str], list[dict], dict]:
        publisher, index = key
        speaker = QUOTE_SPEAKERS[(variant + index) % len(QUOTE_SPEAKERS)]
        name, occupation, affiliation, domain, capacity = speaker
        if story:
            place = story["place"]
            shared = story["shared_fact"]
            attributions = [
                "officials said", "state officials said", "county managers said",
                "organizers said", "a spokesperson said", "reporters were told",
            ]
            s2 = f"{shared}, {attributions[variant % len(attributions)]}."
            quote_line = f'"We have never seen anything move this fast," said {name}, a {occupation}.'
            s1 = f"Crews in {place} logged {20 + 3 * variant + index} incident reports on Tuesday."
            s4 = "Residents deserve a faster and better coordinated response than this."
            s5 = f"Officials plan {2 + variant} more briefings on {place} this week."
        else:
            place = misc["place"]
            s1 = f"{misc['unique_fact']}, according to figures released Tuesday."
            s2 = f"Observers around {place} called the pace of change unusual for October."
            quote_line = f'"The numbers surprised all of us," said {name}, a {occupation}.'
            s4 = "It is hard to argue the moment is anything but remarkable."
            s5 = f"Updates from {place} are expected later this week."
        sentences = [s1, s2, quote_line, s4, s5]
        tone_seed = (index + variant) % len(SENT_TONES)
        labels = [
            {"type": "fact", "tone": SENT_TONES[tone_seed], "focus": FOCUS_CYCLE[(index + i) % len(FOCUS_CYCLE)]}
            for i in range(5)
        ]
        labels[2]["type"] = "quote"
        labels[3]["type"] = "opinion"
        quote = {
            "quote": quote_line.split('"')[1],
            "person_name": name,
            "person_occupation": occupation,
            "person_affiliation": affiliation,
            "person_domain": domain,
            "person_capacity": capacity,
        }
        return sentences, labels, quote

    def _add_article(self, key, title, topic_pair, lean, tone, story=None, misc=None, variant=0):
        publisher, index = key
        topic, subtopic = topic_pair
        category = HIERARCHY.category_of(topic)
        url = f"https://{publisher_domain(publisher)}/2024/10/15/{slugify(title)}"
        url = canonical_url(url)
        sentences, sentence_labels, quote = self._body_sentences(key, story, misc, variant)
        body = " ".join(sentences)
        takeaways = f"{title}. Officials shared new figures on Tuesday. Further updates are expected this week."
        self.articles[key] = {
            "key": key,
            "publisher_id": publisher,
            "index": index,
            "url": url,
            "article_id": article_identity(publisher, url),
            "title": title,
            "body": body,
            "sentences": sentences,
            "sentence_labels": sentence_labels,
            "quote": quote,
            "story": story["name"] if story else None,
            "misc": misc,
            "labels": {
                "topic": topic,
                "subtopic": subtopic,
                "category": category,
                "news_type": "news report" if (index + variant) % 3 else "news analysis",
                "justification": "Grounded in attributed figures and on-the-record statements.",
                "takeaways": takeaways,
                "lean": lean,
                "lean_reason": "Assessed against how the piece treats each party's positions.",
                "tone": tone,
                "tone_reason": "Weighed the balance of setbacks and progress described.",
                "headline_lean": max(-5, min(5, lean + (1 if (index + variant) % 4 == 0 else 0))),
                "headline_lean_reason": "Read the title alone against the same party-support rubric.",
                "headline_tone": max(-5, min(5, tone + (-1 if (index + variant) % 3 == 0 else 1))),
                "headline_tone_reason": "The title's wording sets the valence on its own.",
            },
        }

    def _build_articles(self):
        for name, story in STORIES.items():
            story = dict(story, name=name)
            for variant, key in enumerate(story["members"]):
                self._add_article(
                    key,
                    story["titles"][variant],
                    story["topic"],
                    story["lean"][variant],
                    story["tone"][variant],
                    story=story,
                    variant=variant,
                )
        for variant, misc in enumerate(MISC):
            self._add_article(
                misc["key"], misc["title"], misc["topic"], misc["lean"], misc["tone"], misc=misc, variant=variant
            )

    # -- embedding vectors ----------------------------------------------------

    def _build_vectors(self):
        story_centers = {name: _rand_unit(self.rng) for name in STORIES}
        fact_centers = {name: _rand_unit(self.rng) for name in STORIES}
        self.article_vectors: dict[str, list[float]] = {}
        self.sentence_vectors: dict[str, list[float]] = {}
        for article in self.articles.values():
            if article["story"]:
                vec = _near(story_centers[article["story"]], self.rng)
            else:
                vec = _rand_unit(self.rng)
            self.article_vectors[article["article_id"]] = vec
            # Sentence vectors: the shared fact (sentence 2) sits near the
            # story's fact center; the other facts are their own directions.
            for position in (1, 2, 5):
                key = f"{article['article_id']}#{position}"
                if position == 2 and article["story"]:
                    self.sentence_vectors[key] = _near(fact_centers[article["story"]], self.rng)
                else:
                    self.sentence_vectors[key] = _rand_unit(self.rng)

        self._assert_separation(story_centers, fact_centers)

    def _assert_separation(self, story_centers, fact_centers):
        def cos(a, b):
            return sum(x * y for x, y in zip(a, b))

        centers = list(story_centers.values()) + list(fact_centers.values())
        for i, a in enumerate(centers):
            for b in centers[i + 1 :]:
                assert abs(cos(a, b)) < 0.55, "story/fact centers landed too close; change MASTER_SEED"
        vectors = list(self.article_vectors.items())
        story_of = {a["article_id"]: a["story"] for a in self.articles.values()}
        for i, (id_a, vec_a) in enumerate(vectors):
            for id_b, vec_b in vectors[i + 1 :]:
                sim = cos(vec_a, vec_b)
                if story_of[id_a] is not None and story_of[id_a] == story_of[id_b]:
                    assert sim > 0.95, f"within-story similarity too low: {sim}"
                else:
                    assert sim < 0.6, f"cross-story similarity too high: {sim} ({id_a}, {id_b})"

    # -- derived views ----------------------------------------------------

    def by_id(self) -> dict[str, dict]:
        return {a["article_id"]: a for a in self.articles.values()}

    def embedding_text(self, article: dict) -> str:
        return f"{article['title']}. {article['body']}"


# --------------------------------------------------------------------------
# Fixture emission
# --------------------------------------------------------------------------


def _write_snapshots(root: Path, design: DayDesign) -> None:
    rng = random.Random(MASTER_SEED + 1)
    for publisher in DAY_PUBLISHERS:
        pub_articles = sorted((a for a in design.articles.values() if a["publisher_id"] == publisher), key=lambda a: a["index"])
        for slot, hhmm in enumerate(DAY_TIMES):
            order = list(pub_articles)
            rng.shuffle(order)
            items = []
            for position, article in enumerate(order):
                items.append(
                    {
                        "url": article["url"],
                        "title": article["title"],
                        "y_offset": 80.0 + 140.0 * position,
                        "font_size": 32.0 if position == 0 else 22.0,
                        "image_area": 90000.0 if position < 3 else 0.0,
                    }
                )
            if slot == 0:
                items.append(
                    {
                        "url": f"https://{publisher_domain(publisher)}/videos/daily-briefing",
                        "title": "Watch: the day in two minutes",
                        "y_offset": 80.0 + 140.0 * len(items),
                        "font_size": 18.0,
                        "image_area": 120000.0,
                    }
                )
            path = root / "snapshots" / publisher / f"{DAY_DATE}T{hhmm.replace(':', '')}.ndjson"
            write_ndjson(path, items)


def _write_pages(root: Path, design: DayDesign) -> None:
    boilerplate_targets = {("fox-news", 2), ("the-guardian", 0)}
    html_targets = {("associated-press", 0)}
    for article in design.articles.values():
        key = article["key"]
        doc = {"url": article["url"], "published_at": DAY_DATE}
        if key in html_targets:
            paragraphs = "".join(f"<p>{s}</p>" for s in article["sentences"])
            doc["html"] = (
                f"<html><head><title>{article['title']}</title><script>let x=1;</script></head>"
                f"<body><nav>Home / News</nav>{paragraphs}<footer>Contact</footer></body></html>"
            )
        elif key in boilerplate_targets:
            sentences = list(article["sentences"])
            # The stray phrase sits between sentences and vanishes after cleaning.
            raw = " ".join(sentences[:2]) + " Click Here for More Information " + " ".join(sentences[2:])
            doc["title"] = article["title"]
            doc["body"] = raw
        else:
            doc["title"] = article["title"]
            doc["body"] = article["body"]
        write_json(root / "pages" / f"{page_key(article['url'])}.json", doc)


def _write_embeddings(root: Path, design: DayDesign) -> None:
    rows = []
    for article in design.articles.values():
        rows.append({"id": text_digest(design.embedding_text(article)), "values": design.article_vectors[article["article_id"]]})
        for position in (1, 2, 5):
            text = article["sentences"][position - 1]
            rows.append({"id": text_digest(text), "values": design.sentence_vectors[f"{article['article_id']}#{position}"]})
    # Every embedded text must be unique: the pipeline looks vectors up by
    # text digest, so a collision would silently reuse the wrong vector.
    assert len({row["id"] for row in rows}) == len(rows), "duplicate embedded text in the day design"
    write_ndjson(root / "embeddings.ndjson", rows)


def _simulate_refinement(design: DayDesign) -> dict:
    """Replay the clustering flow to learn exactly which prompts will render."""
    vectors = [EmbeddingVector(id=aid, values=tuple(v)) for aid, v in sorted(design.article_vectors.items())]
    graph = build_graph(vectors)
    components, singletons = threshold_components(graph, 0.8, 2)
    by_id = design.by_id()
    story_by_component = []
    for component in components:
        stories = {by_id[m]["story"] for m in component}
        assert len(stories) == 1 and None not in stories, f"component mixes stories: {stories}"
        story_by_component.append(next(iter(stories)))

    themed = []
    for index, component in enumerate(components, start=1):
        story = STORIES[story_by_component[index - 1]]
        themed.append(
            {
                "index": index,
                "story": story_by_component[index - 1],
                "theme": story["theme"],
                "theme_short": story["theme_short"],
                "members": set(component),
            }
        )

    theme_of_story = {t["story"]: t for t in themed}
    recall_replies = {}
    for aid in sorted(singletons):
        misc = by_id[aid]["misc"]
        target = misc["recall"] if misc else None
        if target in STORIES:
            recall_replies[aid] = str(theme_of_story[target]["index"])
            theme_of_story[target]["members"].add(aid)
        elif target is None:
            recall_replies[aid] = "-1"
        else:
            recall_replies[aid] = target  # malformed on purpose
    return {
        "components": components,
        "singletons": singletons,
        "themed": themed,
        "recall_replies": recall_replies,
    }


def _write_llm_responses(root: Path, design: DayDesign, sim: dict) -> dict:
    by_id = design.by_id()
    for article in design.articles.values():
        label_responses(root, article["body"], article["title"], article["labels"])
        sentence_responses(root, article["body"], article["sentence_labels"])
        quote_responses(root, article["body"], [article["quote"]])

    titles = {aid: by_id[aid]["title"] for aid in by_id}

    # Event titles render over the original components (titling precedes recall).
    for component, cluster in zip(sim["components"], sim["themed"]):
        prompt = TEMPLATES["event_title"].render(article_titles=format_numbered_lines([titles[m] for m in sorted(component)]))
        record_response(root, prompt, {"theme": cluster["theme"], "theme_short": cluster["theme_short"]})

    # Recall: one prompt per singleton, against the day's theme list.
    themes_block = format_numbered_lines([t["theme"] for t in sim["themed"]])
    for aid in sorted(sim["singletons"]):
        article = by_id[aid]
        prompt = TEMPLATES["cluster_recall"].render(
            title=article["title"], takeaways=article["labels"]["takeaways"], themes=themes_block
        )
        record_response(root, prompt, sim["recall_replies"][aid])

    # Precision: member lists include recall additions.
    final_members: dict[str, set] = {}
    removed: dict[str, set] = {}
    for cluster in sim["themed"]:
        ordered = sorted(cluster["members"])
        story = cluster["story"]
        removal_key = PRECISION_REMOVALS.get(story)
        reply = "-1"
        removed_ids = set()
        if removal_key:
            removal_id = design.articles[removal_key]["article_id"]
            reply = str(ordered.index(removal_id) + 1)
            removed_ids = {removal_id}
        prompt = TEMPLATES["cluster_precision"].render(
            theme=cluster["theme"], titles=format_numbered_lines([titles[m] for m in ordered])
        )
        record_response(root, prompt, reply)
        remaining = set(cluster["members"]) - removed_ids
        if len(remaining) < 2:
            removed_ids |= remaining
            remaining = set()
        final_members[story] = remaining
        removed[story] = removed_ids

    # Fact summaries for surviving events, over final membership.
    expected_events = []
    for cluster in sim["themed"]:
        story = cluster["story"]
        members = final_members[story]
        if not members:
            continue
        fact_keys = []
        for aid in sorted(members):
            article = by_id[aid]
            for position, label in enumerate(article["sentence_labels"], start=1):
                if label["type"] == "fact":
                    fact_keys.append((f"{aid}#{position}", article["sentences"][position - 1]))
        fact_vectors = [EmbeddingVector(id=k, values=tuple(design.sentence_vectors.get(k) or design.sentence_vectors[k])) for k, _ in fact_keys]
        graph = build_graph(fact_vectors)
        groups, _ = threshold_components(graph, 0.85, 2)
        texts = dict(fact_keys)
        fact_clusters = []
        for group in sorted(groups, key=lambda g: (-len(g), min(g))):
            ordered_keys = sorted(group)
            prompt = TEMPLATES["fact_summary"].render(sentence_list=format_numbered_lines([texts[k] for k in ordered_keys]))
            record_response(root, prompt, {"synthetic_sentence": FACT_SUMMARIES[story]})
            fact_clusters.append(ordered_keys)
        expected_events.append({"story": story, "members": members, "fact_groups": fact_clusters, "theme": cluster["theme"]})
    return {"final_members": final_members, "expected_events": expected_events}


# --------------------------------------------------------------------------
# Self-check + golden freeze
# --------------------------------------------------------------------------


def _self_check_and_freeze(root: Path, design: DayDesign, outcome: dict) -> None:
    from pressgauge.store.db import VersionedStore
    from pressgauge.store.runs import run_day

    config = replace(default_config(), fixture_dir=str(root))
    store = VersionedStore(":memory:")
    report = run_day(config, store, DAY_DATE, provider_mode="fixture")
    assert report["status"] == "done", report
    assert report["stages"]["ingest"]["articles"] == 30, report["stages"]["ingest"]
    assert report["stages"]["ingest"]["fetch_errors"] == {"non_article": 3}, report["stages"]["ingest"]
    assert report["stages"]["label"]["labeled"] == 30, report["stages"]["label"]
    assert report["stages"]["label"]["dead_lettered"] == 0

    by_id = design.by_id()
    for aid, expected in by_id.items():
        label = store.get("label", aid)
        assert label is not None, f"missing label for {aid} ({expected['title']})"
        for field, path in (
            ("topic", ("topic",)),
            ("subtopic", ("subtopic",)),
            ("category", ("category",)),
            ("news_type", ("news_type",)),
        ):
            assert label[field] == expected["labels"][field], (aid, field, label[field])
        assert label["lean"]["lean"] == expected["labels"]["lean"]
        assert label["tone"]["tone"] == expected["labels"]["tone"]
        assert label["headline_lean"]["lean"] == expected["labels"]["headline_lean"]
        assert label["headline_tone"]["tone"] == expected["labels"]["headline_tone"]

    expected_partition = {frozenset(e["members"]) for e in outcome["expected_events"]}
    stored_events = list(store.iter_latest("event"))
    actual_partition = {frozenset(doc["member_article_ids"]) for _, doc in stored_events}
    assert actual_partition == expected_partition, (
        f"event partition mismatch:\nexpected={sorted(map(sorted, expected_partition))}\n"
        f"actual={sorted(map(sorted, actual_partition))}"
    )
    assert report["stages"]["cluster"]["events"] == len(expected_partition)

    # Freeze goldens from the verified run.
    golden_dir = root / "golden"
    if golden_dir.exists():
        shutil.rmtree(golden_dir)
    golden_dir.mkdir(parents=True)
    write_json(golden_dir / "report.json", report)

    labels_golden = {}
    for aid in sorted(by_id):
        label = store.get("label", aid)
        labels_golden[aid] = {
            "title": by_id[aid]["title"],
            "publisher_id": by_id[aid]["publisher_id"],
            "topic": label["topic"],
            "subtopic": label["subtopic"],
            "category": label["category"],
            "news_type": label["news_type"],
            "lean": label["lean"]["lean"],
            "tone": label["tone"]["tone"],
            "headline_lean": label["headline_lean"]["lean"],
            "headline_tone": label["headline_tone"]["tone"],
        }
    write_json(golden_dir / "labels.json", labels_golden)
    write_json(golden_dir / "events.json", [doc for _, doc in sorted(stored_events)])
    write_json(golden_dir / "facts.json", {eid: store.get("facts", eid) for eid, _ in sorted(stored_events)})
    write_json(golden_dir / "refinement.json", store.get("refinement", DAY_DATE))
    (golden_dir / "store_digest.txt").write_text(store.digest() + "\n", encoding="utf-8")
    print(f"day fixture verified: 30 articles, {len(stored_events)} events, digest {store.digest()[:12]}")


def gen_day() -> None:
    root = FIXTURES / "day"
    if root.exists():
        shutil.rmtree(root)
    design = DayDesign()
    _write_snapshots(root, design)
    _write_pages(root, design)
    _write_embeddings(root, design)
    sim = _simulate_refinement(design)
    outcome = _write_llm_responses(root, design, sim)
    _self_check_and_freeze(root, design, outcome)


# --------------------------------------------------------------------------
# The October 1, 2024 event table
# --------------------------------------------------------------------------

EVENT_TABLE = [
    ("Escalation of Conflict: Israel and Iran's Military Engagements in Lebanon", "Israel-Iran conflict escalates", 75),
    ("High-Stakes Vice Presidential Debate: Vance vs. Walz", "Vice presidential debate", 65),
    ("Hurricane Helene: A Devastating Toll on North Carolina", "Hurricane Helene devastates Carolinas", 60),
    ("Nationwide Port Workers Strike Threatens Supply Chains and Economy", "Port workers strike", 29),
    ("The Legacy and Controversy of Pete Rose: Baseball's All-Time Hits Leader Passes Away", "Pete Rose dies", 20),
    ("Political Fallout from Hurricane Helene: Claims and Responses", "Helene political fallout", 17),
    ("Celebrating Jimmy Carter's Historic 100th Birthday", "Jimmy Carter turns 100", 15),
    ("Escalating Conflicts and Political Debates Amid Natural Disasters", "Conflicts amid disasters", 13),
    ("Sean 'Diddy' Combs Faces 120 Sexual Abuse Allegations", "Combs abuse allegations", 9),
    ("Tributes to John Amos: Celebrated Actor of 'Good Times' and 'Roots' Dies at 84", "John Amos dies", 8),
    ("Tim Walz's Controversial Claims on China and Tiananmen Square", "Walz China claims", 8),
    ("Claudia Sheinbaum: Mexico's First Female President", "Sheinbaum takes office", 6),
    ("Georgia's Abortion Ban Ruled Unconstitutional", "Georgia abortion ruling", 6),
    ("Frank Fritz, 'American Pickers' Star, Passes Away at 60", "Frank Fritz dies", 5),
    ("Trump Withdraws from CBS '60 Minutes' Interview", "Trump skips 60 Minutes", 4),
    ("NBA Legend Dikembe Mutombo Passes Away at 58", "Dikembe Mutombo dies", 4),
    ("Close Encounter Between Russian Fighter Jet and US F-16 Near Alaska", "Russian jet encounter", 3),
    ("Julian Assange's Plea for Freedom Through Journalism", "Assange plea", 3),
    ("Fatal Shooting of Kentucky Judge by Sheriff", "Kentucky judge shooting", 3),
    ("Morgan Wallen's Generous Donation for Hurricane Helene Relief", "Wallen Helene donation", 3),
    ("Major Verizon Service Outage Affects Customers Nationwide", "Verizon service outage", 3),
    ("Trump's GoFundMe Campaign for Hurricane Helene Victims Raises Over $2 Million", "Trump Helene fundraiser", 2),
]

TABLE_DAY = "2024-10-01"


def gen_event_table() -> None:
    publishers = [p.id for p in default_config().publishers]
    articles, events = [], []
    counter = 0
    for position, (theme, theme_short, count) in enumerate(EVENT_TABLE, start=1):
        member_ids = []
        for m in range(count):
            publisher = publishers[counter % len(publishers)]
            counter += 1
            url = canonical_url(f"https://{publisher}.example/{TABLE_DAY}/e{position:02d}/{m + 1}")
            article_id = article_identity(publisher, url)
            member_ids.append(article_id)
            articles.append(
                {
                    "article_id": article_id,
                    "publisher_id": publisher,
                    "canonical_url": url,
                    "title": f"{theme_short} - report {m + 1}",
                    "body": f"Coverage item {m + 1} in the day's reporting on {theme_short.lower()}.",
                    "published_at": TABLE_DAY,
                    "first_seen_snapshot": f"{publisher}/{TABLE_DAY}T06:00:00-04:00",
                    "best_rank": (m % 20) + 1,
                }
            )
        events.append(
            {
                "event_id": f"{TABLE_DAY}-t{position:02d}",
                "day": TABLE_DAY,
                "theme": theme,
                "theme_short": theme_short,
                "theme_short_truncated": False,
                "member_article_ids": sorted(member_ids),
            }
        )
    assert sum(e[2] for e in EVENT_TABLE) == 361
    assert len(events) == 22
    write_json(FIXTURES / f"events_{TABLE_DAY}.json", {"day": TABLE_DAY, "articles": articles, "events": events})
    print(f"event table: {len(events)} events, {len(articles)} member stubs")
