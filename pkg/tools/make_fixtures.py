#!/usr/bin/env python3
"""Build the committed fixture corpora and golden files.

Everything under fixtures/ is generated here and checked in:

  fixtures/golden/            rendered prompt goldens + the bindings used
  fixtures/labeled_samples/   ten fully labeled replay articles
  fixtures/day/               a 30-article recorded day (snapshots, pages,
                              canned model responses, embeddings) plus the
                              golden end-to-end outputs
  fixtures/events_2024-10-01.json   the 22-event day table with member stubs

The generator writes fixtures first, then SELF-CHECKS by running the real
pipeline against them and asserting the outcome matches the design tables;
the golden output files are frozen from that verified run. Regenerate with:

    python tools/make_fixtures.py
"""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from pressgauge.core.hierarchy import load_default_hierarchy  # noqa: E402
from pressgauge.core.types import article_identity  # noqa: E402
from pressgauge.ingest.cleaning import clean_text, load_default_dictionary  # noqa: E402
from pressgauge.ingest.dedupe import canonical_url  # noqa: E402
from pressgauge.labeling.prompts import format_name_list, format_numbered_lines, load_templates  # noqa: E402
from pressgauge.labeling.providers import prompt_digest  # noqa: E402
from pressgauge.labeling.splitter import split_sentences  # noqa: E402

FIXTURES = ROOT / "fixtures"
HIERARCHY = load_default_hierarchy()
TEMPLATES = load_templates()
DICTIONARY = load_default_dictionary()

DAY_DATE = "2024-10-15"
DAY_TZ = "-04:00"
DAY_TIMES = ("06:00", "10:00", "14:00", "18:00", "22:00")
DAY_PUBLISHERS = ("associated-press", "fox-news", "the-guardian")


def write_json(path: Path, doc) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")


def write_ndjson(path: Path, docs) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")


def record_response(root: Path, prompt: str, response) -> None:
    text = response if isinstance(response, str) else json.dumps(response, ensure_ascii=False, indent=1)
    path = root / "llm" / f"{prompt_digest(prompt)}.txt"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# --------------------------------------------------------------------------
# Golden prompt renderings
# --------------------------------------------------------------------------

GOLDEN_ARTICLE = (
    "Gov. Kemp toured the damaged counties on Friday. Recovery crews cleared roads across north Georgia, "
    'officials said. "We are grateful for the national focus on our state," Kemp told reporters. '
    "Forecasters warned that river levels may keep rising through the weekend."
)
GOLDEN_TITLE = "Kemp says recovery effort is on track as rivers keep rising"


def golden_bindings() -> dict[str, dict[str, str]]:
    sentences = split_sentences(GOLDEN_ARTICLE).numbered()
    return {
        "topic": {"article": GOLDEN_ARTICLE, "topic_list": format_name_list(HIERARCHY.topic_names())},
        "subtopic": {
            "predicted_topic": "Weather and Natural Disasters",
            "article": GOLDEN_ARTICLE,
            "subtopic_list_under_the_topic": format_name_list(HIERARCHY.subtopics_of("Weather and Natural Disasters")),
        },
        "takeaways": {"article": GOLDEN_ARTICLE},
        "article_type": {"article": GOLDEN_ARTICLE},
        "article_lean": {"article": GOLDEN_ARTICLE},
        "article_tone": {"article": GOLDEN_ARTICLE},
        "headline_lean": {
            "topic": "Weather and Natural Disasters",
            "subtopic": "Hurricane",
            "category": "Disaster",
            "article": GOLDEN_TITLE,
        },
        "headline_tone": {
            "topic": "Weather and Natural Disasters",
            "subtopic": "Hurricane",
            "category": "Disaster",
            "article": GOLDEN_TITLE,
        },
        "sentence": {"sentences": sentences},
        "quote": {"article": GOLDEN_ARTICLE},
        "event_title": {
            "article_titles": format_numbered_lines(
                [
                    "Kemp says recovery effort is on track as rivers keep rising",
                    "Georgia counties begin cleanup after the storm",
                    "Rivers crest across the Southeast as crews clear roads",
                ]
            )
        },
        "cluster_recall": {
            "title": GOLDEN_TITLE,
            "takeaways": "Recovery crews cleared roads while officials warned that rivers may keep rising.",
            "themes": format_numbered_lines(
                ["Storm recovery across Georgia", "Senate race enters its final weeks", "Port strike talks resume"]
            ),
        },
        "cluster_precision": {
            "theme": "Storm recovery across Georgia",
            "titles": format_numbered_lines(
                [
                    "Kemp says recovery effort is on track as rivers keep rising",
                    "Georgia counties begin cleanup after the storm",
                    "Quarterback trade shakes up the league",
                ]
            ),
        },
        "fact_summary": {
            "sentence_list": format_numbered_lines(
                [
                    "Recovery crews cleared roads across north Georgia on Friday.",
                    "Crews reopened most county roads in north Georgia by Friday evening.",
                    "Road-clearing teams finished work across north Georgia counties on Friday.",
                ]
            )
        },
    }


def gen_prompt_goldens() -> None:
    out_dir = FIXTURES / "golden" / "prompts"
    if out_dir.exists():
        shutil.rmtree(out_dir)
    bindings = golden_bindings()
    write_json(FIXTURES / "golden" / "prompt_bindings.json", bindings)
    for name, binding in bindings.items():
        rendered = TEMPLATES[name].render(**binding)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"{name}.txt").write_text(rendered, encoding="utf-8")
    print(f"golden prompts: {len(bindings)} rendered")


# --------------------------------------------------------------------------
# Shared response builders
# --------------------------------------------------------------------------


def label_responses(root: Path, body: str, title: str, labels: dict) -> None:
    """Record every article-level prompt/response pair for one article."""
    topic, subtopic = labels["topic"], labels["subtopic"]
    category = HIERARCHY.category_of(topic)
    pairs = [
        ("topic", {"article": body, "topic_list": format_name_list(HIERARCHY.topic_names())}, {"topic": topic}),
        (
            "subtopic",
            {
                "predicted_topic": topic,
                "article": body,
                "subtopic_list_under_the_topic": format_name_list(HIERARCHY.subtopics_of(topic)),
            },
            {"subtopic": subtopic},
        ),
        ("takeaways", {"article": body}, {"takeaways": labels["takeaways"]}),
        ("article_type", {"article": body}, {"news_type": labels["news_type"], "justification": labels["justification"]}),
        ("article_lean", {"article": body}, {"reason": labels["lean_reason"], "lean": labels["lean"]}),
        ("article_tone", {"article": body}, {"reason": labels["tone_reason"], "tone": labels["tone"]}),
        (
            "headline_lean",
            {"topic": topic, "subtopic": subtopic, "category": category, "article": title},
            {"reason": labels["headline_lean_reason"], "lean": labels["headline_lean"]},
        ),
        (
            "headline_tone",
            {"topic": topic, "subtopic": subtopic, "category": category, "article": title},
            {"reason": labels["headline_tone_reason"], "tone": labels["headline_tone"]},
        ),
    ]
    for name, binding, response in pairs:
        record_response(root, TEMPLATES[name].render(**binding), response)


def sentence_responses(root: Path, body: str, sentence_labels: list[dict]) -> None:
    split = split_sentences(body)
    assert len(split.sentences) == len(sentence_labels), (
        f"sentence label table has {len(sentence_labels)} rows for {len(split.sentences)} sentences:\n"
        + "\n".join(f"  {i}. {s}" for i, s in enumerate(split.sentences, 1))
    )
    rows = [{"sentence": i, **labels} for i, labels in enumerate(sentence_labels, start=1)]
    record_response(root, TEMPLATES["sentence"].render(sentences=split.numbered()), rows)


def quote_responses(root: Path, body: str, quotes: list[dict]) -> None:
    if '"' not in body and "“" not in body and "”" not in body:
        assert not quotes, "quote table given for an article without quote marks"
        return
    record_response(root, TEMPLATES["quote"].render(article=body), quotes)


# --------------------------------------------------------------------------
# Labeled sample replay corpus
# --------------------------------------------------------------------------

# Published label values for the ten sample articles; rationale strings,
# titles, bodies, and takeaways are fixture stand-ins written for this repo.
SAMPLE_ARTICLES = [
    {
        "publisher_id": "associated-press",
        "url": "https://apnews.com/article/israel-lebanon-iran-hamas-hezbollah-haniyeh-262194a2d70273207ed1d1a5cb9ab09b",
        "date": "2024-08-01",
        "title": "Iran and Hezbollah weigh their response to Israeli strikes",
        "body": (
            "Israeli strikes in Beirut and Tehran killed senior figures from Hezbollah and Hamas within hours of each other. "
            "Officials across the region warned that a miscalculated response could pull Lebanon and Iran into a wider war. "
            '"Any response will come at a time of our choosing," a Hezbollah official said. '
            "Analysts said both groups need to restore deterrence without triggering a full conflict. "
            "Mediators pressed for restraint while embassies told citizens to leave Beirut."
        ),
        "category": "Politics",
        "topic": "War and International Conflict",
        "subtopic": "Israel-Lebanon Conflict",
        "news_type": "news analysis",
        "lean": 0,
        "tone": -4,
        "headline_lean": 0,
        "headline_tone": -3,
        "takeaways": (
            "Strikes in Beirut and Tehran killed senior Hezbollah and Hamas figures and sharply raised regional tensions. "
            "Both groups face pressure to respond without igniting a wider war. "
            "Mediators are urging restraint while evacuation warnings spread."
        ),
        "justification": "Weighs scenarios and quotes analysts on consequences rather than only reporting events.",
        "lean_reason": "Focuses on geopolitical fallout abroad without supporting either U.S. party.",
        "tone_reason": "Assassinations, escalation risks, and evacuation warnings dominate the piece.",
        "headline_lean_reason": "The title frames a foreign calculus with no U.S. partisan angle.",
        "headline_tone_reason": "The title stresses high stakes and the risk of error.",
        "sentences": [
            {"type": "fact", "tone": "negative", "focus": "neither"},
            {"type": "fact", "tone": "negative", "focus": "neither"},
            {"type": "quote", "tone": "negative", "focus": "neither"},
            {"type": "borderline", "tone": "negative", "focus": "neither"},
            {"type": "fact", "tone": "neutral", "focus": "neither"},
        ],
        "quotes": [
            {
                "quote": "Any response will come at a time of our choosing",
                "person_name": "",
                "person_occupation": "official",
                "person_affiliation": "Hezbollah",
                "person_domain": "Politics",
                "person_capacity": "spokesperson",
            }
        ],
    },
    {
        "publisher_id": "associated-press",
        "url": "https://apnews.com/article/olympics-2024-yusuf-dikec-turkish-shooter-a7890124304080a48e7ee4294004d306",
        "date": "2024-08-01",
        "title": "Turkish shooter Yusuf Dikec goes viral at the Paris Olympics",
        "body": (
            "Turkish shooter Yusuf Dikec won silver in the mixed team air pistol event at the Paris Olympics. "
            "He competed in a plain T-shirt with one hand in his pocket, a contrast with rivals in specialized gear. "
            "It was the first Olympic shooting medal in his country's history. "
            "Dikec joked that he is aiming for gold in Los Angeles in 2028. "
            "Clips of his relaxed stance spread quickly across social media."
        ),
        "category": "Sports",
        "topic": "Sports - Other",
        "subtopic": "Olympics",
        "news_type": "news report",
        "lean": 0,
        "tone": 4,
        "headline_lean": 0,
        "headline_tone": 0,
        "takeaways": (
            "Yusuf Dikec took silver in mixed team air pistol with a strikingly casual style. "
            "The medal is the first for his country in Olympic shooting. "
            "His relaxed stance made him an internet sensation."
        ),
        "justification": "Reports the result, the record, and the reaction without interpretive framing.",
        "lean_reason": "A sports story with no connection to U.S. party politics.",
        "tone_reason": "Celebrates a historic medal and a popular viral moment.",
        "headline_lean_reason": "The title names an athlete and a competition, nothing partisan.",
        "headline_tone_reason": "The title states that he went viral without valence.",
        "sentences": [
            {"type": "fact", "tone": "positive", "focus": "neither"},
            {"type": "fact", "tone": "neutral", "focus": "neither"},
            {"type": "fact", "tone": "positive", "focus": "neither"},
            {"type": "borderline", "tone": "positive", "focus": "neither"},
            {"type": "fact", "tone": "positive", "focus": "neither"},
        ],
        "quotes": [],
    },
    {
        "publisher_id": "breitbart",
        "url": "https://www.breitbart.com/border/2024/08/01/new-york-supreme-court-rules-texas-can-continue-busing-migrants-to-big-apple",
        "date": "2024-08-01",
        "title": "New York Court Rules Texas Can Keep Busing Migrants to the Big Apple",
        "body": (
            "A New York court rejected the city's lawsuit seeking to stop Texas from busing migrants to New York City. "
            "The ruling lets the state program continue while the border dispute plays out. "
            '"We will not stop until the border is secure," the governor of Texas said. '
            "It was the second legal win for the program in two days. "
            "City officials said they are reviewing their options."
        ),
        "category": "Politics",
        "topic": "Immigration",
        "subtopic": "Government Action",
        "news_type": "news report",
        "lean": 4,
        "tone": 4,
        "headline_lean": 4,
        "headline_tone": 0,
        "takeaways": (
            "A New York court declined to block the Texas migrant busing program. "
            "The governor of Texas vowed to continue until the border is secured. "
            "It marked the program's second legal victory in two days."
        ),
        "justification": "Relays the ruling and responses with verified facts and quotes.",
        "lean_reason": "Presents a Republican governor's border program favorably through consecutive wins.",
        "tone_reason": "Framed as a winning streak for the program's backers.",
        "headline_lean_reason": "The title casts a Republican border policy as prevailing in court.",
        "headline_tone_reason": "The title states the outcome of a ruling without charged language.",
        "sentences": [
            {"type": "fact", "tone": "neutral", "focus": "both"},
            {"type": "fact", "tone": "neutral", "focus": "republican"},
            {"type": "quote", "tone": "positive", "focus": "republican"},
            {"type": "fact", "tone": "positive", "focus": "republican"},
            {"type": "fact", "tone": "neutral", "focus": "democrat"},
        ],
        "quotes": [
            {
                "quote": "We will not stop until the border is secure",
                "person_name": "Greg Abbott",
                "person_occupation": "Governor of Texas",
                "person_affiliation": "State of Texas",
                "person_domain": "Politics",
                "person_capacity": "subject",
            }
        ],
    },
    {
        "publisher_id": "usa-today",
        "url": "https://www.usatoday.com/story/news/nation/2024/08/01/paul-whelan-released-russia-prisoner-release-marine/74632493007/",
        "date": "2024-08-01",
        "title": "Michigan man Paul Whelan freed from Russia in prisoner swap",
        "body": (
            "Paul Whelan, a former Marine held in Russia since 2018 on espionage charges he denied, was released in a prisoner swap. "
            "His family had pressed two administrations to bring him home. "
            "Whelan spent years in a remote penal colony after a trial his lawyers called a setup. "
            "Critics said earlier deals had left him behind. "
            "Officials described the exchange as one of the largest since the Cold War."
        ),
        "category": "Politics",
        "topic": "Foreign Policy",
        "subtopic": "Russia",
        "news_type": "news report",
        "lean": -1,
        "tone": -2,
        "headline_lean": 0,
        "headline_tone": 4,
        "takeaways": (
            "Paul Whelan was freed in a large prisoner exchange after more than five years in Russian custody. "
            "His family campaigned across two administrations for his release. "
            "The swap ranks among the biggest since the Cold War."
        ),
        "justification": "A factual account of the detention and the exchange without the author's views.",
        "lean_reason": "Credits the current administration's diplomacy while noting earlier criticism, a slight Democratic tilt.",
        "tone_reason": "Dwells on a long wrongful detention and harsh prison conditions despite the release.",
        "headline_lean_reason": "The title reports a release without crediting either party.",
        "headline_tone_reason": "The word freed gives the title a clearly positive outcome.",
        "sentences": [
            {"type": "fact", "tone": "negative", "focus": "neither"},
            {"type": "fact", "tone": "neutral", "focus": "both"},
            {"type": "fact", "tone": "negative", "focus": "neither"},
            {"type": "borderline", "tone": "negative", "focus": "both"},
            {"type": "fact", "tone": "neutral", "focus": "neither"},
        ],
        "quotes": [],
    },
    {
        "publisher_id": "usa-today",
        "url": "https://www.usatoday.com/story/news/politics/elections/2024/08/02/kamala-harris-democrat-presidential-candidate/74631136007/",
        "date": "2024-08-02",
        "title": "Kamala Harris makes history as first Black woman to clinch presidential nomination",
        "body": (
            "Vice President Kamala Harris secured the Democratic presidential nomination after a virtual roll call of delegates. "
            "She is the first Black woman and the first Asian American to lead a major party ticket. "
            "Her campaign reported record fundraising in the days after she entered the race. "
            "Supporters described the nomination as a historic turn in the contest against Donald Trump. "
            "Opponents sharpened their attacks as the general election race took shape."
        ),
        "category": "Politics",
        "topic": "Elections",
        "subtopic": "Presidential Horse Race",
        "news_type": "news report",
        "lean": -4,
        "tone": 1,
        "headline_lean": -4,
        "headline_tone": 5,
        "takeaways": (
            "Kamala Harris clinched the Democratic nomination through a virtual delegate roll call. "
            "She is the first Black woman and Asian American to top a major party ticket. "
            "Record fundraising accompanied her rapid consolidation of the race."
        ),
        "justification": "Reports the roll call, the milestone, and fundraising figures without editorializing.",
        "lean_reason": "Emphasizes a historic Democratic milestone and record support while noting attacks on her.",
        "tone_reason": "A celebratory milestone offset by intensifying attacks leaves a mildly positive balance.",
        "headline_lean_reason": "The title celebrates a Democratic first, framing the nominee's achievement positively.",
        "headline_tone_reason": "Makes history conveys celebration and a breakthrough.",
        "sentences": [
            {"type": "fact", "tone": "neutral", "focus": "democrat"},
            {"type": "fact", "tone": "positive", "focus": "democrat"},
            {"type": "fact", "tone": "positive", "focus": "democrat"},
            {"type": "borderline", "tone": "positive", "focus": "both"},
            {"type": "fact", "tone": "negative", "focus": "both"},
        ],
        "quotes": [],
    },
    {
        "publisher_id": "breitbart",
        "url": "https://www.breitbart.com/politics/2024/08/08/exclusive-karoline-leavitt-harris-walz-the-most-far-left-ticket-weve-ever-had",
        "date": "2024-08-08",
        "title": "Exclusive: Campaign Spokeswoman Calls Harris-Walz the Most Far-Left Ticket Ever",
        "body": (
            "A Trump campaign spokeswoman said the Democratic ticket is the most far-left in American history. "
            '"Voters deserve to know this record," she said in an interview. '
            "She argued the vice presidential pick was chosen to appease the party's activist wing. "
            "The campaign promised to spotlight the governor's record in the weeks ahead. "
            "Democrats dismissed the characterization as a distraction."
        ),
        "category": "Politics",
        "topic": "Elections",
        "subtopic": "Presidential Horse Race",
        "news_type": "opinion",
        "lean": 5,
        "tone": -4,
        "headline_lean": 4,
        "headline_tone": -3,
        "takeaways": (
            "A campaign spokeswoman branded the Democratic ticket the most far-left ever. "
            "She said the running-mate choice was aimed at the party's activist wing. "
            "The campaign plans a sustained attack on the governor's record."
        ),
        "justification": "Built around one side's charged characterizations and persuasive framing.",
        "lean_reason": "Amplifies Republican attack lines and casts the Democratic ticket as radical.",
        "tone_reason": "Harsh characterizations and promised attacks set a combative, negative register.",
        "headline_lean_reason": "The title repeats a Republican label used to disparage the Democratic ticket.",
        "headline_tone_reason": "Most far-left ever is a critical, negative characterization.",
        "sentences": [
            {"type": "borderline", "tone": "negative", "focus": "democrat"},
            {"type": "quote", "tone": "negative", "focus": "democrat"},
            {"type": "opinion", "tone": "negative", "focus": "democrat"},
            {"type": "fact", "tone": "neutral", "focus": "republican"},
            {"type": "fact", "tone": "negative", "focus": "democrat"},
        ],
        "quotes": [
            {
                "quote": "Voters deserve to know this record",
                "person_name": "Karoline Leavitt",
                "person_occupation": "campaign spokeswoman",
                "person_affiliation": "Trump campaign",
                "person_domain": "Politics",
                "person_capacity": "spokesperson",
            }
        ],
    },
    {
        "publisher_id": "the-guardian",
        "url": "https://www.theguardian.com/commentisfree/article/2024/aug/08/uk-far-right-riots-racists-communities",
        "date": "2024-08-08",
        "title": "A week of riots left us afraid, but the solidarity on our streets gives me hope",
        "body": (
            "After the killings in Southport, far-right crowds attacked mosques and set fires in several English towns. "
            "Friends texted me to ask whether it was safe to walk home. "
            "I have reported on racism for years, and this week still shook me. "
            "Then neighbors of every background came out with brooms and rebuilt the damaged shopfronts. "
            "That solidarity, more than any statement, is what gives me hope."
        ),
        "category": "Culture and Lifestyle",
        "topic": "Culture and Lifestyle - Other",
        "subtopic": "Home and Lifestyle",
        "news_type": "opinion",
        "lean": -5,
        "tone": -2,
        "headline_lean": -2,
        "headline_tone": 2,
        "takeaways": (
            "Far-right violence after the Southport killings left minority communities afraid. "
            "The author describes personal fear despite years of reporting on racism. "
            "Community cleanups and solidarity provide a hopeful counterpoint."
        ),
        "justification": "First-person reflection built on the author's experience and argument.",
        "lean_reason": "Condemns far-right extremism and racism in terms aligned with progressive positions.",
        "tone_reason": "Fear and violence dominate, partly balanced by scenes of solidarity.",
        "headline_lean_reason": "The title emphasizes communal solidarity against far-right violence.",
        "headline_tone_reason": "The title moves from fear to hope and ends on the hopeful note.",
        "sentences": [
            {"type": "fact", "tone": "negative", "focus": "neither"},
            {"type": "fact", "tone": "negative", "focus": "neither"},
            {"type": "opinion", "tone": "negative", "focus": "neither"},
            {"type": "fact", "tone": "positive", "focus": "neither"},
            {"type": "opinion", "tone": "positive", "focus": "neither"},
        ],
        "quotes": [],
    },
    {
        "publisher_id": "washington-post",
        "url": "https://www.washingtonpost.com/history/2024/08/08/richard-nixon-farewell-address-50-years",
        "date": "2024-08-08",
        "title": "In his final act as president, Nixon showed a human side few had seen",
        "body": (
            "Fifty years ago, Richard Nixon said goodbye to his staff hours before resigning the presidency. "
            "He spoke about his parents, his setbacks, and the dangers of hating one's enemies. "
            "Aides wept as he mixed jokes with raw reflection. "
            "Historians still debate how to square that morning with the scandal that ended his term. "
            "His daughter later said it was the hardest speech he ever gave."
        ),
        "category": "Politics",
        "topic": "Politician",
        "subtopic": "Non-US Political Official",
        "news_type": "news analysis",
        "lean": 1,
        "tone": 2,
        "headline_lean": 2,
        "headline_tone": 3,
        "takeaways": (
            "On the anniversary of his resignation, the piece revisits Nixon's farewell to his staff. "
            "The speech mixed humor with unusually raw reflection. "
            "Historians still weigh that moment against the scandal that forced him out."
        ),
        "justification": "Interprets a historical moment with context and competing readings.",
        "lean_reason": "A sympathetic portrait of a Republican president, though without policy advocacy.",
        "tone_reason": "Warm, human details outweigh the scandal backdrop.",
        "headline_lean_reason": "The title humanizes a Republican figure, a mildly favorable framing.",
        "headline_tone_reason": "Showing a human side frames the moment warmly.",
        "sentences": [
            {"type": "fact", "tone": "neutral", "focus": "republican"},
            {"type": "fact", "tone": "neutral", "focus": "republican"},
            {"type": "fact", "tone": "positive", "focus": "republican"},
            {"type": "borderline", "tone": "neutral", "focus": "republican"},
            {"type": "fact", "tone": "negative", "focus": "republican"},
        ],
        "quotes": [],
    },
    {
        "publisher_id": "fox-news",
        "url": "https://www.foxnews.com/sports/beach-volleyball-legend-kerri-walsh-jennings-felt-usa-patriotism-paris-something-special",
        "date": "2024-08-08",
        "title": "Beach volleyball legend Kerri Walsh Jennings says USA patriotism in Paris felt like something special",
        "body": (
            "Kerri Walsh Jennings, the most decorated beach volleyball Olympian, said representing the United States never stops feeling special. "
            '"Wearing the flag is the honor of my life," she said. '
            "She praised the next generation of American players competing in Paris. "
            "Walsh Jennings said she hopes to mentor athletes ahead of the Los Angeles Games. "
            "Fans greeted her appearances with chants of U-S-A."
        ),
        "category": "Sports",
        "topic": "Sports - Other",
        "subtopic": "Olympics",
        "news_type": "news report",
        "lean": 3,
        "tone": 5,
        "headline_lean": 1,
        "headline_tone": 4,
        "takeaways": (
            "Kerri Walsh Jennings reflected on the pride of representing the United States in Paris. "
            "She praised the rising generation of American players. "
            "She plans to mentor athletes heading into the Los Angeles Games."
        ),
        "justification": "Quotes and event details carry the story; no interpretive argument.",
        "lean_reason": "Heavy patriotic framing aligns with themes more associated with Republicans.",
        "tone_reason": "Pride, honor, and celebratory crowds throughout.",
        "headline_lean_reason": "Patriotic framing gives the title a slight rightward tilt.",
        "headline_tone_reason": "Something special casts the moment in a glowing light.",
        "sentences": [
            {"type": "fact", "tone": "positive", "focus": "neither"},
            {"type": "quote", "tone": "positive", "focus": "neither"},
            {"type": "fact", "tone": "positive", "focus": "neither"},
            {"type": "fact", "tone": "neutral", "focus": "neither"},
            {"type": "fact", "tone": "positive", "focus": "neither"},
        ],
        "quotes": [
            {
                "quote": "Wearing the flag is the honor of my life",
                "person_name": "Kerri Walsh Jennings",
                "person_occupation": "beach volleyball player",
                "person_affiliation": "Team USA",
                "person_domain": "Sports",
                "person_capacity": "subject",
            }
        ],
    },
    {
        "publisher_id": "usa-today",
        "url": "https://www.usatoday.com/story/entertainment/celebrities/2024/08/12/vince-vaughn-children-hollywood-walk-of-fame/74775775007/",
        "date": "2024-08-12",
        "title": "Vince Vaughn joined by his children in rare appearance at Walk of Fame ceremony",
        "body": (
            "Vince Vaughn received a star on the Hollywood Walk of Fame with his wife and two children beside him. "
            "The actor thanked his family and told the crowd they matter more than any award. "
            "His children rarely appear at public events. "
            "Colleagues shared stories about his generosity between takes. "
            "The ceremony closed with a long ovation."
        ),
        "category": "Culture and Lifestyle",
        "topic": "Celebrity",
        "subtopic": "Celebrity Tribute",
        "news_type": "news report",
        "lean": 0,
        "tone": 5,
        "headline_lean": 0,
        "headline_tone": 4,
        "takeaways": (
            "Vince Vaughn was honored with a star on the Hollywood Walk of Fame. "
            "His wife and children joined him in a rare public appearance. "
            "He told the crowd his family matters more than any award."
        ),
        "justification": "Event coverage with attributed details and no authorial argument.",
        "lean_reason": "A celebrity ceremony with no political content on either side.",
        "tone_reason": "A warm family milestone with tributes and an ovation.",
        "headline_lean_reason": "The title describes a family appearance with no partisan content.",
        "headline_tone_reason": "A rare family moment at an honor reads warmly positive.",
        "sentences": [
            {"type": "fact", "tone": "positive", "focus": "neither"},
            {"type": "fact", "tone": "positive", "focus": "neither"},
            {"type": "fact", "tone": "neutral", "focus": "neither"},
            {"type": "fact", "tone": "positive", "focus": "neither"},
            {"type": "fact", "tone": "positive", "focus": "neither"},
        ],
        "quotes": [],
    },
]


def gen_labeled_samples() -> None:
    root = FIXTURES / "labeled_samples"
    if root.exists():
        shutil.rmtree(root)
    articles, expected = [], []
    for rank, item in enumerate(SAMPLE_ARTICLES, start=1):
        url = canonical_url(item["url"])
        body = clean_text(item["body"], DICTIONARY)
        article = {
            "article_id": article_identity(item["publisher_id"], url),
            "publisher_id": item["publisher_id"],
            "canonical_url": url,
            "title": item["title"],
            "body": body,
            "published_at": item["date"],
            "first_seen_snapshot": f"{item['publisher_id']}/{item['date']}T06:00:00-04:00",
            "best_rank": rank if rank <= 10 else 10,
        }
        articles.append(article)
        expected.append(
            {
                "article_id": article["article_id"],
                "url": url,
                "publisher_id": item["publisher_id"],
                "category": item["category"],
                "topic": item["topic"],
                "subtopic": item["subtopic"],
                "news_type": item["news_type"],
                "lean": item["lean"],
                "tone": item["tone"],
                "headline_lean": item["headline_lean"],
                "headline_tone": item["headline_tone"],
            }
        )
        label_responses(root, body, item["title"], item)
        sentence_responses(root, body, item["sentences"])
        quote_responses(root, body, item["quotes"])
    write_ndjson(root / "articles.ndjson", articles)
    write_json(root / "expected_labels.json", expected)
    print(f"labeled samples: {len(articles)} articles, {len(list((root / 'llm').iterdir()))} responses")


if __name__ == "__main__":
    gen_prompt_goldens()
    gen_labeled_samples()
    from make_day_fixture import gen_day, gen_event_table  # noqa: E402

    gen_day()
    gen_event_table()
