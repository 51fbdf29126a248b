"""Generate the bundled synthetic fixture corpus.

Writes fixtures/corpus.jsonl (1,000 reports across 120 incidents, ingest
format) and fixtures/taxonomies.jsonl (two namespaces plus classifications).
Fully deterministic: a fixed seed drives every choice, so regeneration is
byte-identical. Incident 3 always holds exactly 18 reports, and incident 7's
first report keeps a fixed title/body that the resolution tests build their
near-duplicate draft from.

Usage: python3 tools/make_fixture.py
"""

from __future__ import annotations

import json
import random
from datetime import date, timedelta
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"

SEED = 20201101
N_REPORTS = 1000
N_INCIDENTS = 120
INCIDENT3_SIZE = 18

SOURCES = [
    "The Metro Herald", "TechWire", "Daily Circuit", "The Morning Ledger",
    "Signal Post", "The Spectrum Times", "Digital Frontier News",
    "The Civic Observer", "Machine Age Review", "The Coastal Gazette",
    "Urban Pulse", "The Policy Brief", "Future Desk", "The Evening Dispatch",
    "Gridline News", "The Open Register", "Synthetic Weekly",
    "The Harbor Tribune", "Northside Chronicle", "The Analog Era",
    "Crosswind City News", "The Plainfield Record", "Systemic Report",
    "The Interchange",
]

FIRST_NAMES = [
    "Avery", "Blake", "Carmen", "Dana", "Elliot", "Frankie", "Gale", "Harper",
    "Imani", "Jordan", "Kendall", "Lane", "Marlow", "Noor", "Oakley", "Parker",
    "Quinn", "Reese", "Sasha", "Tatum", "Uma", "Vic", "Wren", "Xiomara",
    "Yael", "Zion", "Adrian", "Bellamy", "Corey", "Devon",
]

LAST_NAMES = [
    "Abbott", "Barnes", "Calloway", "Delgado", "Ember", "Fontaine", "Graves",
    "Holloway", "Ibarra", "Jennings", "Katz", "Lindqvist", "Moreau", "Nakamura",
    "Okafor", "Petrov", "Quintana", "Rask", "Sorensen", "Tran", "Ueda",
    "Vance", "Whitfield", "Xu", "Yilmaz", "Zamora",
]

SUBMITTERS = [
    "Rina Volkov", "Theo Marsh", "Priya Anand", "Cole Brennan", "Mai Linh",
    "Jonas Eckert", "Farah Osei", "Liam Doyle", "Sana Qureshi", "Erik Halvorsen",
    "Nadia Petrossian", "Omar Haddad", "Greta Lindholm", "Victor Chen",
    "Aisha Bello", "Ruben Castillo", "Ilse Brandt", "Tomas Rojas",
]

# (theme slug, headline noun phrase, keyword pool, industry tag, fairness tags)
THEMES = [
    ("facial-recognition", "facial recognition system",
     ["facial", "recognition", "camera", "surveillance", "misidentified",
      "biometric", "watchlist", "airport", "false", "match"],
     "LawEnforcement", ["Surveillance", "Privacy"]),
    ("self-driving-car", "self-driving car",
     ["autonomous", "vehicle", "driving", "pedestrian", "braking", "collision",
      "highway", "sensor", "lane", "crosswalk"],
     "Transportation", []),
    ("machine-translation", "translation feature",
     ["translation", "translate", "language", "mistranslated", "phrase",
      "caption", "post", "greeting", "slang", "idiom"],
     "SocialMedia", ["Bias"]),
    ("hiring-screen", "resume screening model",
     ["hiring", "resume", "recruiting", "candidates", "screening", "gender",
      "ranked", "applications", "interview", "qualified"],
     "Finance", ["Bias", "Discrimination"]),
    ("video-recommendation", "video recommendation engine",
     ["recommendation", "videos", "children", "inappropriate", "platform",
      "engagement", "autoplay", "channel", "filter", "flagged"],
     "SocialMedia", ["Transparency"]),
    ("predictive-policing", "predictive policing model",
     ["policing", "predictive", "crime", "neighborhood", "patrol", "arrest",
      "hotspot", "historical", "precinct", "forecast"],
     "LawEnforcement", ["Bias", "Discrimination"]),
    ("medical-triage", "diagnostic triage model",
     ["medical", "diagnosis", "patients", "triage", "hospital", "treatment",
      "symptoms", "nurse", "scan", "referral"],
     "Healthcare", ["Bias"]),
    ("credit-scoring", "credit scoring algorithm",
     ["credit", "loan", "scoring", "applicants", "denied", "bank", "limit",
      "income", "appeal", "statement"],
     "Finance", ["Discrimination", "Transparency"]),
    ("chatbot", "conversational chatbot",
     ["chatbot", "conversation", "offensive", "responses", "users", "messages",
      "prompt", "moderation", "apology", "transcript"],
     "SocialMedia", ["Transparency"]),
    ("deepfake", "synthetic media generator",
     ["deepfake", "synthetic", "video", "impersonation", "fraud", "voice",
      "clone", "celebrity", "scam", "detection"],
     "Media", ["Privacy"]),
    ("delivery-drone", "delivery drone",
     ["drone", "flight", "crash", "navigation", "airspace", "rotor", "landing",
      "package", "operator", "malfunction"],
     "Transportation", []),
    ("warehouse-robot", "warehouse robot",
     ["warehouse", "robot", "worker", "injury", "conveyor", "sorting", "arm",
      "shift", "safety", "cage"],
     "Manufacturing", []),
    ("voice-assistant", "voice assistant",
     ["voice", "assistant", "ordered", "misheard", "command", "speaker",
      "wake", "recording", "household", "playback"],
     "Retail", ["Privacy"]),
    ("exam-proctoring", "exam proctoring software",
     ["proctoring", "exam", "students", "flagged", "cheating", "webcam",
      "gaze", "lighting", "appeal", "university"],
     "Education", ["Bias", "Privacy"]),
    ("traffic-routing", "traffic routing service",
     ["traffic", "routing", "congestion", "detour", "drivers", "closure",
      "bridge", "estimate", "gridlock", "reroute"],
     "Transportation", []),
    ("trading-algorithm", "automated trading system",
     ["trading", "market", "flash", "orders", "selloff", "shares", "halt",
      "volatility", "exchange", "portfolio"],
     "Finance", []),
    ("spam-filter", "spam filtering model",
     ["spam", "filter", "blocked", "emails", "legitimate", "inbox",
      "quarantine", "newsletter", "sender", "threshold"],
     "SocialMedia", ["Transparency"]),
    ("image-tagging", "photo tagging service",
     ["image", "tagging", "labeled", "photos", "offensive", "album", "caption",
      "gallery", "classifier", "apologized"],
     "Media", ["Bias"]),
    ("surge-pricing", "dynamic pricing engine",
     ["pricing", "surge", "algorithm", "customers", "overcharged", "fare",
      "demand", "multiplier", "refund", "storm"],
     "Retail", ["Transparency"]),
    ("fraud-detection", "fraud detection system",
     ["fraud", "detection", "accounts", "frozen", "false", "positives",
      "transactions", "alert", "verification", "lockout"],
     "Finance", ["Transparency"]),
    ("robot-vacuum", "home mapping robot",
     ["vacuum", "robot", "home", "mapping", "privacy", "floorplan", "uploaded",
      "cloud", "consent", "firmware"],
     "Retail", ["Privacy"]),
    ("security-robot", "security patrol robot",
     ["security", "robot", "mall", "fountain", "patrol", "toppled", "child",
      "bystander", "sidewalk", "decommissioned"],
     "Retail", []),
    ("sentencing-risk", "sentencing risk score",
     ["sentencing", "risk", "score", "defendants", "court", "parole",
      "recidivism", "judge", "audit", "disparity"],
     "LawEnforcement", ["Bias", "Discrimination", "Transparency"]),
    ("welfare-automation", "benefits automation system",
     ["welfare", "benefits", "automated", "wrongly", "debt", "notices",
      "recipients", "repayment", "caseworker", "reversal"],
     "Education", ["Discrimination", "Transparency"]),
]

FILLER = [
    "system", "company", "engineers", "officials", "investigation", "audit",
    "dataset", "deployed", "model", "accuracy", "failure", "incident",
    "reported", "according", "spokesperson", "internal", "review", "public",
    "records", "regulators", "affected", "statement", "disclosed", "training",
    "update", "rollback", "vendor", "contract", "oversight", "complaint",
]

VERBS = [
    "failed", "misclassified", "mislabeled", "malfunctioned", "crashed",
    "rejected", "flagged", "denied", "confused", "overlooked", "repeated",
    "escalated", "ignored", "degraded", "misfired",
]

OUTCOMES = [
    "prompting an internal review", "drawing criticism from advocates",
    "forcing a public apology", "leading regulators to open an inquiry",
    "before the feature was rolled back", "until engineers issued a patch",
    "leaving affected users without recourse", "despite earlier warnings",
    "while the vendor disputed the findings", "and the logs were preserved",
]

# Fixed first report for incident 7; resolution tests derive a near-duplicate
# draft from this exact title and body.
PINNED_INCIDENT7_TITLE = "Translation feature turns greeting into call for violence"
PINNED_INCIDENT7_TEXT = (
    "A social platform's automatic translation feature rendered a user's "
    "morning greeting as a violent threat, and local police briefly detained "
    "the account holder for questioning. The company said the translation "
    "model confused a dialect greeting with a rare hostile phrase because the "
    "training corpus contained almost no examples of the dialect. Engineers "
    "disabled the language pair, apologized to the user, and promised an "
    "audit of translation quality across low-resource languages. Observers "
    "noted that the mistranslated post had been visible for hours and that "
    "moderators relied on the same flawed translation when they escalated "
    "the report to the police."
)

TAXONOMIES = [
    {
        "name": "Fairness",
        "owner": "Fairness Research Collective",
        "description": "Fairness, accountability, and privacy harms.",
        "tags": [
            {"name": "Bias", "description": "Systematic skew against a group."},
            {"name": "Privacy", "description": "Exposure of personal data or spaces."},
            {"name": "Surveillance", "description": "Monitoring beyond consent."},
            {"name": "Discrimination", "description": "Disparate treatment or impact."},
            {"name": "Transparency", "description": "Opaque or unexplainable decisions."},
        ],
    },
    {
        "name": "Industry",
        "owner": "Sector Analytics Group",
        "description": "The industry sector where the failure surfaced.",
        "tags": [
            {"name": "Transportation", "description": ""},
            {"name": "Healthcare", "description": ""},
            {"name": "Finance", "description": ""},
            {"name": "Retail", "description": ""},
            {"name": "Education", "description": ""},
            {"name": "SocialMedia", "description": ""},
            {"name": "LawEnforcement", "description": ""},
            {"name": "Manufacturing", "description": ""},
            {"name": "Media", "description": ""},
        ],
    },
]


def incident_sizes(rng: random.Random) -> list[int]:
    """Report counts per incident: dense small sizes plus a heavy tail."""
    sizes = [rng.choice([1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 8, 10, 12]) for _ in range(N_INCIDENTS)]
    sizes[2] = INCIDENT3_SIZE  # incident 3
    total = sum(sizes)
    index = 0
    while total != N_REPORTS:
        if index % N_INCIDENTS == 2:  # never resize incident 3
            index += 1
            continue
        position = index % N_INCIDENTS
        if total < N_REPORTS:
            sizes[position] += 1
            total += 1
        elif sizes[position] > 1:
            sizes[position] -= 1
            total -= 1
        index += 1
    return sizes


def sentence(rng: random.Random, keywords: list[str], device: str) -> str:
    pattern = rng.randrange(5)
    kw = lambda: rng.choice(keywords)
    fill = lambda: rng.choice(FILLER)
    verb = rng.choice(VERBS)
    outcome = rng.choice(OUTCOMES)
    if pattern == 0:
        return f"The {device} {verb} when the {kw()} {fill()} processed the {kw()} {fill()}, {outcome}."
    if pattern == 1:
        return f"Witnesses said the {kw()} {fill()} {verb} near the {kw()}, {outcome}."
    if pattern == 2:
        return f"An internal {fill()} found the {kw()} pipeline {verb} on {kw()} data, {outcome}."
    if pattern == 3:
        return f"The company's {kw()} {fill()} {verb} repeatedly, and the {kw()} {fill()} was suspended, {outcome}."
    return f"Records show the {kw()} {fill()} {verb} during the {kw()} rollout, {outcome}."


def report_text(rng: random.Random, keywords: list[str], device: str) -> str:
    paragraphs = []
    for _ in range(3):
        count = rng.randint(4, 6)
        paragraphs.append(" ".join(sentence(rng, keywords, device) for _ in range(count)))
    return "\n\n".join(paragraphs)


def report_title(rng: random.Random, device: str, keywords: list[str]) -> str:
    shape = rng.randrange(4)
    kw = rng.choice(keywords)
    verb = rng.choice(VERBS)
    if shape == 0:
        return f"{device.capitalize()} {verb} after {kw} error"
    if shape == 1:
        return f"How a {device} {verb} and what the {kw} logs revealed"
    if shape == 2:
        return f"{kw.capitalize()} failure: {device} {verb} again"
    return f"Officials probe {device} that {verb} over {kw} complaints"


def slug(text: str, rng: random.Random) -> str:
    words = [w.lower() for w in text.split()[:6] if w.isalnum()]
    return "-".join(words) + f"-{rng.randint(100, 999)}"


def main() -> None:
    rng = random.Random(SEED)
    authors = [f"{f} {l}" for f, l in zip(FIRST_NAMES * 2, LAST_NAMES * 2)][:52]
    sizes = incident_sizes(rng)

    incident_themes = [THEMES[i % len(THEMES)] for i in range(N_INCIDENTS)]
    # Incident 7 (index 6) pins the machine-translation theme for the
    # near-duplicate resolution fixture.
    incident_themes[6] = THEMES[2]
    incident_dates = {}
    base = date(2014, 3, 1)
    for number in range(1, N_INCIDENTS + 1):
        incident_dates[number] = base + timedelta(days=rng.randint(0, 2100))

    lines = []
    report_counter = 0
    for number in range(1, N_INCIDENTS + 1):
        theme_slug, device, keywords, _, _ = incident_themes[number - 1]
        incident_date = incident_dates[number]
        for member in range(sizes[number - 1]):
            report_counter += 1
            source = rng.choice(SOURCES)
            n_authors = rng.choice([1, 1, 1, 2, 2, 3])
            report_authors = sorted(rng.sample(authors, n_authors))
            submitter = rng.choice(SUBMITTERS)
            published = incident_date + timedelta(days=rng.randint(0, 300))
            submitted = date(2020, 6, 1) + timedelta(days=rng.randint(0, 150))
            if number == 7 and member == 0:
                title = PINNED_INCIDENT7_TITLE
                text = PINNED_INCIDENT7_TEXT
            else:
                title = report_title(rng, device, keywords)
                text = report_text(rng, keywords, device)
            domain = source.lower().replace("the ", "").replace(" ", "")
            url = (
                f"https://www.{domain}.example/{published.year}"
                f"/{published.month:02d}/{slug(title, rng)}"
            )
            record = {
                "incidentNumber": number,
                "title": title,
                "text": text,
                "url": url,
                "source": source,
                "authors": report_authors,
                "submitters": [submitter],
                "datePublished": published.isoformat(),
                "dateSubmitted": submitted.isoformat(),
                "incidentDate": incident_date.isoformat() if rng.random() > 0.08 else None,
            }
            lines.append(json.dumps(record, sort_keys=True, ensure_ascii=False))

    FIXTURES.mkdir(exist_ok=True)
    (FIXTURES / "corpus.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")

    taxonomy_lines = []
    for definition in TAXONOMIES:
        doc = dict(definition)
        classifications = []
        for number in range(1, N_INCIDENTS + 1):
            _, _, _, industry_tag, fairness_tags = incident_themes[number - 1]
            if definition["name"] == "Industry":
                if rng.random() < 0.85:
                    classifications.append(
                        {
                            "incidentNumber": number,
                            "tag": industry_tag,
                            "classifier": definition["owner"],
                            "date": (date(2020, 9, 1) + timedelta(days=number % 60)).isoformat(),
                        }
                    )
            else:
                for tag in fairness_tags:
                    if rng.random() < 0.7:
                        classifications.append(
                            {
                                "incidentNumber": number,
                                "tag": tag,
                                "classifier": definition["owner"],
                                "date": (date(2020, 10, 1) + timedelta(days=number % 45)).isoformat(),
                            }
                        )
        doc["classifications"] = classifications
        taxonomy_lines.append(json.dumps(doc, sort_keys=True, ensure_ascii=False))
    (FIXTURES / "taxonomies.jsonl").write_text(
        "\n".join(taxonomy_lines) + "\n", encoding="utf-8"
    )

    total_bytes = sum(len(line.encode()) for line in lines)
    print(
        f"wrote {len(lines)} reports, {sum(sizes)} across {N_INCIDENTS} incidents, "
        f"avg {total_bytes // len(lines)} bytes/report"
    )


if __name__ == "__main__":
    main()
