"""Regenerate the frozen stemmer conformance vectors.

Builds a deterministic vocabulary (curated forms, root x suffix grid, seeded
pseudo-words), stems it with the reference JavaScript implementation
(npm package `snowball-stemmers`, generated from the canonical algorithm
definition), and writes the pair of files the conformance test reads:

    tests/data/porter2/vocabulary.txt
    tests/data/porter2/stems.txt

Requires node and `npm install snowball-stemmers` somewhere NODE_PATH can
see. The repo ships the frozen output, so this only needs to run when the
vocabulary changes.

Usage: python3 tools/make_stemmer_reference.py [--node-modules DIR]
"""

from __future__ import annotations

import argparse
import itertools
import random
import subprocess
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
OUT_DIR = REPO / "tests" / "data" / "porter2"

_ORACLE_JS = """
const { newStemmer } = require('snowball-stemmers');
const s = newStemmer('english');
const chunks = [];
process.stdin.on('data', c => chunks.push(c));
process.stdin.on('end', () => {
  const words = Buffer.concat(chunks).toString('utf8').split('\\n');
  process.stdout.write(words.map(w => w.length ? s.stem(w) : '').join('\\n'));
});
"""

CURATED = """
skis skies dying lying tying idly gently ugly early only singly sky news howe
atlas cosmos bias andes inning outing canning herring earring proceed exceed
succeed policing recommended recognition generously generate generic general
communication communal community commune communed communing arsenic arsenal
fluently agreement element cease hope hoping hopped hopping toy toying toyed
crying cried cries ties tied tie die dies lies bed red speed feed agreed freed
misses miss mass gas gaps kiwis this us bus apparatus virus fuss abyss
burn's burns' o'clock by my fly sly dry pry awry defy rely deny envy very happy
happily happiness unhappiness geology logic logical illogical analogy catalog
vision division revision decision collision explosion conclusion national
international rational operational conditional traditional optional agency
decency frequency emergency efficiency organizer organization realization
civilization creation formation information creator operator generator
capitalism nationalism radically magically usefulness carefulness hopefulness
generously graciously previously obviously seriousness consciousness
effectiveness attractiveness forgiveness sensitivity activity productivity
ability responsibility possibility stability possibly probably terribly
beautifully carefully hopefully endlessly harmlessly effortlessly quickly
easily badly oddly emotional promotional realize socialize communicate
duplicate indicate electricity simplicity electrical identical practical
beautiful careful useful darkness kindness sadness informative talkative
creative decorative arrival approval refusal allowance resistance acceptance
difference preference reference writer singer builder historic scientific
comfortable acceptable possible terrible assistant important advertisement
management arrangement government development equipment different confident
criticism optimism activate candidate dangerous famous nervous active massive
organize recognize action union opinion station motion nation fusion mission
tension pension controlled controlling control roll rolling rolled enroll
skull full fully dull dully running runner runs swimming swimmer beginning
forgetting occurring occurred occurrence preferring preferred transference
travelling travelled skiing skied taxiing taxied canoeing dyeing singeing
ageing eyeing hoeing queueing picnicking picnicked trafficking panicking
mimicking frolicking argument arguments arguing argued argue wolves knives
leaves shelves thieves armies babies cities duties ladies parties pennies
puppies stories studies attorneys journeys valleys days ways boys toys keys
happiest easiest busiest happier easier business men women children feet
analysis analyses basis crisis potatoes tomatoes heroes echoes pianos photos
churches watches matches wishes dishes crashes brushes axes boxes foxes taxes
buzzes quizzes maximize minimize optimize luxuriated luxuriating conspicuous
suites suited fruited quoted voted noted
""".split()

ROOTS = [
    "hop", "hope", "run", "walk", "talk", "jump", "love", "hate", "care", "dare",
    "move", "live", "give", "take", "make", "bake", "fake", "rake", "wake", "lake",
    "fit", "sit", "hit", "bit", "pit", "rot", "dot", "jot", "pot", "cot",
    "plan", "scan", "ban", "can", "man", "tan", "van", "pan",
    "control", "patrol", "enrol", "extol", "install", "recall", "fulfill",
    "nation", "station", "relation", "education", "formation",
    "real", "ideal", "loyal", "royal", "legal", "regal", "local", "vocal", "final",
    "globe", "probe", "robe", "tribe", "bribe", "scribe",
    "create", "relate", "debate", "locate", "rotate", "dictate",
    "happy", "easy", "busy", "lazy", "crazy", "tidy",
    "deny", "defy", "rely", "reply", "supply", "apply", "imply", "comply",
    "conspire", "inspire", "require", "acquire", "retire", "admire",
    "general", "generous", "generation", "communal", "communion", "arsenal",
    "y", "ye", "yes", "yet", "you", "young", "your", "youth",
    "beauty", "duty", "city", "pity", "unity", "purity",
    "abide", "decide", "divide", "provide", "reside",
    "serve", "deserve", "observe", "preserve", "reserve",
    "form", "inform", "reform", "perform", "transform",
    "press", "impress", "express", "depress", "compress", "suppress",
]

SUFFIXES = [
    "", "s", "es", "ies", "ied", "ed", "ing", "ings", "ingly", "edly", "eed", "eedly",
    "er", "ers", "est", "ly", "ily", "ally", "ical", "ically", "ic", "ics",
    "al", "als", "ality", "alities", "aliti", "alism", "alist", "alize", "alized",
    "ation", "ations", "ational", "ator", "ators", "ative", "atives",
    "ance", "ances", "ancy", "ancies", "anci", "ence", "ences", "ency", "encies", "enci",
    "ment", "ments", "ement", "ements", "mental",
    "ness", "nesses", "fulness", "ousness", "iveness",
    "ful", "fully", "fulli", "less", "lessly", "lessli",
    "ous", "ously", "ousli", "ive", "ives", "ivity", "iviti",
    "ize", "izes", "ized", "izing", "izer", "ization", "izations",
    "ion", "ions", "sion", "tion", "tions", "tional",
    "ity", "ities", "iti", "able", "ible", "ably", "ibly", "abli", "bli", "bly",
    "ant", "ants", "ent", "ents", "ism", "isms", "ist", "ists",
    "ate", "ates", "ated", "ating", "y", "ys", "'s", "'s'", "'",
    "icate", "iciti", "ogi", "logi", "li",
]


def build_vocabulary() -> list[str]:
    words = set(CURATED)
    for root in ROOTS:
        for suffix in SUFFIXES:
            words.add(root + suffix)
    rng = random.Random(20201101)
    weighted = "aaaeeeiiooouuybcdfghlmnprstvw" + "abcdefghijklmnopqrstuvwxyz"
    for _ in range(10000):
        n = rng.randint(1, 14)
        word = "".join(rng.choice(weighted) for _ in range(n))
        if rng.random() < 0.08:
            pos = rng.randint(0, len(word))
            word = word[:pos] + "'" + word[pos:]
        words.add(word)
    for _ in range(4000):
        n = rng.randint(2, 8)
        word = "".join(rng.choice("aeioubdglmnprsty") for _ in range(n))
        word += rng.choice(
            ["bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt", "w", "x", "y",
             "ed", "ing", "at", "bl", "iz", "ee", "e", "ll", "l"]
        )
        words.add(word)
    for n in (1, 2, 3):
        for combo in itertools.product("abeilnorsty'", repeat=n):
            words.add("".join(combo))
    return sorted(w for w in words if w)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--node-modules", default=None,
                        help="directory containing node_modules/snowball-stemmers")
    args = parser.parse_args()

    vocabulary = build_vocabulary()
    env = None
    if args.node_modules:
        import os

        env = dict(os.environ, NODE_PATH=str(Path(args.node_modules) / "node_modules"))
    result = subprocess.run(
        ["node", "-e", _ORACLE_JS],
        input="\n".join(vocabulary).encode(),
        capture_output=True,
        check=True,
        env=env,
    )
    stems = result.stdout.decode().split("\n")
    assert len(stems) == len(vocabulary), (len(stems), len(vocabulary))

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    (OUT_DIR / "vocabulary.txt").write_text("\n".join(vocabulary) + "\n", encoding="utf-8")
    (OUT_DIR / "stems.txt").write_text("\n".join(stems) + "\n", encoding="utf-8")
    print(f"wrote {len(vocabulary)} reference vectors to {OUT_DIR}")


if __name__ == "__main__":
    main()
