"""English (Porter2) stemming algorithm, pure Python.

Input is expected to be lowercase. Output is byte-for-byte identical to the
reference implementation over the bundled conformance vocabulary
(tests/data/porter2/); the conformance test in tests/test_porter2.py asserts
a 100% match.
"""

from __future__ import annotations

from functools import lru_cache

_VOWELS = frozenset("aeiouy")
_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_LI_ENDINGS = frozenset("cdeghkmnrt")

# Whole-word rewrites applied before any step.
_EXCEPTIONS = {
    "skis": "ski",
    "skies": "sky",
    "dying": "die",
    "lying": "lie",
    "tying": "tie",
    "idly": "idl",
    "gently": "gentl",
    "ugly": "ugli",
    "early": "earli",
    "only": "onli",
    "singly": "singl",
    "sky": "sky",
    "news": "news",
    "howe": "howe",
    "atlas": "atlas",
    "cosmos": "cosmos",
    "bias": "bias",
    "andes": "andes",
}

# Whole words left invariant after step 1a.
_EXCEPTIONS_AFTER_1A = frozenset(
    {"inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"}
)

_STEP2_RULES = {
    "tional": "tion",
    "enci": "ence",
    "anci": "ance",
    "abli": "able",
    "entli": "ent",
    "izer": "ize",
    "ization": "ize",
    "ational": "ate",
    "ation": "ate",
    "ator": "ate",
    "alism": "al",
    "aliti": "al",
    "alli": "al",
    "fulness": "ful",
    "ousli": "ous",
    "ousness": "ous",
    "iveness": "ive",
    "iviti": "ive",
    "biliti": "ble",
    "bli": "ble",
    "ogi": "og",
    "fulli": "ful",
    "lessli": "less",
    "li": "",
}

_STEP3_RULES = {
    "tional": "tion",
    "ational": "ate",
    "alize": "al",
    "icate": "ic",
    "iciti": "ic",
    "ical": "ic",
    "ful": "",
    "ness": "",
    "ative": "",
}

_STEP4_SUFFIXES = (
    "ement",
    "ance",
    "ence",
    "able",
    "ible",
    "ment",
    "ant",
    "ent",
    "ism",
    "ate",
    "iti",
    "ous",
    "ive",
    "ize",
    "ion",
    "al",
    "er",
    "ic",
)


def _is_consonant(word: str, i: int) -> bool:
    return word[i] not in _VOWELS


def _mark_regions(word: str) -> tuple[int, int]:
    """Return (r1, r2) start indices for the marked word."""
    n = len(word)
    r1 = n
    if word.startswith("commun"):
        r1 = 6
    elif word.startswith(("gener", "arsen")):
        r1 = 5
    else:
        for i in range(1, n):
            if word[i] not in _VOWELS and word[i - 1] in _VOWELS:
                r1 = i + 1
                break
    r2 = n
    for i in range(r1 + 1, n):
        if word[i] not in _VOWELS and word[i - 1] in _VOWELS:
            r2 = i + 1
            break
    return r1, r2


def _mark_consonant_ys(word: str) -> str:
    chars = list(word)
    for i, ch in enumerate(chars):
        if ch == "y" and (i == 0 or chars[i - 1] in _VOWELS):
            chars[i] = "Y"
    return "".join(chars)


def _ends_short_syllable(word: str) -> bool:
    n = len(word)
    if n == 2:
        return word[0] in _VOWELS and word[1] not in _VOWELS
    if n >= 3:
        a, b, c = word[-3], word[-2], word[-1]
        return b in _VOWELS and c not in _VOWELS and c not in "wxY" and a not in _VOWELS
    return False


def _longest_suffix(word: str, suffixes) -> str | None:
    best = None
    for s in suffixes:
        if word.endswith(s) and (best is None or len(s) > len(best)):
            best = s
    return best


def _contains_vowel(part: str) -> bool:
    return any(ch in _VOWELS for ch in part)


def _step_0(word: str) -> str:
    suffix = _longest_suffix(word, ("'s'", "'s", "'"))
    if suffix:
        word = word[: -len(suffix)]
    return word


def _step_1a(word: str) -> str:
    suffix = _longest_suffix(word, ("sses", "ied", "ies", "us", "ss", "s"))
    if suffix == "sses":
        return word[:-2]
    if suffix in ("ied", "ies"):
        return word[:-2] if len(word) > len(suffix) + 1 else word[:-1]
    if suffix == "s":
        # Delete only when some vowel precedes the position just before the s.
        if _contains_vowel(word[:-2]):
            return word[:-1]
        return word
    return word


def _step_1b(word: str, r1: int) -> str:
    suffix = _longest_suffix(word, ("eedly", "ingly", "edly", "eed", "ing", "ed"))
    if suffix is None:
        return word
    if suffix in ("eed", "eedly"):
        if len(word) - len(suffix) >= r1:
            return word[: -len(suffix)] + "ee"
        return word
    # ed / edly / ing / ingly
    stem = word[: -len(suffix)]
    if not _contains_vowel(stem):
        return word
    word = stem
    if word.endswith(("at", "bl", "iz")):
        return word + "e"
    if word.endswith(_DOUBLES):
        return word[:-1]
    if r1 >= len(word) and _ends_short_syllable(word):
        return word + "e"
    return word


def _step_1c(word: str) -> str:
    if len(word) > 2 and word[-1] in "yY" and word[-2] not in _VOWELS:
        return word[:-1] + "i"
    return word


def _step_2(word: str, r1: int) -> str:
    suffix = _longest_suffix(word, _STEP2_RULES)
    if suffix is None or len(word) - len(suffix) < r1:
        return word
    if suffix == "ogi":
        if word.endswith("logi"):
            return word[:-1]
        return word
    if suffix == "li":
        if len(word) > 2 and word[-3] in _LI_ENDINGS:
            return word[:-2]
        return word
    return word[: -len(suffix)] + _STEP2_RULES[suffix]


def _step_3(word: str, r1: int, r2: int) -> str:
    suffix = _longest_suffix(word, _STEP3_RULES)
    if suffix is None or len(word) - len(suffix) < r1:
        return word
    if suffix == "ative":
        if len(word) - len(suffix) >= r2:
            return word[:-5]
        return word
    return word[: -len(suffix)] + _STEP3_RULES[suffix]


def _step_4(word: str, r2: int) -> str:
    suffix = _longest_suffix(word, _STEP4_SUFFIXES)
    if suffix is None or len(word) - len(suffix) < r2:
        return word
    if suffix == "ion":
        if len(word) > 3 and word[-4] in "st":
            return word[:-3]
        return word
    return word[: -len(suffix)]


def _step_5(word: str, r1: int, r2: int) -> str:
    if word.endswith("e"):
        if len(word) - 1 >= r2:
            return word[:-1]
        if len(word) - 1 >= r1 and not _ends_short_syllable(word[:-1]):
            return word[:-1]
        return word
    if word.endswith("l") and len(word) - 1 >= r2 and len(word) > 1 and word[-2] == "l":
        return word[:-1]
    return word


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    """Stem one lowercase word."""
    exception = _EXCEPTIONS.get(word)
    if exception is not None:
        return exception
    if len(word) < 3:
        return word
    if word.startswith("'"):
        word = word[1:]
    word = _mark_consonant_ys(word)
    r1, r2 = _mark_regions(word)
    word = _step_0(word)
    word = _step_1a(word)
    if word in _EXCEPTIONS_AFTER_1A:
        return word
    word = _step_1b(word, r1)
    word = _step_1c(word)
    word = _step_2(word, r1)
    word = _step_3(word, r1, r2)
    word = _step_4(word, r2)
    word = _step_5(word, r1, r2)
    return word.replace("Y", "y")
