"""English suffix-stripping stemmer.

Implements the snowball English stemming rules: fixed R1/R2 regions, a
longest-match suffix table per step, and the usual short-word / double-
consonant fixups.  Only lowercase input is stemmed; callers are expected
to lowercase first.
"""

from __future__ import annotations

_VOWELS = set("aeiouy")
_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_LI_ENDINGS = set("cdeghkmnrt")
_P1_PREFIXES = ("gener", "commun", "arsen")

# whole-word rewrites applied before any rule
_SPECIAL = {
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

# left invariant once step 1a has run
_STOP_AFTER_1A = frozenset(
    {"inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"}
)

_STEP2_RULES = (
    ("ization", "ize"),
    ("ational", "ate"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("iveness", "ive"),
    ("tional", "tion"),
    ("biliti", "ble"),
    ("lessli", "less"),
    ("entli", "ent"),
    ("ation", "ate"),
    ("alism", "al"),
    ("aliti", "al"),
    ("ousli", "ous"),
    ("iviti", "ive"),
    ("fulli", "ful"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("abli", "able"),
    ("izer", "ize"),
    ("ator", "ate"),
    ("alli", "al"),
    ("bli", "ble"),
    ("ogi", "og"),
    ("li", ""),
)

_STEP3_RULES = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("alize", "al"),
    ("icate", "ic"),
    ("iciti", "ic"),
    ("ative", ""),
    ("ical", "ic"),
    ("ness", ""),
    ("ful", ""),
)

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


def _is_vowel(ch: str) -> bool:
    return ch in _VOWELS


def _mark_ys(word: str) -> str:
    # y at the start of the word, or following a vowel, acts as a consonant
    chars = list(word)
    if chars[0] == "y":
        chars[0] = "Y"
    for i in range(1, len(chars)):
        if chars[i] == "y" and chars[i - 1] in _VOWELS:
            chars[i] = "Y"
    return "".join(chars)


def _region_after(word: str, start: int) -> int:
    """Index just past the first non-vowel that follows a vowel, else len(word)."""
    for i in range(start, len(word) - 1):
        if _is_vowel(word[i]) and not _is_vowel(word[i + 1]):
            return i + 2
    return len(word)


def _compute_regions(word: str) -> tuple[int, int]:
    p1 = None
    for prefix in _P1_PREFIXES:
        if word.startswith(prefix):
            p1 = len(prefix)
            break
    if p1 is None:
        p1 = _region_after(word, 0)
    p2 = _region_after(word, p1)
    return p1, p2


def _ends_short_syllable(word: str) -> bool:
    if len(word) == 2:
        return _is_vowel(word[0]) and not _is_vowel(word[1])
    if len(word) >= 3:
        return (
            not _is_vowel(word[-3])
            and _is_vowel(word[-2])
            and not _is_vowel(word[-1])
            and word[-1] not in "wxY"
        )
    return False


def _is_short_word(word: str, p1: int) -> bool:
    return p1 >= len(word) and _ends_short_syllable(word)


def _suffix_in(word: str, suffix: str, region_start: int) -> bool:
    return len(word) - len(suffix) >= region_start


def _step0(word: str) -> str:
    for suffix in ("'s'", "'s", "'"):
        if word.endswith(suffix):
            return word[: -len(suffix)]
    return word


def _step1a(word: str) -> str:
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("ied") or word.endswith("ies"):
        return word[:-3] + ("i" if len(word) > 4 else "ie")
    if word.endswith("us") or word.endswith("ss"):
        return word
    if word.endswith("s"):
        # delete only when a vowel occurs before the penultimate letter
        if any(_is_vowel(ch) for ch in word[:-2]):
            return word[:-1]
    return word


def _step1b(word: str, p1: int) -> str:
    for suffix in ("eedly", "eed"):
        if word.endswith(suffix):
            if _suffix_in(word, suffix, p1):
                return word[: -len(suffix)] + "ee"
            return word
    for suffix in ("ingly", "edly", "ing", "ed"):
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if not any(_is_vowel(ch) for ch in stem):
                return word
            if stem.endswith(("at", "bl", "iz")):
                return stem + "e"
            if stem.endswith(_DOUBLES):
                return stem[:-1]
            if _is_short_word(stem, p1):
                return stem + "e"
            return stem
    return word


def _step1c(word: str) -> str:
    if len(word) >= 3 and word[-1] in "yY" and not _is_vowel(word[-2]):
        return word[:-1] + "i"
    return word


def _step2(word: str, p1: int) -> str:
    for suffix, replacement in _STEP2_RULES:
        if not word.endswith(suffix):
            continue
        if not _suffix_in(word, suffix, p1):
            return word
        stem = word[: -len(suffix)]
        if suffix == "ogi":
            return stem + replacement if stem.endswith("l") else word
        if suffix == "li":
            return stem if stem and stem[-1] in _LI_ENDINGS else word
        return stem + replacement
    return word


def _step3(word: str, p1: int, p2: int) -> str:
    for suffix, replacement in _STEP3_RULES:
        if not word.endswith(suffix):
            continue
        if suffix == "ative":
            if _suffix_in(word, suffix, p2):
                return word[: -len(suffix)]
            return word
        if _suffix_in(word, suffix, p1):
            return word[: -len(suffix)] + replacement
        return word
    return word


def _step4(word: str, p2: int) -> str:
    for suffix in _STEP4_SUFFIXES:
        if not word.endswith(suffix):
            continue
        if not _suffix_in(word, suffix, p2):
            return word
        if suffix == "ion":
            return word[:-3] if word[-4] in "st" else word
        return word[: -len(suffix)]
    return word


def _step5(word: str, p1: int, p2: int) -> str:
    if word.endswith("e"):
        if _suffix_in(word, "e", p2):
            return word[:-1]
        if _suffix_in(word, "e", p1) and not _ends_short_syllable(word[:-1]):
            return word[:-1]
        return word
    if word.endswith("l") and _suffix_in(word, "l", p2) and word[-2:] == "ll":
        return word[:-1]
    return word


def stem(word: str) -> str:
    """Stem a single lowercase word."""
    if len(word) <= 2:
        return word
    if word in _SPECIAL:
        return _SPECIAL[word]
    if word.startswith("'"):
        word = word[1:]
        if len(word) <= 2:
            return word
    word = _mark_ys(word)
    p1, p2 = _compute_regions(word)

    word = _step0(word)
    word = _step1a(word)
    if word in _STOP_AFTER_1A:
        return word
    word = _step1b(word, p1)
    word = _step1c(word)
    word = _step2(word, p1)
    word = _step3(word, p1, p2)
    word = _step4(word, p2)
    word = _step5(word, p1, p2)
    return word.replace("Y", "y")


def identity(word: str) -> str:
    """No-op normalizer, selectable in place of stemming."""
    return word
