"""Deterministic generator for an SMS-style spam/ham corpus.

Produces a two-class text collection at the same scale and balance as the
classic SMS spam collection (747 spam, 4827 ham) without redistributing it.
Messages have topical structure like real SMS traffic: ham draws from
conversational topics (plans, family, food, ...), spam from campaign types
(prize draws, ringtones, loans, ...), over a shared function-word backbone,
with contractions, digits and punctuation so the preprocessing pipeline has
real work to do.  Output is fully determined by the seed.
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

DEFAULT_N_SPAM = 747
DEFAULT_N_HAM = 4827

_SHARED = (
    "the a to you i is it in of and for on my me at be we do not have are was "
    "will can so but if or this that what when how now get got just know like "
    "good time day today tomorrow night ok yes no please thanks thank love need "
    "want see home back come going still here there one about then later soon "
    "sorry hey hi hello dear right really think well much more very new call "
    "text send phone message morning evening week take tell told say said make "
    "why where who some any all only always never again from with your her his "
    "our their been had has did done go went keep let us them he she they also "
    "too over out up down off old every something nothing everyone people"
).split()

# conversational topics: a message draws most content words from one or two
_HAM_TOPICS = {
    "plans": "meeting lunch dinner plan plans planning cancel cancelled confirm "
             "confirmed schedule busy free meet met visit visiting tonight",
    "family": "mum dad bro sis aunt uncle cousin grandma grandpa sister brother "
              "family kids child children baby wife husband",
    "friends": "friend friends mate buddy gang group chat chatting talking "
               "joking kidding laughing smiling fun funny lol haha hahaha",
    "school": "class lecture exam exams study studying homework test notes "
              "revision library teacher student lesson college university school",
    "work": "work office project report boss job interview salary meeting "
            "deadline shift colleague manager leave",
    "travel": "bus train station airport ticket tickets trip travel holiday "
              "pack packing bag reach reached arrived arriving leave leaving",
    "food": "food eat eating hungry breakfast noon dinner lunch cooking curry "
            "pizza pasta burger sandwich cake chocolate rice chicken fish",
    "drinks": "coffee tea juice water milk bottle glass drink drinks pub",
    "health": "doctor medicine sick fever feel feeling better headache stomach "
              "tooth dentist clinic hospital appointment nurse cough cold flu rest",
    "weather": "rain raining weather cold hot sunny cloudy storm umbrella "
               "jacket winter summer",
    "sport": "game match play playing football cricket tennis swimming gym "
             "team score won win lost practice",
    "media": "movie film tv watching show series music song songs singing "
             "dance dancing book read reading story news paper",
    "shopping": "shop shopping market buy bought sale price cheap expensive "
                "wallet purse money cash spend spent",
    "home": "house flat room door keys open closed kitchen bathroom bedroom "
            "sofa table chair window cleaning washing laundry dishes garden",
    "errands": "pick drop grocery vegetables fruit bread eggs bank post office "
               "letter parcel collect appointment",
    "time": "minutes hour hours weekend sunday monday tuesday wednesday "
            "thursday friday saturday afternoon yesterday early late midnight",
    "feelings": "happy sad tired sleepy excited worried scared angry upset "
                "bored lonely proud miss missing missed crying alright fine okay",
    "smalltalk": "anyway actually exactly obviously suddenly apparently "
                 "honestly seriously basically finally eventually definitely "
                 "probably maybe perhaps cool awesome brilliant lovely nice",
    "romance": "love sweetheart darling babe kiss hug cuddle sweet dream "
               "dreams heart beautiful gorgeous",
    "car": "car bike drive driving driver petrol parking traffic road street "
           "bridge lift",
    "sleep": "sleep sleeping tired bed nap wake woke awake dream night",
    "mystery": "story mystery drama murder police knew wondering aliens "
               "mexicans strange weird",
}

# spam campaign types: each message follows one campaign vocabulary
_SPAM_CAMPAIGNS = {
    "prize": "winner won prize prizes award awarded claim congratulations "
             "congrats guaranteed selected lucky draw entry reward bonus "
             "collect collection code valid",
    "ringtone": "ringtone ringtones tone tones nokia mobile latest polyphonic "
                "charged tariff weekly subscribe subscription unsubscribe "
                "service network operator",
    "competition": "competition contest quiz answer question chance chances "
                   "entry win text txt reply instant cash pounds prize",
    "dating": "dating singles chat adult hot babes meet girls guys live "
              "private anonymous secret admirer flirt contact matched",
    "loan": "loan loans credit debt cash finance approved apply application "
            "rate rates interest guaranteed unsecured",
    "account": "account update verify bank alert security suspended customer "
               "statement balance points identifier confidential action required",
    "phone": "camera handset video unlimited minutes rental latest brand "
             "upgrade free delivery order colour mobile offer",
    "premium": "premium helpline representative operator caller landline box "
               "po stop quote receive received immediately urgent attempt final "
               "notification notice",
    "auction": "auction bid bids deal deals sale discount exclusive limited "
               "expires expiry voucher vouchers shopping spree gift certificate",
    "lottery": "lottery lotto jackpot million thousand pounds dollars euro "
               "millionaire draw numbers winning",
    "website": "click link visit website www com uk net online register "
               "membership join access password unlock activate",
}

# words both classes use, so explanations have contested features
_AMBIGUOUS = "free win cash money offer chance lucky call now urgent help stop".split()

_CONTRACTIONS = (
    "i'm don't it's that's i'll we're you're he's she's isn't aren't doesn't "
    "i've what's i'd won't can't didn't haven't wasn't couldn't"
).split()

_NUMBERS = (
    "2 3 4 5 10 12 15 20 30 50 100 150 200 250 500 750 1000 2000 5000 "
    "16 18 21 25 40 45 60 90 99 7 8 9 11"
).split()

_PHONE_NUMBERS = (
    "08001234567 08707509114 09061701461 08452810075 09064012160 08712300220 "
    "09090900040 08718720201 09050000301 08715705022 09063442151 08712405020 "
    "07732584351 07742676969 07946746291 08452810071 09066364589 08718727870 "
    "09061743806 08000930705 09064019788 08719180248 09035697695 08718738001"
).split()

_END_PUNCT_HAM = ("", ".", ".", "!", "?", "...", "")
_END_PUNCT_SPAM = ("!", "!", "!!", ".", "")

_HAM_TOPIC_NAMES = sorted(_HAM_TOPICS)
_SPAM_CAMPAIGN_NAMES = sorted(_SPAM_CAMPAIGNS)
_HAM_POOLS = {name: _HAM_TOPICS[name].split() for name in _HAM_TOPIC_NAMES}
_SPAM_POOLS = {name: _SPAM_CAMPAIGNS[name].split() for name in _SPAM_CAMPAIGN_NAMES}


def _pick(rng: np.random.Generator, pool) -> str:
    return pool[int(rng.integers(0, len(pool)))]


def _ham_message(rng: np.random.Generator) -> str:
    topics = [_pick(rng, _HAM_TOPIC_NAMES)]
    if rng.random() < 0.3:
        topics.append(_pick(rng, _HAM_TOPIC_NAMES))
    length = int(rng.integers(3, 17))
    words = []
    for _ in range(length):
        roll = rng.random()
        if roll < 0.48:
            words.append(_pick(rng, _HAM_POOLS[_pick(rng, topics)]))
        elif roll < 0.88:
            words.append(_pick(rng, _SHARED))
        elif roll < 0.94:
            words.append(_pick(rng, _CONTRACTIONS))
        elif roll < 0.97:
            words.append(_pick(rng, _AMBIGUOUS))
        else:
            words.append(_pick(rng, _NUMBERS))
    text = _decorate(rng, words, upper_prob=0.0)
    return text + _pick(rng, _END_PUNCT_HAM)


def _spam_message(rng: np.random.Generator) -> str:
    campaign = _SPAM_POOLS[_pick(rng, _SPAM_CAMPAIGN_NAMES)]
    length = int(rng.integers(9, 23))
    words = []
    for _ in range(length):
        roll = rng.random()
        if roll < 0.48:
            words.append(_pick(rng, campaign))
        elif roll < 0.76:
            words.append(_pick(rng, _SHARED))
        elif roll < 0.85:
            words.append(_pick(rng, _AMBIGUOUS))
        elif roll < 0.93:
            words.append(_pick(rng, _NUMBERS))
        elif roll < 0.97:
            words.append(_pick(rng, _PHONE_NUMBERS))
        else:
            words.append(_pick(rng, _CONTRACTIONS))
    if rng.random() < 0.25:
        words.append(_pick(rng, ("10", "20", "50")) + "%")
        words.append("off")
    if rng.random() < 0.1:
        words.append("e-mail")
    text = _decorate(rng, words, upper_prob=0.12)
    return text + _pick(rng, _END_PUNCT_SPAM)


def _decorate(rng: np.random.Generator, words: list[str], upper_prob: float) -> str:
    decorated = []
    for i, word in enumerate(words):
        if upper_prob and rng.random() < upper_prob and word.isalpha():
            word = word.upper()
        elif i == 0 and word[0].isalpha():
            word = word[0].upper() + word[1:]
        if i > 0 and rng.random() < 0.06:
            decorated[-1] = decorated[-1] + ","
        decorated.append(word)
    return " ".join(decorated)


def generate_sms_corpus(
    n_spam: int = DEFAULT_N_SPAM,
    n_ham: int = DEFAULT_N_HAM,
    seed: int = 20,
) -> list[tuple[str, str]]:
    """(label, text) rows, shuffled deterministically; labels 'ham'/'spam'."""
    rng = np.random.default_rng(seed)
    rows = [("ham", _ham_message(rng)) for _ in range(n_ham)]
    rows += [("spam", _spam_message(rng)) for _ in range(n_spam)]
    order = rng.permutation(len(rows))
    return [rows[i] for i in order]


def write_tsv(path: str | Path, rows: list[tuple[str, str]], header: bool = True) -> None:
    lines = []
    if header:
        lines.append("label\ttext")
    lines.extend(f"{label}\t{text}" for label, text in rows)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="Generate a synthetic spam/ham TSV corpus.")
    parser.add_argument("--out", required=True, help="output TSV path")
    parser.add_argument("--n-spam", type=int, default=DEFAULT_N_SPAM)
    parser.add_argument("--n-ham", type=int, default=DEFAULT_N_HAM)
    parser.add_argument("--seed", type=int, default=20)
    args = parser.parse_args(argv)
    write_tsv(args.out, generate_sms_corpus(args.n_spam, args.n_ham, args.seed))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
