"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random

URDU_LETTERS = "اآبپتٹثجچحخدڈذرڑزژسشصضطظعغفقکگلمنںوہھءیئے"
DIACRITICS = "".join(chr(cp) for cp in range(0x064B, 0x0656)) + "ٰ"
KEPT_PUNCT = "۔،؛؟.,!\"'()-"
WHITESPACE = " \t\n\r "
DISALLOWED = "😀🙂🚀%:;@#$^&*_+=<>[]{}|/~`​‌‍«»؏€"
ASCII_MIX = "abcdefXYZ0123456789"
ARABIC_DIGITS = "۰۱۲۳۴۵۶۷۸۹٠١٢٣٤٥٦٧٨٩"
DECOMPOSED_PAIRS = ["ۂ", "ۓ", "ؤ", "أ"]

_PALETTE = (
    [URDU_LETTERS] * 6
    + [DIACRITICS, KEPT_PUNCT, WHITESPACE, WHITESPACE, DISALLOWED, ASCII_MIX, ARABIC_DIGITS]
)


def fuzz_text(rng: random.Random, max_len: int = 120) -> str:
    """Random Urdu/mixed string exercising every character class."""
    parts = []
    for _ in range(rng.randint(0, max_len)):
        if rng.random() < 0.03:
            parts.append(rng.choice(DECOMPOSED_PAIRS))
        else:
            parts.append(rng.choice(rng.choice(_PALETTE)))
    return "".join(parts)


def urdu_words_text(rng: random.Random, n_words: int, word_len=(1, 12), terminator_every=(4, 9)) -> str:
    """Whitespace-separated pseudo-Urdu words with sentence terminators."""
    words = []
    until_terminator = rng.randint(*terminator_every)
    for i in range(n_words):
        word = "".join(rng.choice(URDU_LETTERS) for _ in range(rng.randint(*word_len)))
        until_terminator -= 1
        if until_terminator == 0 and i < n_words - 1:
            word += rng.choice("۔۔۔؟")
            until_terminator = rng.randint(*terminator_every)
        words.append(word)
    return " ".join(words) + "۔"


# ---------------------------------------------------------------------------
# Independent Mann-Whitney oracle: direct pair counting plus enumeration over
# value assignments. Doubled-U integers keep tie halves exact.
# ---------------------------------------------------------------------------

def oracle_u2(a, b) -> int:
    """Doubled U_a by brute-force pair counting."""
    u2 = 0
    for x in a:
        for y in b:
            if x > y:
                u2 += 2
            elif x == y:
                u2 += 1
    return u2


def oracle_exact_p(a, b) -> float:
    """P(min(U_a, U_b) <= observed) over every assignment of pooled values."""
    pool = list(a) + list(b)
    n, n1 = len(pool), len(a)
    observed = min(oracle_u2(a, b), oracle_u2(b, a))
    hits = total = 0
    for combo in itertools.combinations(range(n), n1):
        selected = set(combo)
        aa = [pool[i] for i in combo]
        bb = [pool[i] for i in range(n) if i not in selected]
        if min(oracle_u2(aa, bb), oracle_u2(bb, aa)) <= observed:
            hits += 1
        total += 1
    return hits / total
