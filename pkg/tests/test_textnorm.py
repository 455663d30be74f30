import random
import unicodedata

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from urduforensics.errors import EmptyAfterPreprocess
from urduforensics.textnorm import (
    DIACRITICS,
    KEPT_PUNCTUATION,
    RawDocument,
    collapse_whitespace,
    filter_characters,
    normalize_text,
    normalize_unicode,
    preprocess,
    remove_diacritics,
    split_sentences,
    tokenize_words,
)

from helpers import fuzz_text


def test_normalize_unicode_fixed_point_on_composed():
    assert normalize_unicode("اردو") == "اردو"


def test_normalize_unicode_composes_heh_hamza():
    # heh goal + combining hamza (two scalars) -> single U+06C2
    assert normalize_unicode("ۂ") == "ۂ"


def test_normalize_unicode_empty():
    assert normalize_unicode("") == ""


def test_remove_diacritics_deletes_damma():
    assert remove_diacritics("اُردُو") == "اردو"


def test_remove_diacritics_identity_without_diacritics():
    assert remove_diacritics("کتاب") == "کتاب"


def test_remove_diacritics_full_harakat_cluster():
    # scalars: م U+0645, damma, ح, fatha, م, shadda, fatha, د
    assert remove_diacritics("مُحَمَّد") == "محمد"


def test_filter_characters_drops_emoji_keeps_spaces():
    assert filter_characters("اردو 😀 زبان") == "اردو  زبان"


def test_filter_characters_keeps_clean_sentence():
    assert filter_characters("یہ ٹھیک ہے۔") == "یہ ٹھیک ہے۔"


def test_filter_characters_drops_colon_and_percent_keeps_digits():
    assert filter_characters("قیمت: ۵۰٪") == "قیمت ۵۰"


def test_collapse_whitespace_runs_and_newlines():
    assert collapse_whitespace("آپ  کیسے \n ہیں؟") == "آپ کیسے ہیں؟"


def test_collapse_whitespace_all_whitespace():
    assert collapse_whitespace("  ") == ""


def test_collapse_whitespace_tab():
    assert collapse_whitespace("الف\tب") == "الف ب"


def test_preprocess_counts_scalars():
    # Input scalars counted by hand: 6 (with two dammas) + 3 spaces + 4 + 1 + 3 = 17.
    doc = RawDocument(id="d1", text="اُردُو   زبان ہے۔", label="human")
    result = preprocess(doc)
    assert result.text == "اردو زبان ہے۔"
    assert result.original_length == 17
    assert result.normalized_length == 13


def test_preprocess_fixed_point_on_clean_text():
    clean = "یہ کتاب ہے۔"
    doc = RawDocument(id="d2", text=clean, label="human")
    result = preprocess(doc)
    assert result.text == clean
    assert result.original_length == result.normalized_length


def test_preprocess_raises_on_all_filtered():
    with pytest.raises(EmptyAfterPreprocess):
        preprocess(RawDocument(id="d3", text="😀😀", label="ai", generator="gemini"))


def test_tokenize_strips_terminator():
    assert tokenize_words("یہ کتاب ہے۔") == ["یہ", "کتاب", "ہے"]


def test_tokenize_empty():
    assert tokenize_words("") == []


def test_tokenize_drops_punctuation_only_token():
    assert tokenize_words("؟") == []


def test_split_sentences_two_terminated():
    assert len(split_sentences("یہ پہلا جملہ ہے۔ یہ دوسرا ہے۔")) == 2


def test_split_sentences_single():
    assert split_sentences("کیا حال ہے؟") == ["کیا حال ہے؟"]


def test_split_sentences_trailing_unterminated():
    assert split_sentences("الف۔ ب؟ ج") == ["الف۔", "ب؟", "ج"]


def _assert_normalized_invariants(text: str):
    assert not any(ch in DIACRITICS for ch in text)
    assert "  " not in text
    assert text == text.strip()
    for ch in text:
        assert ch == " " or ch in KEPT_PUNCTUATION or ch.isalnum() or unicodedata.category(ch).startswith("L"), repr(ch)


def test_pipeline_idempotent_on_seeded_fuzz():
    rng = random.Random(2024)
    for _ in range(300):
        once = normalize_text(fuzz_text(rng))
        assert normalize_text(once) == once
        if once:
            _assert_normalized_invariants(once)


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=80))
def test_pipeline_idempotent_on_arbitrary_unicode(text):
    once = normalize_text(text)
    assert normalize_text(once) == once
    assert "  " not in once
    assert not any(ch in DIACRITICS for ch in once)


def test_reducing_steps_never_grow():
    rng = random.Random(7)
    for _ in range(200):
        text = fuzz_text(rng)
        composed = normalize_unicode(text)
        assert len(remove_diacritics(composed)) <= len(composed)
        assert len(filter_characters(composed)) <= len(composed)
        assert len(collapse_whitespace(composed)) <= len(composed)


def test_tokenization_reconstruction_consistent():
    rng = random.Random(99)
    for _ in range(100):
        text = normalize_text(fuzz_text(rng))
        tokens = tokenize_words(text)
        assert tokenize_words(" ".join(tokens)) == tokens


def test_sentences_cover_all_non_whitespace():
    rng = random.Random(5)
    for _ in range(100):
        text = normalize_text(fuzz_text(rng))
        if not text:
            continue
        sentences = split_sentences(text)
        assert len(sentences) >= 1
        joined = "".join(sentences)
        for ch in text:
            if not ch.isspace():
                assert ch in joined
