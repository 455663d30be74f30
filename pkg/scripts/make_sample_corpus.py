#!/usr/bin/env python3
"""Generate the bundled 60-document demo corpus (data/sample_corpus.jsonl).

The corpus is synthetic but shaped like the real task: 30 "human" documents
with varied sentence lengths and vocabulary, 30 "ai" documents with uniform
sentences over a narrower vocabulary. Raw texts carry diacritics, stray
whitespace, code-mixed English and the occasional emoji so the preprocess
stage has real work to do. Deterministic: rerunning reproduces the same file.
"""

import json
import random
from pathlib import Path

WORDS = (
    "یہ وہ ہم آپ کتاب زبان پاکستان شہر دن رات پانی سال لوگ کام بات وقت گھر دنیا علم "
    "خبر اخبار حکومت ملک قوم تعلیم بچے استاد مدرسہ محبت دوست خوشی موسم بارش سورج چاند "
    "ستارے درخت پھول رنگ بازار قیمت روپیہ کھانا چائے صبح شام ہفتہ مہینہ سڑک گاڑی سفر "
    "پہاڑ دریا سمندر ہوا آگ زمین آسمان کہانی شاعری ادب تاریخ صحت کھیل میدان فوج امن جنگ "
    "قانون عدالت انصاف ووٹ الیکشن جماعت رہنما عوام مزدور کسان فصل گندم چاول پھل سبزی دودھ "
    "گوشت مچھلی پرندہ جانور شیر بکری گائے اونٹ ریل جہاز کشتی بندرگاہ منڈی دکان گاہک سودا "
    "کرایہ مکان کمرہ دروازہ کھڑکی چھت دیوار باغ گلی محلہ مسجد بازو ہاتھ پاؤں آنکھ کان ناک "
    "سر دل دماغ آواز گیت نغمہ ساز فلم ڈرامہ کردار مصنف شاعر ادیب صحافی ڈاکٹر مریض دوا ہسپتال"
).split()

CONNECTORS = "اور لیکن کیونکہ اگر تو بھی نہیں ایک دو تین بہت کچھ سب کے کی کا میں سے پر کو نے تھا تھے ہیں ہے".split()

AI_VOCAB = (
    "نظام تجزیہ مواد متن ماڈل نتیجہ عمل ترتیب معلومات مرحلہ بنیاد اصول طریقہ کار مقصد "
    "خلاصہ جائزہ تفصیل درجہ معیار ترقی سہولت صارف خدمت منصوبہ"
).split()

DIACRITICS = ["َ", "ُ", "ِ", "ّ"]
ENGLISH_MIX = ["internet", "mobile", "computer", "TV", "online", "2024"]
SOURCES_HUMAN = ["urdu-literature", "bbc-urdu", "urdu-wikipedia", "daily-news"]
DOMAINS = ["news", "literature", "encyclopedia"]
GENERATORS = ["gpt-4o-mini", "gemini", "kimi"]


def human_sentence(rng):
    length = rng.choice([2, 3, 4, 5, 6, 8, 10, 13, 16, 19, 22])
    words = []
    for _ in range(length):
        word = rng.choice(WORDS if rng.random() < 0.7 else CONNECTORS)
        if rng.random() < 0.08:  # sprinkle harakat on raw human text
            pos = rng.randrange(1, len(word) + 1)
            word = word[:pos] + rng.choice(DIACRITICS) + word[pos:]
        if rng.random() < 0.03:
            word = rng.choice(ENGLISH_MIX)
        words.append(word)
    return " ".join(words) + rng.choice("۔۔۔۔؟!")


def ai_sentence(rng, vocab):
    length = rng.choice([9, 10, 10, 11])
    words = [rng.choice(vocab if rng.random() < 0.75 else CONNECTORS) for _ in range(length)]
    return " ".join(words) + "۔"


def messy_join(rng, sentences):
    out = []
    for sentence in sentences:
        out.append(sentence)
        roll = rng.random()
        if roll < 0.12:
            out.append("\n\n")
        elif roll < 0.22:
            out.append("  ")
        else:
            out.append(" ")
    text = "".join(out).rstrip()
    if rng.random() < 0.15:
        text += " 😀"
    return text


def main():
    rng = random.Random(20254)
    rows = []
    for i in range(30):
        n_sentences = rng.randint(4, 26)
        text = messy_join(rng, [human_sentence(rng) for _ in range(n_sentences)])
        rows.append(
            {
                "id": f"hum-{i:03d}",
                "text": text,
                "label": "human",
                "generator": None,
                "source": rng.choice(SOURCES_HUMAN),
                "domain": rng.choice(DOMAINS),
            }
        )
    for i in range(30):
        vocab = rng.sample(AI_VOCAB, 12)
        n_sentences = rng.randint(4, 22)
        text = messy_join(rng, [ai_sentence(rng, vocab) for _ in range(n_sentences)])
        rows.append(
            {
                "id": f"ai-{i:03d}",
                "text": text,
                "label": "ai",
                "generator": rng.choice(GENERATORS),
                "source": "rephrased",
                "domain": rng.choice(DOMAINS),
            }
        )
    out = Path(__file__).resolve().parent.parent / "data" / "sample_corpus.jsonl"
    out.parent.mkdir(exist_ok=True)
    with open(out, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, ensure_ascii=False) + "\n")
    lengths = [len(r["text"]) for r in rows]
    print(f"wrote {len(rows)} documents to {out} (chars: min {min(lengths)}, max {max(lengths)})")


if __name__ == "__main__":
    main()
