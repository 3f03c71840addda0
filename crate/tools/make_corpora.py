"""Generate the language-identification training corpora.

Each corpus is pseudo-text sampled from the wordfreq frequency lists
(CC-BY-SA 4.0) with a fixed seed: words drawn by corpus frequency, grouped
into sentences, then encoded in the target charset. Words the charset
cannot represent are skipped.

    python3 tools/make_corpora.py data/corpora
"""
import random
import sys
from pathlib import Path

import wordfreq

PAIRS = [
    ("en", "ISO-8859-1", "latin-1"),
    ("de", "ISO-8859-1", "latin-1"),
    ("fr", "ISO-8859-1", "latin-1"),
    ("it", "ISO-8859-1", "latin-1"),
    ("hu", "ISO-8859-2", "iso8859-2"),
    ("pl", "ISO-8859-2", "iso8859-2"),
    ("cs", "ISO-8859-2", "iso8859-2"),
    ("hu", "UTF-8", "utf-8"),
    ("ro", "UTF-8", "utf-8"),
    ("bg", "ISO-8859-5", "iso8859-5"),
    ("el", "ISO-8859-7", "iso8859-7"),
]
SIZE = 64 * 1024


def corpus(lang, codec, seed):
    rng = random.Random(seed)
    words = []
    weights = []
    for w in wordfreq.top_n_list(lang, 6000):
        if not any(ch.isalpha() for ch in w):
            continue
        try:
            w.encode(codec)
        except UnicodeEncodeError:
            continue
        words.append(w)
        weights.append(wordfreq.word_frequency(w, lang))
    out = bytearray()
    while len(out) < SIZE:
        n = rng.randint(6, 18)
        sent = rng.choices(words, weights, k=n)
        sent[0] = sent[0][:1].upper() + sent[0][1:]
        for i in range(1, n - 1):
            if rng.random() < 0.08:
                sent[i] += ","
        text = " ".join(sent) + rng.choice([". ", ". ", ". ", "? ", ".\n"])
        out += text.encode(codec)
    cut = out.rfind(b" ", 0, SIZE)
    return bytes(out[:cut])


def main():
    dest = Path(sys.argv[1])
    dest.mkdir(parents=True, exist_ok=True)
    for i, (lang, enc, codec) in enumerate(PAIRS):
        data = corpus(lang, codec, 1000 + i)
        (dest / f"{lang}.{enc}.txt").write_bytes(data)


if __name__ == "__main__":
    main()
