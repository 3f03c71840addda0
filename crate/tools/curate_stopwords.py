"""Curate the English geo stop list from `multiex propose-stopwords` output.

    python3 -c "from wordfreq import top_n_list; print('\n'.join(top_n_list('en', 30000)))" > /tmp/freq.en.txt
    multiex propose-stopwords --gazetteer data/gazetteer/world.tsv \
        --frequency-list /tmp/freq.en.txt --top 30000 --out /tmp/proposals.en.txt
    python3 tools/curate_stopwords.py /tmp/proposals.en.txt > data/gazetteer/stopwords.en.txt

A proposal stays on the list when its lowercase form is an ordinary
English word (checked against the Webster's Second word list shipped with
the english-words package, where proper nouns keep their capital), or a
common US census first name or surname (the `names` package). Surfaces
naming a large place (size class 1-3) are kept as places unless listed by
hand below, since the dictionary also holds "berlin" and "boston".
Country names are never stopped, and a short list of well-known places is
protected by hand.
"""

import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

LAST_NAMES = 5000

# Proper nouns that are mostly people, brands or characters, whatever the place size.
PERSON_NAMES = set("""
Victoria Hamilton Lincoln Kennedy Douglas Stanley Toyota Henderson Chandler Aurora Salvador
Brent Santos Madison Charlotte Preston Vladimir Constantine George Mary Warren Tyler Nancy
Norman Jackson Batman Irvine Vaughan Markham Stockton Kira Yao Nada Bello Samba Latina Riverside
Woodlands Rosetta Salem Cali Natal Jos Aba Sari Erode Perm Hue Mesa Pest Oral Male Sale Van
Obama Olympic Metro Alot Kanye Oi Sim Aston Nokia Hercules Carnegie Brits Mandela Plato Bras Hun
Palin Dalai Cicero Kant Naruto Ajax Ans Maga Tata Monsanto Abba Aloha Hola Goto Ito Mori Ono Ico
Ita Tak Osu Sama Mach Wil Gao Sakura Orion Zion Jupiter Atlantis Vulcan Ob Mol Melo Bama Dax
Gallup Pullman Peabody Eastwood Gladstone Balfour Lennox Livingstone Anand Sens Magna Hannibal
""".split())

# Large places whose names are ordinary words at the start of a sentence.
LARGE_STOPPED = set("Reading Sale Male Van Oral".split())

# Well-known places whose names are also English words.
PROTECTED = set("""
Nice Bath Cork York Cambridge Oxford Geneva Aberdeen Dundee Exeter Norwich Basel
Salzburg Lausanne Heidelberg Pisa Parma Lille Toulon Granada Santander Limerick Hebron Jaffa
Westminster Hollywood Harlem Berkeley Syracuse Albany Rochester Richmond Hartford Savannah
Charleston Ipswich Blackpool Portsmouth Sunderland Gloucester Northampton Croydon Harrow
""".split())

# Homographs not in the frequency list but known to misfire.
EXTRA = ["Annan"]


def census_names():
    import names

    base = os.path.dirname(names.__file__)
    out = set()
    for fname, limit in [("dist.male.first", None), ("dist.female.first", None), ("dist.all.last", LAST_NAMES)]:
        with open(os.path.join(base, fname)) as f:
            for i, line in enumerate(f):
                if limit is not None and i >= limit:
                    break
                out.add(line.split()[0].capitalize())
    return out


def main(path):
    from english_words import get_english_words_set

    words = get_english_words_set(["web2"], lower=False)
    people = census_names()
    best = {}
    with open(os.path.join(ROOT, "data", "gazetteer", "world.tsv"), encoding="utf-8") as f:
        for line in f:
            if line.startswith("#"):
                continue
            cols = line.rstrip("\n").split("\t")
            for s in [cols[1]] + [v for v in cols[2].split("|") if v]:
                best[s] = min(best.get(s, 9), int(cols[6]))
    countries = set()
    with open(os.path.join(ROOT, "data", "gazetteer", "triggers.tsv"), encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                countries.add(line.split("\t")[0])
    print("# English geo stop words: place-name homographs ignored in English text.")
    print("# Generated from frequent English words matched against the gazetteer, then curated.")
    print("# surface\tfrequency rank\tword")
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.startswith("#"):
                continue
            surface = line.split("\t")[0]
            if surface in PROTECTED or surface in countries:
                continue
            if surface in PERSON_NAMES or surface in LARGE_STOPPED:
                stop = True
            elif best.get(surface, 9) <= 3:
                stop = False
            else:
                stop = surface.lower() in words or surface in people
            if stop:
                sys.stdout.write(line)
    for s in EXTRA:
        print(f"{s}\t-\t{s.lower()}")


if __name__ == "__main__":
    main(sys.argv[1])
