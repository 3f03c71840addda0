"""Build data/gazetteer/world.tsv and data/gazetteer/triggers.tsv.

Places come from the GeoNames city list bundled with the `geonamescache`
package (GeoNames data, CC-BY 4.0). A handful of small places that the list
lacks are added by hand with approximate coordinates. Size classes are
derived from population: 1 capital, 2 >= 1M, 3 >= 250k, 4 >= 100k,
5 >= 30k, 6 smaller.

    pip install geonamescache
    python3 tools/make_gazetteer.py
"""

import os
import unicodedata

import geonamescache

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
OUT = os.path.join(ROOT, "data", "gazetteer")

# Local-language names for well-known places, so that e.g. Romanian or
# Italian text is covered alongside English.
LOCAL = {
    ("New York City", "US"): ["New York"],
    ("Rome", "IT"): ["Roma"],
    ("Milan", "IT"): ["Milano"],
    ("Venice", "IT"): ["Venezia"],
    ("Florence", "IT"): ["Firenze"],
    ("Naples", "IT"): ["Napoli"],
    ("Turin", "IT"): ["Torino"],
    ("Genoa", "IT"): ["Genova"],
    ("Munich", "DE"): ["München", "Muenchen"],
    ("Köln", "DE"): ["Cologne", "Koeln"],
    ("Nuremberg", "DE"): ["Nürnberg"],
    ("Vienna", "AT"): ["Wien", "Viena"],
    ("Prague", "CZ"): ["Praha", "Praga"],
    ("Warsaw", "PL"): ["Warszawa", "Varșovia", "Varsovia"],
    ("Kraków", "PL"): ["Cracow", "Krakow", "Cracovia"],
    ("Bucharest", "RO"): ["București", "Bucureşti", "Bucuresti"],
    ("Iaşi", "RO"): ["Iași", "Iasi"],
    ("Timişoara", "RO"): ["Timișoara", "Timisoara"],
    ("Constanţa", "RO"): ["Constanța", "Constanta"],
    ("Moscow", "RU"): ["Moskva", "Moscova"],
    ("Saint Petersburg", "RU"): ["Sankt-Peterburg", "St. Petersburg", "Leningrad"],
    ("Lisbon", "PT"): ["Lisboa", "Lisabona"],
    ("Brussels", "BE"): ["Bruxelles", "Brussel"],
    ("The Hague", "NL"): ["Den Haag"],
    ("Athens", "GR"): ["Athina", "Atena"],
    ("Belgrade", "RS"): ["Beograd", "Belgrad"],
    ("Kyiv", "UA"): ["Kiev", "Kiew"],
    ("Copenhagen", "DK"): ["København"],
    ("Geneva", "CH"): ["Genève", "Geneve", "Genf"],
    ("Chisinau", "MD"): ["Chișinău", "Chişinău", "Chisinau"],
    ("Sevilla", "ES"): ["Seville"],
    ("Beijing", "CN"): ["Peking"],
}

# (id, name, variants, country, lat, lon, size class). Coordinates are
# approximate.
EXTRA = [
    (900000001, "Rethondes", [], "FR", 49.42, 2.94, 6),
    (900000002, "And", [], "IR", 27.98, 57.37, 6),
    (900000003, "Annan", [], "GB", 54.99, -3.26, 6),
    (900000004, "Roma", [], "RO", 47.83, 26.60, 6),
    (900000005, "Stara Reka", [], "BG", 42.90, 26.10, 6),
    (900000006, "Stará Turá", ["Stara Tura"], "SK", 48.78, 17.70, 6),
    (900000007, "Stara Wrona", [], "PL", 52.43, 20.83, 6),
    (900000010, "Paris", [], "US", 36.30, -88.33, 6),   # Tennessee
    (900000011, "Paris", [], "US", 38.21, -84.25, 6),   # Kentucky
    (900000012, "Paris", [], "US", 39.61, -87.70, 6),   # Illinois
    (900000013, "Paris", [], "US", 44.26, -70.50, 6),   # Maine
    (900000014, "Paris", [], "US", 39.48, -92.00, 6),   # Missouri
    (900000015, "Paris", [], "US", 35.29, -93.73, 6),   # Arkansas
    (900000016, "Paris", [], "US", 42.23, -111.40, 6),  # Idaho
    (900000017, "Paris", [], "CA", 43.19, -80.38, 6),   # Ontario
    (900000018, "Paris", [], "KI", 1.93, -157.48, 6),
    (900000019, "Paris", [], "US", 42.98, -75.27, 6),   # New York
    (900000020, "Paris", [], "US", 39.00, -77.95, 6),   # Virginia
    (900000021, "Paris", [], "US", 43.78, -85.50, 6),   # Michigan
    (900000022, "Paris", [], "US", 44.03, -93.15, 6),   # Minnesota (township)
    (900000030, "Strasbourg", ["Strassburg"], "FR", 48.58, 7.75, 4),
]


# Country names beyond the GeoNames English names: short forms and
# Romanian forms, including the inflected genitive/dative.
COUNTRY_ALIASES = {
    "US": ["United States of America", "America", "USA", "US", "U.S.", "U.S.A.", "Statele Unite", "Statele Unite ale Americii", "SUA"],
    "GB": ["Britain", "Great Britain", "UK", "U.K.", "Marea Britanie", "Marii Britanii"],
    "NL": ["Netherlands", "Holland", "Olanda", "Olandei"],
    "CZ": ["Czech Republic", "Cehia", "Cehiei"],
    "MK": ["Macedonia"],
    "MM": ["Burma"],
    "CI": ["Côte d'Ivoire"],
    "CD": ["Congo"],
    "AE": ["UAE"],
    "PS": ["Palestine"],
    "TL": ["East Timor", "Timor-Leste"],
    "VA": ["Vatican City", "Holy See"],
    "FR": ["Franța", "Franţa", "Franta", "Franței", "Franţei", "Frantei"],
    "DE": ["Germania", "Germaniei"],
    "IT": ["Italia", "Italiei"],
    "ES": ["Spania", "Spaniei"],
    "RO": ["România", "Romania", "României", "Romaniei"],
    "RU": ["Rusia", "Rusiei", "Russian Federation"],
    "HU": ["Ungaria", "Ungariei"],
    "BG": ["Bulgariei"],
    "PL": ["Polonia", "Poloniei"],
    "AT": ["Austriei"],
    "GR": ["Grecia", "Greciei"],
    "TR": ["Turcia", "Turciei", "Türkiye"],
    "BE": ["Belgia", "Belgiei"],
    "CH": ["Elveția", "Elveţia", "Elvetia", "Elveției", "Elveţiei", "Elvetiei"],
    "MD": ["Republica Moldova"],
    "UA": ["Ucraina", "Ucrainei"],
    "RS": ["Serbiei"],
    "HR": ["Croația", "Croaţia", "Croatia", "Croației", "Croatiei"],
    "SE": ["Suedia", "Suediei"],
    "JP": ["Japonia", "Japoniei"],
    "CN": ["Chinei"],
    "IQ": ["Irak", "Irakului"],
}

DEMONYMS = {
    "AF": "Afghan Afghans", "AL": "Albanian Albanians", "DZ": "Algerian Algerians",
    "AR": "Argentine Argentinian Argentinians", "AM": "Armenian Armenians",
    "AU": "Australian Australians", "AT": "Austrian Austrians", "AZ": "Azerbaijani Azerbaijanis",
    "BD": "Bangladeshi Bangladeshis", "BY": "Belarusian Belarusians", "BE": "Belgian Belgians",
    "BA": "Bosnian Bosnians", "BR": "Brazilian Brazilians", "BG": "Bulgarian Bulgarians",
    "KH": "Cambodian Cambodians", "CA": "Canadian Canadians", "CL": "Chilean Chileans",
    "CN": "Chinese", "CO": "Colombian Colombians", "HR": "Croatian Croatians Croat Croats",
    "CU": "Cuban Cubans", "CY": "Cypriot Cypriots", "CZ": "Czech Czechs", "DK": "Danish Dane Danes",
    "NL": "Dutch", "EG": "Egyptian Egyptians", "EE": "Estonian Estonians",
    "ET": "Ethiopian Ethiopians", "FI": "Finnish Finn Finns", "FR": "French Frenchman Frenchmen",
    "GE": "Georgian Georgians", "DE": "German Germans", "GH": "Ghanaian Ghanaians",
    "GR": "Greek Greeks", "HU": "Hungarian Hungarians", "IS": "Icelandic Icelander Icelanders",
    "IN": "Indian Indians", "ID": "Indonesian Indonesians", "IR": "Iranian Iranians",
    "IQ": "Iraqi Iraqis", "IE": "Irish", "IL": "Israeli Israelis", "IT": "Italian Italians",
    "JP": "Japanese", "JO": "Jordanian Jordanians", "KZ": "Kazakh Kazakhs Kazakhstani",
    "KE": "Kenyan Kenyans", "XK": "Kosovar Kosovars", "KW": "Kuwaiti Kuwaitis",
    "LV": "Latvian Latvians", "LB": "Lebanese", "LY": "Libyan Libyans",
    "LT": "Lithuanian Lithuanians", "MK": "Macedonian Macedonians", "MY": "Malaysian Malaysians",
    "MT": "Maltese", "MX": "Mexican Mexicans", "MD": "Moldovan Moldovans",
    "ME": "Montenegrin Montenegrins", "MA": "Moroccan Moroccans", "NZ": "Zealander Zealanders",
    "NG": "Nigerian Nigerians", "NO": "Norwegian Norwegians", "PK": "Pakistani Pakistanis",
    "PS": "Palestinian Palestinians", "PE": "Peruvian Peruvians", "PH": "Filipino Filipinos Philippine",
    "PL": "Polish Pole Poles", "PT": "Portuguese", "QA": "Qatari Qataris",
    "RO": "Romanian Romanians", "RU": "Russian Russians", "SA": "Saudi Saudis",
    "RS": "Serbian Serbians Serb Serbs", "SK": "Slovak Slovaks Slovakian", "SI": "Slovenian Slovenians Slovene Slovenes",
    "SO": "Somali Somalis", "ES": "Spanish Spaniard Spaniards", "SD": "Sudanese",
    "SE": "Swedish Swede Swedes", "CH": "Swiss", "SY": "Syrian Syrians",
    "TW": "Taiwanese", "TH": "Thai Thais", "TN": "Tunisian Tunisians", "TR": "Turkish Turk Turks",
    "UA": "Ukrainian Ukrainians", "GB": "British Briton Britons", "US": "American Americans",
    "UZ": "Uzbek Uzbeks", "VE": "Venezuelan Venezuelans", "VN": "Vietnamese",
    "YE": "Yemeni Yemenis", "ZW": "Zimbabwean Zimbabweans", "AE": "Emirati Emiratis",
    "KP": "North Korean", "KR": "South Korean",
}

CURRENCIES = {
    "HU": ["forint", "forints"], "PL": ["zloty", "zlotys", "złoty"], "RO": ["leu", "lei"],
    "BG": ["lev", "leva"], "CZ": ["koruna", "Czech crown", "Czech crowns"], "HR": ["kuna", "kunas"],
    "RU": ["rouble", "roubles", "ruble", "rubles"], "UA": ["hryvnia", "hryvnias"],
    "JP": ["yen"], "CN": ["yuan", "renminbi"], "GB": ["sterling", "pound sterling"],
    "CH": ["Swiss franc", "Swiss francs"], "SE": ["Swedish krona", "kronor"],
    "TR": ["Turkish lira"], "IL": ["shekel", "shekels"], "ZA": ["rand"],
    "TH": ["baht"], "MY": ["ringgit"], "ID": ["rupiah"], "NG": ["naira"],
    "US": ["US dollar", "US dollars"], "IN": ["Indian rupee", "rupees"],
}

# Three-letter codes that are English words or common acronyms in capitals.
ISO3_SKIP = {"AND", "ARE", "CAN", "PER", "TON", "COM", "MAR", "BEN", "ARM", "PAN", "LIE", "GIN",
             "MAC", "FIN", "SUR", "BRA", "TUN", "ATA", "ATF", "IOT", "UMI"}


def triggers(countries):
    import pycountry

    rows = {}

    def add(surface, cc, kind):
        if surface in rows:
            return
        rows[surface] = (cc, kind)

    for cc, c in sorted(countries.items()):
        if cc in ("CS", "AN"):
            continue
        add(c["name"], cc, "country_name")
    for cc, names in COUNTRY_ALIASES.items():
        for n in names:
            kind = "iso_code" if n.replace(".", "").isupper() and len(n.replace(".", "")) <= 3 else "country_name"
            add(n, cc, kind)
    for cc, words in DEMONYMS.items():
        # multi-word demonyms are kept whole
        for w in ([words] if words.startswith(("North", "South")) else words.split()):
            add(w, cc, "adjective")
    for cc, names in CURRENCIES.items():
        for n in names:
            add(n, cc, "currency")
    for c in pycountry.countries:
        a3 = c.alpha_3
        if a3 in ISO3_SKIP or c.alpha_2 not in countries or c.alpha_2 in ("CS", "AN"):
            continue
        add(a3, c.alpha_2, "iso_code")
    return rows


def write_triggers(countries):
    rows = triggers(countries)
    with open(os.path.join(OUT, "triggers.tsv"), "w", encoding="utf-8") as f:
        f.write("# surface\tcountry\tkind (iso_code, currency, adjective, country_name)\n")
        for surface, (cc, kind) in sorted(rows.items(), key=lambda r: (r[1][0], r[1][1], r[0])):
            f.write(f"{surface}\t{cc}\t{kind}\n")
    print(len(rows), "triggers")


# Letters that NFKD does not decompose into a base letter plus a mark.
STROKES = str.maketrans({"ł": "l", "Ł": "L", "đ": "d", "Đ": "D", "ø": "o", "Ø": "O", "ħ": "h", "ı": "i"})


def fold(s):
    s = s.translate(STROKES)
    return "".join(c for c in unicodedata.normalize("NFKD", s) if not unicodedata.combining(c))


def size_class(pop, capital):
    if capital:
        return 1
    for limit, cls in ((1_000_000, 2), (250_000, 3), (100_000, 4), (30_000, 5)):
        if pop >= limit:
            return cls
    return 6


def main():
    gc = geonamescache.GeonamesCache()
    cities = gc.get_cities()
    countries = gc.get_countries()

    capitals = {}
    for cc, c in countries.items():
        cap = c.get("capital")
        cands = [v for v in cities.values() if v["countrycode"] == cc and v["name"] == cap]
        if cands:
            capitals[cc] = max(cands, key=lambda v: v["population"])["geonameid"]

    rows = []
    have_names = set()
    for v in sorted(cities.values(), key=lambda v: v["geonameid"]):
        name = v["name"].strip()
        if not name or not name[0].isupper() or "\t" in name or "|" in name:
            continue
        cc = v["countrycode"]
        variants = []
        folded = fold(name)
        if folded != name:
            variants.append(folded)
        for local in LOCAL.get((name, cc), []):
            if local != name and local not in variants:
                variants.append(local)
        cls = size_class(v["population"], capitals.get(cc) == v["geonameid"])
        rows.append((v["geonameid"], name, variants, cc, v["latitude"], v["longitude"], cls))
        have_names.add((name, cc))
    for rec in EXTRA:
        if (rec[1], rec[3]) in have_names and rec[1] not in ("Paris", "Roma"):
            continue
        rows.append(rec)

    os.makedirs(OUT, exist_ok=True)
    with open(os.path.join(OUT, "world.tsv"), "w", encoding="utf-8") as f:
        f.write("# GeoNames cities (CC-BY 4.0, via geonamescache) plus hand-added small places\n")
        f.write("# id\tname\tvariants\tcountry\tlat\tlon\tsize_class\n")
        for id_, name, variants, cc, lat, lon, cls in rows:
            f.write(f"{id_}\t{name}\t{'|'.join(variants)}\t{cc}\t{lat:.4f}\t{lon:.4f}\t{cls}\n")
    print(len(rows), "places")
    write_triggers(countries)


if __name__ == "__main__":
    main()
