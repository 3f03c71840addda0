"""Convert the Natural Earth 1:110m country shapes (public domain) into the
outline TSV read by the map renderer.

    python3 tools/make_outline.py naturalearth_lowres.shp data/outline/world.tsv

Requires pyshp and pycountry. Countries with more than 500 vertices are
thinned by keeping every k-th vertex of each ring.
"""
import sys

import pycountry
import shapefile

MAX_VERTICES = 500
BY_NAME = {"France": "FR", "Norway": "NO", "Kosovo": "XK"}


def alpha2(name, iso3):
    if name in BY_NAME:
        return BY_NAME[name]
    c = pycountry.countries.get(alpha_3=iso3)
    return c.alpha_2 if c else None


def rings(shape):
    parts = list(shape.parts) + [len(shape.points)]
    for a, b in zip(parts, parts[1:]):
        ring = shape.points[a:b]
        if len(ring) > 1 and ring[0] == ring[-1]:
            ring = ring[:-1]
        yield ring


def main():
    src, dest = sys.argv[1], sys.argv[2]
    reader = shapefile.Reader(src)
    rows = []
    for shape, rec in zip(reader.shapes(), reader.records()):
        code = alpha2(rec["name"], rec["iso_a3"])
        if code is None:
            continue
        rs = [r for r in rings(shape) if len(r) >= 3]
        total = sum(len(r) for r in rs)
        step = 1
        while sum(max(3, len(r[::step])) for r in rs) > MAX_VERTICES:
            step += 1
        for i, r in enumerate(rs):
            pts = r[::step] if len(r[::step]) >= 3 else r[:3]
            coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
            rows.append((code, i, coords))
    rows.sort(key=lambda t: (t[0], t[1]))
    with open(dest, "w", encoding="utf-8") as f:
        f.write("# Natural Earth 1:110m admin-0 countries (public domain), simplified\n")
        f.write("# country\tpolygon_index\tlon,lat lon,lat ...\n")
        for code, i, coords in rows:
            f.write(f"{code}\t{i}\t{coords}\n")


if __name__ == "__main__":
    main()
