"""Stable on-disk formats: JSON for points, trees, and instances, SVG out.

Every number crosses the file boundary as a decimal string so arbitrary
precision survives JSON round-trips.  Three spellings are accepted:
plain integers ("42"), rationals ("p/q"), and dyadics ("m/2^e"); writers
pick the spelling that matches the value's role, readers take any.
The SVG rendering is presentational only and is never read back.
"""

import json
import re
from fractions import Fraction

from .dilation import PointSet, Tree
from .exactgeom import Point
from .gadget import (Gadget, IntegerInstance, PartitionInstance, _CirclePair,
                     _LayoutView, _ideal_lengths, _labels, rounding_bits)

_DYADIC = re.compile(r"^(-?\d+)/2\^(\d+)$")
_RATIONAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_dyadic(x, frac_bits: int) -> str:
    x = Fraction(x)
    scaled = x * (1 << frac_bits)
    if scaled.denominator != 1:
        raise ValueError(f"{x} is not dyadic at {frac_bits} bits")
    return f"{scaled.numerator}/2^{frac_bits}"


def parse_number(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"expected a number string, got {s!r}")
    m = _DYADIC.match(s)
    if m:
        return Fraction(int(m.group(1)), 1 << int(m.group(2)))
    m = _RATIONAL.match(s)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2) or 1))
    raise ValueError(f"unreadable number {s!r}")


def _parse_int(s, what) -> int:
    v = parse_number(s)
    if v.denominator != 1:
        raise ValueError(f"{what} must be an integer, got {s!r}")
    return v.numerator


# ---------------------------------------------------------------------------
# points and trees


def points_to_json(ps: PointSet) -> dict:
    out = []
    for i, p in enumerate(ps.points):
        entry = {"label": ps.labels[i]} if ps.labels else {}
        entry["x"] = format_rational(p.x)
        entry["y"] = format_rational(p.y)
        out.append(entry)
    return {"points": out}


def points_from_json(obj) -> PointSet:
    if not isinstance(obj, dict) or "points" not in obj:
        raise ValueError("points file needs a top-level \"points\" list")
    pts, labels = [], []
    for entry in obj["points"]:
        if isinstance(entry, dict):
            pts.append(Point(parse_number(entry["x"]),
                             parse_number(entry["y"])))
            labels.append(entry.get("label"))
        else:
            x, y = entry
            pts.append(Point(parse_number(x), parse_number(y)))
            labels.append(None)
    if any(lab is None for lab in labels):
        return PointSet(pts)
    return PointSet(pts, labels=labels)


def tree_to_json(tree: Tree) -> dict:
    return {"edges": [[u, v] for u, v in tree.edges]}


def tree_from_json(obj, n: int) -> Tree:
    if not isinstance(obj, dict) or "edges" not in obj:
        raise ValueError("tree file needs a top-level \"edges\" list")
    return Tree(n, [tuple(e) for e in obj["edges"]])


# ---------------------------------------------------------------------------
# integerized instances


def instance_to_json(ii: IntegerInstance, alphas_dot) -> dict:
    pts = []
    for i, p in enumerate(ii.points.points):
        pts.append({"label": ii.points.labels[i],
                    "x": str(p.x.numerator), "y": str(p.y.numerator)})
    return {
        "alphas_dot": list(alphas_dot),
        "k": ii.k,
        "P": str(ii.P),
        "Q": str(ii.Q),
        "points": pts,
        "scale": f"1800*2^{ii.k}",
    }


def instance_from_json(obj):
    """Parse and cross-check an instance file.

    Returns (instance, alphas_dot).  The threshold, the precision, and
    the label layout must all agree with the declared weights; geometry
    itself is revalidated later by whoever consumes the points.
    """
    for key in ("alphas_dot", "k", "P", "Q", "points", "scale"):
        if key not in obj:
            raise ValueError(f"instance file is missing \"{key}\"")
    alphas_dot = tuple(int(a) for a in obj["alphas_dot"])
    inst = PartitionInstance(alphas_dot)
    n, sd = inst.n, inst.sigma_dot
    k = int(obj["k"])
    if obj["scale"] != f"1800*2^{k}":
        raise ValueError("scale does not match k")
    if k < rounding_bits(inst):
        raise ValueError("declared k is too small for the weights")
    P, Q = _parse_int(obj["P"], "P"), _parse_int(obj["Q"], "Q")
    if P != 3 * 4 ** (n + 4) * sd + 1 or Q != 2 * 4 ** (n + 4) * sd:
        raise ValueError("threshold does not match the weights")
    entries = obj["points"]
    if len(entries) != 8 * n + 8:
        raise ValueError("wrong number of points for the declared weights")
    pts, labels = [], []
    for entry in entries:
        pts.append(Point(Fraction(_parse_int(entry["x"], "x")),
                         Fraction(_parse_int(entry["y"], "y"))))
        labels.append(entry["label"])
    if tuple(labels) != tuple(_labels(n)):
        raise ValueError("labels deviate from the canonical ordering")
    ii = IntegerInstance(k=k, points=PointSet(pts, labels=labels), P=P, Q=Q,
                         epsilon_bound=Fraction(1, 1 << k))
    return ii, alphas_dot


# ---------------------------------------------------------------------------
# exact gadgets


def gadget_to_json(g: Gadget) -> dict:
    d_lo, d_hi = g.d(1), g.d(g.n)
    mirror_d = {g.mirror(j) for j in range(d_lo, d_hi + 1)}
    pts = []
    for j, p in enumerate(g.points.points):
        if d_lo <= j <= d_hi or j in mirror_d:
            # stored dyadics carry a couple of grid bits beyond d_bits
            e = max(p.x.denominator.bit_length(),
                    p.y.denominator.bit_length()) - 1
            x, y = format_dyadic(p.x, e), format_dyadic(p.y, e)
        else:
            x, y = format_rational(p.x), format_rational(p.y)
        pts.append({"label": g.points.labels[j], "x": x, "y": y})
    return {
        "n": g.n,
        "d_bits": g.d_bits,
        "alphas": [format_rational(a) for a in g.alphas],
        "sigma_total": format_rational(g.sigma_total),
        "xi": format_rational(g.xi),
        "points": pts,
        "d_defs": [{
            "center_c": [format_rational(cp.center_c.x),
                         format_rational(cp.center_c.y)],
            "r1_sq": format_rational(cp.r1_sq),
            "center_a": [format_rational(cp.center_a.x),
                         format_rational(cp.center_a.y)],
            "r2_sq": format_rational(cp.r2_sq),
        } for cp in g.d_defs],
    }


def gadget_from_json(obj) -> Gadget:
    for key in ("n", "d_bits", "alphas", "sigma_total", "xi", "points",
                "d_defs"):
        if key not in obj:
            raise ValueError(f"gadget file is missing \"{key}\"")
    n = int(obj["n"])
    alphas = tuple(parse_number(a) for a in obj["alphas"])
    entries = obj["points"]
    if len(entries) != 8 * n + 8:
        raise ValueError("wrong number of points for the declared n")
    pts, labels = [], []
    for entry in entries:
        pts.append(Point(parse_number(entry["x"]), parse_number(entry["y"])))
        labels.append(entry["label"])
    if tuple(labels) != tuple(_labels(n)):
        raise ValueError("labels deviate from the canonical ordering")
    defs = []
    for spec in obj["d_defs"]:
        defs.append(_CirclePair(
            center_c=Point(parse_number(spec["center_c"][0]),
                           parse_number(spec["center_c"][1])),
            r1_sq=parse_number(spec["r1_sq"]),
            center_a=Point(parse_number(spec["center_a"][0]),
                           parse_number(spec["center_a"][1])),
            r2_sq=parse_number(spec["r2_sq"]),
        ))
    return Gadget(
        n=n,
        alphas=alphas,
        sigma_total=parse_number(obj["sigma_total"]),
        xi=parse_number(obj["xi"]),
        points=PointSet(pts, labels=labels),
        d_defs=tuple(defs),
        d_bits=int(obj["d_bits"]),
        rational_lengths=_ideal_lengths(n, alphas, _LayoutView(n)),
    )


# ---------------------------------------------------------------------------
# path helpers


def dump_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# SVG rendering
#
# Coordinates are projected once through a 6-significant-digit decimal
# format; layout, ordering, and styling are all fixed, so identical
# inputs produce byte-identical files.

_VIEW = 1000.0
_MARGIN = 60.0


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def render_svg(ps: PointSet, tree: Tree | None = None) -> str:
    xs = [float(p.x) for p in ps.points]
    ys = [-float(p.y) for p in ps.points]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    scale = (_VIEW - 2 * _MARGIN) / span

    def proj(i):
        return (_MARGIN + (xs[i] - lo_x) * scale,
                _MARGIN + (ys[i] - lo_y) * scale)

    height = 2 * _MARGIN + (hi_y - lo_y) * scale
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {_fmt(_VIEW)} {_fmt(height)}" '
        f'width="{_fmt(_VIEW)}" height="{_fmt(height)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if tree is not None:
        for u, v in tree.edges:
            (x1, y1), (x2, y2) = proj(u), proj(v)
            lines.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                         f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                         'stroke="black" stroke-width="2"/>')
    for i in range(ps.n):
        x, y = proj(i)
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" '
                     'fill="crimson" stroke="black" stroke-width="1"/>')
    if ps.labels:
        for i in range(ps.n):
            x, y = proj(i)
            lines.append(f'<text x="{_fmt(x + 8)}" y="{_fmt(y - 8)}" '
                         f'font-family="monospace" font-size="16">'
                         f'{ps.labels[i]}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
