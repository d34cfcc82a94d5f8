"""Configuration files and report serialization.

Config files are JSON::

    {
      "schema": 1,
      "ambient_dim": 2,
      "projective": false,
      "points": [["0", "0"], ["1", "2/3"]]
    }

With ``"projective": false`` each point lists d affine coordinates; with
``true`` it lists d+1 homogeneous ones. A point may instead be written as
``{"coords": [...], "multiplicity": 3}``; any multiplicity makes the file
load as a MultiPointSet. Rationals are strings ``"a"`` or ``"a/b"`` in
lowest terms with b > 1.
"""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .projective import Flat, MultiPointSet, Point, PointSet, embed_affine

SCHEMA = 1
_RATIONAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text, field=None) -> Fraction:
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}", field=field)
    m = _RATIONAL.match(text.strip())
    if not m:
        raise ParseError(f"malformed rational {text!r}", field=field)
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", field=field)
    q = Fraction(num, den)
    if q.denominator != den or den == 1:
        raise ParseError(f"{text!r} is not in lowest terms", field=field)
    return q


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_point(entry, i: int, d: int, projective: bool):
    field = f"points[{i}]"
    mult = None
    coords = entry
    if isinstance(entry, dict):
        extra = set(entry) - {"coords", "multiplicity"}
        if extra:
            raise ParseError(f"unknown keys {sorted(extra)}", field=field)
        if "coords" not in entry:
            raise ParseError("missing 'coords'", field=field)
        coords = entry["coords"]
        if "multiplicity" in entry:
            mult = entry["multiplicity"]
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise ParseError(f"multiplicity must be a positive integer, got {mult!r}",
                                 field=f"{field}.multiplicity")
    if not isinstance(coords, list):
        raise ParseError("coordinates must be a list", field=field)
    want = d + 1 if projective else d
    if len(coords) != want:
        raise ParseError(f"expected {want} coordinates, got {len(coords)}", field=field)
    vals = [parse_rational(c, f"{field}[{j}]") for j, c in enumerate(coords)]
    if projective:
        if not any(vals):
            raise ParseError("homogeneous coordinates are all zero", field=field)
        return Point(tuple(vals)), mult
    return embed_affine(vals), mult


def parse_config(text: str):
    """Parse config JSON text into a PointSet or MultiPointSet."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object")
    if raw.get("schema", SCHEMA) != SCHEMA:
        raise ParseError(f"unsupported schema {raw.get('schema')!r}", field="schema")
    d = raw.get("ambient_dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ParseError(f"ambient_dim must be a positive integer, got {d!r}", field="ambient_dim")
    projective = raw.get("projective", False)
    if not isinstance(projective, bool):
        raise ParseError("projective must be true or false", field="projective")
    entries = raw.get("points")
    if not isinstance(entries, list):
        raise ParseError("points must be a list", field="points")
    parsed = [_parse_point(e, i, d, projective) for i, e in enumerate(entries)]
    seen: dict[Point, int] = {}
    for i, (p, _) in enumerate(parsed):
        if p in seen:
            raise ParseError(f"duplicate of points[{seen[p]}]", field=f"points[{i}]")
        seen[p] = i
    if any(m is not None for _, m in parsed):
        return MultiPointSet(d, tuple((p, m or 1) for p, m in parsed))
    return PointSet(d, tuple(p for p, _ in parsed))


def load_config(path):
    return parse_config(Path(path).read_text())


def config_to_dict(config) -> dict:
    pts = config.support
    projective = any(p.coords[0] == 0 for p in pts)

    def coords(p):
        c = p.coords if projective else p.coords[1:]
        return [format_rational(x) for x in c]

    if isinstance(config, MultiPointSet):
        points = [{"coords": coords(p), "multiplicity": m} for p, m in config.entries]
    else:
        points = [coords(p) for p in pts]
    return {
        "schema": SCHEMA,
        "ambient_dim": config.ambient_dim,
        "projective": projective,
        "points": points,
    }


def dumps_canonical(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_config(config, path):
    Path(path).write_text(dumps_canonical(config_to_dict(config)))


def jsonable(x):
    """Convert rationals, points and flats into exact JSON-friendly values."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(x, Point):
        return [format_rational(c) for c in x.coords]
    if isinstance(x, Flat):
        return {"dim": x.dim, "basis": [[format_rational(c) for c in r] for r in x.basis]}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        if isinstance(x, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def report_to_csv(report) -> str:
    buf = io.StringIO()
    if report.columns:
        fields, rows = list(report.columns), report.table
    else:
        fields = ["suite", "cases", "failures", "passed"]
        rows = [{"suite": report.suite, "cases": report.cases,
                 "failures": len(report.failures), "passed": report.passed}]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        r = jsonable(r)
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def render_report(report, fmt: str = "json") -> str:
    if fmt == "json":
        return dumps_canonical(report.to_dict())
    if fmt == "csv":
        return report_to_csv(report)
    raise ValueError(f"unknown format {fmt!r}")


def save_report(report, path, fmt: str = "json"):
    Path(path).write_text(render_report(report, fmt))
