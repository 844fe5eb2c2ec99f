"""Command-line front end: instance files, batch commands and SVG figures.

Usage::

    lipsel INSTANCE.json validate
    lipsel INSTANCE.json oracle
    lipsel INSTANCE.json check --lambda 2
    lipsel INSTANCE.json select --method algob [--lambda 2]
    lipsel INSTANCE.json refine --lambdas 1,3
    lipsel INSTANCE.json criteria --family star [--lambda 2]
    lipsel INSTANCE.json plot --out figure.svg

Every command prints a JSON report on stdout (``--report FILE`` also saves
it).  Exit codes: 0 success or acceptance, 1 rejection or infeasibility,
2 malformed input.

Instance files look like::

    {"norm": "linf",
     "points": ["a", "b"],
     "metric": {"type": "matrix", "d": [[0, 1], [1, 0]]},
     "sets": {"a": {"kind": "polygon", "vertices": [[0, 0]]},
              "b": {"kind": "polygon", "vertices": [[2, 0]]}}}

The metric may instead be ``{"type": "coords", "coords": [[x, y], ...],
"induced": "linf" | "l2"}``.  Set kinds are ``polygon`` (``vertices``),
``segment`` (``a``, ``b``), ``box`` (``x``, ``y`` as ``[lo, hi]``),
``interval`` (``lo``, ``hi``) and ``halfplane`` (``n``, ``alpha``, the set
``<a, n> + alpha <= 0``).  In box and interval bounds ``null`` stands for
an infinite bound.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from . import geometry as geo
from . import halfplane as hp
from . import oracle as orc
from . import refinement as ref
from . import selection_1d as s1
from . import selector as sel
from .maps import SetMap, Verdict
from .metric_space import MetricError, PseudoMetric, validate_pseudometric

EXIT_OK, EXIT_REJECT, EXIT_INPUT = 0, 1, 2
SET_KINDS = ("polygon", "segment", "box", "interval", "halfplane")


class InputError(ValueError):
    """Malformed instance; ``where`` is a JSON path or a line/column."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


# --------------------------------------------------------------------------
# JSON with 17 significant digits
# --------------------------------------------------------------------------

def _num(v: float) -> str:
    if not math.isfinite(v):
        return "null"
    if v == int(v) and abs(v) < 1e16:
        return str(int(v)) if v != 0 or math.copysign(1.0, v) > 0 else "-0.0"
    return format(v, ".17g")


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON; floats carry 17 significant digits, non-finite
    floats become ``null``."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool)
               for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


# --------------------------------------------------------------------------
# instances
# --------------------------------------------------------------------------

@dataclass
class Instance:
    doc: dict            # normalised document (floats, None for infinities)
    m: PseudoMetric
    F: SetMap

    @property
    def kind(self) -> str:
        return self.F.kind


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise InputError("expected an object", where)
    if key not in obj:
        raise InputError(f"missing field {key!r}", where)
    return obj[key]


def _real(v, where: str, allow_null: bool = False) -> Optional[float]:
    if v is None and allow_null:
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputError(f"expected a number, got {json.dumps(v)}", where)
    v = float(v)
    if not math.isfinite(v):
        raise InputError("non-finite number", where)
    return v


def _point(v, where: str) -> list:
    if not isinstance(v, list) or len(v) != 2:
        raise InputError("expected a pair [x, y]", where)
    return [_real(v[0], f"{where}[0]"), _real(v[1], f"{where}[1]")]


def _bounds(v, where: str) -> list:
    if not isinstance(v, list) or len(v) != 2:
        raise InputError("expected a pair [lo, hi]", where)
    return [_real(v[0], f"{where}[0]", True), _real(v[1], f"{where}[1]", True)]


def _parse_set(spec, where: str) -> tuple[dict, Any]:
    kind = _field(spec, "kind", where)
    try:
        if kind == "polygon":
            raw = _field(spec, "vertices", where)
            if not isinstance(raw, list) or not raw:
                raise InputError("expected a nonempty vertex list", f"{where}.vertices")
            V = [_point(p, f"{where}.vertices[{i}]") for i, p in enumerate(raw)]
            return {"kind": kind, "vertices": V}, geo.Polygon(V)
        if kind == "segment":
            a = _point(_field(spec, "a", where), f"{where}.a")
            b = _point(_field(spec, "b", where), f"{where}.b")
            return {"kind": kind, "a": a, "b": b}, geo.Segment(a, b)
        if kind == "box":
            bx = _bounds(_field(spec, "x", where), f"{where}.x")
            by = _bounds(_field(spec, "y", where), f"{where}.y")
            I1 = geo.Interval1(-math.inf if bx[0] is None else bx[0], math.inf if bx[1] is None else bx[1])
            I2 = geo.Interval1(-math.inf if by[0] is None else by[0], math.inf if by[1] is None else by[1])
            return {"kind": kind, "x": bx, "y": by}, geo.Box(I1, I2)
        if kind == "interval":
            lo = _real(_field(spec, "lo", where), f"{where}.lo", True)
            hi = _real(_field(spec, "hi", where), f"{where}.hi", True)
            I = geo.Interval1(-math.inf if lo is None else lo, math.inf if hi is None else hi)
            return {"kind": kind, "lo": lo, "hi": hi}, I
        if kind == "halfplane":
            n = _point(_field(spec, "n", where), f"{where}.n")
            al = _real(_field(spec, "alpha", where), f"{where}.alpha")
            return {"kind": kind, "n": n, "alpha": al}, geo.HalfPlane(n, al)
    except geo.GeometryError as exc:
        raise InputError(str(exc), where) from None
    raise InputError(f"unknown set kind {json.dumps(kind)}; expected one of {list(SET_KINDS)}",
                     f"{where}.kind")


def _parse_metric(spec, ids: tuple) -> tuple[dict, PseudoMetric]:
    where = "metric"
    typ = _field(spec, "type", where)
    n = len(ids)
    if typ == "matrix":
        rows = _field(spec, "d", where)
        if not isinstance(rows, list) or len(rows) != n:
            raise InputError(f"expected {n} rows", "metric.d")
        d = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise InputError(f"expected {n} entries", f"metric.d[{i}]")
            d.append([_real(v, f"metric.d[{i}][{j}]") for j, v in enumerate(row)])
        try:
            m = validate_pseudometric(d, ids)
        except MetricError as exc:
            details = "; ".join(f"{kind} at {tuple(ids[i] for i in idx)}"
                                for kind, idx, _ in exc.violations[:5])
            raise InputError(f"{exc} ({details})", "metric.d") from None
        return {"type": "matrix", "d": d}, m
    if typ == "coords":
        raw = _field(spec, "coords", where)
        if not isinstance(raw, list) or len(raw) != n:
            raise InputError(f"expected {n} coordinate pairs", "metric.coords")
        X = [_point(p, f"metric.coords[{i}]") for i, p in enumerate(raw)]
        induced = spec.get("induced", "linf")
        if induced not in ("linf", "l2"):
            raise InputError(f"unknown induced norm {json.dumps(induced)}", "metric.induced")
        return ({"type": "coords", "coords": X, "induced": induced},
                PseudoMetric.from_coords(ids, X, induced))
    raise InputError(f"unknown metric type {json.dumps(typ)}", "metric.type")


def parse_instance(doc: Any) -> Instance:
    """Validate a decoded instance document."""
    if not isinstance(doc, dict):
        raise InputError("instance must be a JSON object")
    norm = _field(doc, "norm", "")
    if norm != "linf":
        raise InputError(f"only the 'linf' norm is supported, got {json.dumps(norm)}", "norm")
    ids = _field(doc, "points", "")
    if not isinstance(ids, list) or not ids:
        raise InputError("expected a nonempty list of point ids", "points")
    for i, x in enumerate(ids):
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise InputError("point ids must be strings or integers", f"points[{i}]")
    if len({str(x) for x in ids}) != len(ids):
        raise InputError("duplicate point ids", "points")
    ids = tuple(ids)
    mdoc, m = _parse_metric(_field(doc, "metric", ""), ids)
    sets = _field(doc, "sets", "")
    if not isinstance(sets, dict):
        raise InputError("expected an object keyed by point id", "sets")
    known = {str(x) for x in ids}
    extra = [k for k in sets if k not in known]
    if extra:
        raise InputError(f"set given for unknown point {extra[0]!r}", f"sets.{extra[0]}")
    sdoc, F = {}, {}
    for x in ids:
        key = str(x)
        if key not in sets:
            raise InputError(f"no set for point {key!r}", "sets")
        sdoc[key], F[x] = _parse_set(sets[key], f"sets.{key}")
    kinds = {s["kind"] for s in sdoc.values()}
    if len(kinds) > 1:
        raise InputError(f"mixed set kinds {sorted(kinds)}", "sets")
    norm_doc = {"norm": "linf", "points": list(ids), "metric": mdoc, "sets": sdoc}
    return Instance(norm_doc, m, SetMap(m, F, kinds.pop()))


def loads(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return parse_instance(doc)


def load(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(obj: Any, path: str) -> None:
    """Write an :class:`Instance` (as its document) or a report."""
    if isinstance(obj, Instance):
        obj = obj.doc
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj) + "\n")


def instance_from_setmap(F: SetMap) -> Instance:
    """Instance document for an in-memory map (explicit distance matrix)."""
    sets = {}
    for x in F.ids:
        S = F[x]
        if isinstance(S, geo.Polygon):
            sets[str(x)] = {"kind": "polygon", "vertices": S.vertices.tolist()}
        elif isinstance(S, geo.Segment):
            sets[str(x)] = {"kind": "segment", "a": S.a.tolist(), "b": S.b.tolist()}
        elif isinstance(S, geo.Box):
            sets[str(x)] = {"kind": "box", "x": _inf_to_null([S.I1.lo, S.I1.hi]),
                            "y": _inf_to_null([S.I2.lo, S.I2.hi])}
        elif isinstance(S, geo.Interval1):
            lo, hi = _inf_to_null([S.lo, S.hi])
            sets[str(x)] = {"kind": "interval", "lo": lo, "hi": hi}
        elif isinstance(S, geo.HalfPlane):
            sets[str(x)] = {"kind": "halfplane", "n": S.n.tolist(), "alpha": S.alpha}
        else:
            raise TypeError(f"cannot store {S!r}")
    doc = {"norm": "linf", "points": list(F.ids),
           "metric": {"type": "matrix", "d": F.m.d.tolist()}, "sets": sets}
    return parse_instance(doc)


def _inf_to_null(vals):
    return [v if math.isfinite(v) else None for v in vals]


# --------------------------------------------------------------------------
# report helpers
# --------------------------------------------------------------------------

def _set_report(S) -> Any:
    if isinstance(S, geo.Empty):
        return None
    if isinstance(S, geo.Interval1):
        return {"kind": "interval", "lo": S.lo, "hi": S.hi}
    if isinstance(S, geo.HalfPlane):
        return {"kind": "halfplane", "n": S.n, "alpha": S.alpha}
    if isinstance(S, geo.Box) and not S.bounded:
        return {"kind": "box", "x": [S.I1.lo, S.I1.hi], "y": [S.I2.lo, S.I2.hi]}
    if not S.bounded:
        A, b = S.constraints()
        return {"kind": "region", "A": A, "b": b}
    return {"kind": "polygon", "vertices": geo.as_polygon(S).vertices}


def _selection_report(s) -> dict:
    return {"method": s.method, "seminorm": s.seminorm,
            "f": {str(x): s.f[x] for x in s.f}}


def _verdict_report(v: Verdict) -> dict:
    out = {"accepted": v.accepted}
    if not v.accepted:
        out["witness"] = [str(x) for x in v.witness]
        out["tag"] = v.tag
        out["excess"] = v.detail
    return out


class _Reject(Exception):
    """Command finished with a negative answer (exit code 1)."""

    def __init__(self, report: dict):
        super().__init__(report.get("reason", "rejected"))
        self.report = report


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_validate(inst: Instance, args) -> dict:
    return {"valid": True, "points": len(inst.m), "kind": inst.kind}


def cmd_oracle(inst: Instance, args) -> dict:
    res = orc.optimal_selection(inst.F)
    if not res.optimal:
        raise _Reject({"status": res.status, "lambda_star": None})
    return {"status": res.status, "lambda_star": res.lambda_star,
            "selection": _selection_report(res.selection)}


def _check(F: SetMap, lam: float) -> Verdict:
    if F.kind == "interval":
        return s1.criterion_1d(F, lam)
    if F.kind == "halfplane":
        v = hp.check_star1(F, lam)
        return v if not v.accepted else hp.check_star2(F, lam)
    if not F.bounded:
        raise InputError("the rectangle test needs bounded sets", "sets")
    return sel.algorithm_a(F, lam)


def cmd_check(inst: Instance, args) -> dict:
    v = _check(inst.F, args.lam)
    rep = {"lambda": args.lam, **_verdict_report(v)}
    if not v.accepted:
        raise _Reject(rep)
    return rep


def cmd_select(inst: Instance, args) -> dict:
    F, lam, method = inst.F, args.lam, args.method
    rep: dict = {"method": method}
    try:
        if F.kind == "interval":
            if method != "algob":
                raise InputError(f"method {method!r} needs planar sets", "sets")
            lam = s1.lambda_f(F) if lam is None else lam
            s = s1.select_plus(F, lam)
        elif F.kind == "halfplane" or not F.bounded:
            raise InputError("selections need bounded sets; try 'oracle'", "sets")
        elif method == "algob":
            if lam is None:
                search = sel.near_optimal(F)
                lam, s = search.lam, search.selection
                rep["search"] = {"probes": len(search.probes), "anomaly": search.anomaly}
            else:
                s = sel.algorithm_b(F, lam)
        else:
            lam = sel.finiteness_bound(F) if lam is None else lam
            build = {"hullcenter": sel.select_hull_center, "segmid": sel.select_segment_midpoint,
                     "steiner": sel.select_steiner}[method]
            s = build(F, lam)
    except (sel.SelectionRefused, s1.SelectionRefused) as exc:
        raise _Reject({**rep, "lambda": lam, "reason": str(exc)}) from None
    rep.update({"lambda": lam, "membership_gap": s.membership_gap(F), "selection": _selection_report(s)})
    return rep


def cmd_refine(inst: Instance, args) -> dict:
    F = inst.F
    if F.kind == "interval":
        stages, cur = [], F
        for lam in args.lambdas:
            cur = s1.refine_1d(cur, lam)
            stages.append(cur)
    else:
        stages = ref.iterate_refine(F, args.lambdas).stages
    rep = {"lambdas": list(args.lambdas), "stages": [
        {"lambda": lam, "empty": [str(x) for x in G.empty_points],
         "sets": {str(x): _set_report(G[x]) for x in G.ids}}
        for lam, G in zip(args.lambdas, stages)]}
    if any(G.empty_points for G in stages):
        raise _Reject(rep)
    return rep


def cmd_criteria(inst: Instance, args) -> dict:
    F, lam, fam = inst.F, args.lam, args.family
    if fam in ("star", "cf") and F.kind != "halfplane":
        raise InputError(f"family {fam!r} needs half-plane sets", "sets")
    if fam == "polygon-cf" and (F.kind not in sel.BOUNDED_KINDS or not F.bounded):
        raise InputError("family 'polygon-cf' needs bounded polygonal sets", "sets")
    rep: dict = {"family": fam}
    if fam == "star":
        cov = hp.coverage_status(F)
        rep["coverage"] = {"finite": cov.finite, "hull_contains_origin": cov.hull_contains_origin}
        rep["inf_lambda"] = hp.inf_lambda_star(F)
        check = lambda L: _check(F, L)  # noqa: E731
    elif fam == "cf":
        rep["inf_lambda"] = hp.inf_lambda_cf(F)
        check = lambda L: hp.check_mc2(F, L)  # noqa: E731
    else:
        rep["inf_lambda"] = hp.polygon_inf_lambda_cf(F)
        check = lambda L: hp.polygon_mc2(F, L)  # noqa: E731
    if lam is not None:
        v = check(lam)
        rep.update({"lambda": lam, **_verdict_report(v)})
        if not v.accepted:
            raise _Reject(rep)
    return rep


def cmd_plot(inst: Instance, args) -> dict:
    res = orc.optimal_selection(inst.F)
    svg = render_svg(inst.F, res.selection.f if res.optimal else None)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return {"out": args.out, "sha256": hashlib.sha256(svg.encode()).hexdigest(),
            "paths": len(inst.F.ids), "selection": res.optimal}


# --------------------------------------------------------------------------
# SVG
# --------------------------------------------------------------------------

_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _fmt(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _planar_shapes(F: SetMap, f) -> tuple[list, Optional[np.ndarray]]:
    """Vertex lists to draw (one per point) and the selection polyline."""
    if F.kind == "interval":
        shapes = [np.array([[F[x].lo, k], [F[x].hi, k]]) for k, x in enumerate(F.ids)]
        line = None if f is None else np.array([[float(f[x]), k] for k, x in enumerate(F.ids)])
        return shapes, line
    line = None if f is None else np.array([np.asarray(f[x], float) for x in F.ids])
    if F.bounded:
        return [geo.as_polygon(F[x]).vertices for x in F.ids], line
    # unbounded sets are clipped to a window around the finite data
    pts = [line] if line is not None else []
    for x in F.ids:
        S = F[x]
        if isinstance(S, geo.HalfPlane):
            pts.append((-S.alpha * S.n)[None, :])
        elif isinstance(S, geo.Box):
            b = np.array([S.I1.lo, S.I1.hi, S.I2.lo, S.I2.hi])
            fin = b[np.isfinite(b)]
            pts.append(np.array([[v, v] for v in fin]).reshape(-1, 2))
    P = np.vstack([p for p in pts if p.size]) if pts else np.zeros((1, 2))
    lo, hi = P.min(axis=0), P.max(axis=0)
    r = max(1.0, float((hi - lo).max()))
    window = geo.Box((lo[0] - r, hi[0] + r), (lo[1] - r, hi[1] + r))
    shapes = []
    for x in F.ids:
        S = geo.intersect([F[x], window])
        shapes.append(np.zeros((0, 2)) if isinstance(S, geo.Empty) else geo.as_polygon(S).vertices)
    return shapes, line


def render_svg(F: SetMap, f=None, size: int = 480) -> str:
    """Static SVG 1.1 picture: one ``path`` per set, one ``polyline`` for ``f``."""
    shapes, line = _planar_shapes(F, f)
    allp = [s for s in shapes if s.size] + ([line] if line is not None else [])
    P = np.vstack(allp) if allp else np.zeros((1, 2))
    lo, hi = P.min(axis=0), P.max(axis=0)
    span = float(max((hi - lo).max(), 1e-9))
    margin = 0.08 * span + 1e-9
    lo, span = lo - margin, span + 2 * margin
    scale = size / span

    def xy(p):
        # y axis points up in the picture
        return _fmt((p[0] - lo[0]) * scale), _fmt(size - (p[1] - lo[1]) * scale)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
           f'height="{size}" viewBox="0 0 {size} {size}">',
           f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>']
    for k, (x, V) in enumerate(zip(F.ids, shapes)):
        color = _PALETTE[k % len(_PALETTE)]
        if V.size:
            cmds = " ".join(("M" if i == 0 else "L") + " {} {}".format(*xy(p)) for i, p in enumerate(V))
            if len(V) > 2:
                cmds += " Z"
        else:
            cmds = "M 0 0"
        out.append(f'<path id="set-{_xml(str(x))}" d="{cmds}" fill="{color}" fill-opacity="0.25" '
                   f'stroke="{color}" stroke-width="1.5" stroke-linejoin="round"/>')
    if line is not None:
        pts = " ".join("{},{}".format(*xy(p)) for p in line)
        out.append(f'<polyline id="selection" points="{pts}" fill="none" stroke="black" '
                   f'stroke-width="1.2"/>')
        for x, p in zip(F.ids, line):
            cx, cy = xy(p)
            out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>')
            out.append(f'<text x="{cx}" y="{cy}" dx="5" dy="-5" font-size="11" '
                       f'font-family="sans-serif">{_xml(str(x))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _xml(s: str) -> str:
    return (s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _lambdas(text: str) -> list:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not 1 <= len(vals) <= 3 or any(not math.isfinite(v) or v < 0 for v in vals):
        raise argparse.ArgumentTypeError("expected one to three nonnegative numbers")
    return vals


def _nonneg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v) or v < 0:
        raise argparse.ArgumentTypeError("lambda must be a finite nonnegative number")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lipsel", description="Lipschitz selections of set-valued maps "
                                "into the plane with the uniform norm.")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--report", metavar="FILE", help="also write the JSON report to FILE")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", help="parse and validate the instance")
    sub.add_parser("oracle", help="optimal seminorm and selection by linear programming")
    c = sub.add_parser("check", help="decide the rectangle test at a given lambda")
    c.add_argument("--lambda", dest="lam", type=_nonneg, required=True)
    s = sub.add_parser("select", help="construct a selection")
    s.add_argument("--method", choices=("algob", "hullcenter", "segmid", "steiner"), required=True)
    s.add_argument("--lambda", dest="lam", type=_nonneg)
    r = sub.add_parser("refine", help="iterated balanced refinement")
    r.add_argument("--lambdas", type=_lambdas, required=True, help="e.g. 1,3 or 1,3,15")
    k = sub.add_parser("criteria", help="half-plane and polygon criteria")
    k.add_argument("--family", choices=("star", "cf", "polygon-cf"), required=True)
    k.add_argument("--lambda", dest="lam", type=_nonneg)
    g = sub.add_parser("plot", help="write an SVG figure of the sets and the optimal selection")
    g.add_argument("--out", required=True)
    return p


COMMANDS = {"validate": cmd_validate, "oracle": cmd_oracle, "check": cmd_check,
            "select": cmd_select, "refine": cmd_refine, "criteria": cmd_criteria,
            "plot": cmd_plot}


def run(argv=None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run one command, print the report; return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    code = EXIT_OK
    try:
        inst = load(args.instance)
        report = COMMANDS[args.command](inst, args)
    except _Reject as rej:
        report, code = rej.report, EXIT_REJECT
    except (InputError, OSError) as exc:
        print(f"lipsel: error: {exc}", file=stderr)
        return EXIT_INPUT
    report = {"command": args.command, "exit": code, **report}
    print(dumps(report), file=stdout)
    if args.report:
        save(report, args.report)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
