"""Reading and writing instance files.

Formats:

``json``
    BLP object ``{"sense": "max"|"min", "c": [...], "rows": [{"coeffs": [[col, a], ...],
    "b": int, "sense": "le"|"ge"|"eq"}]}``. A plant location instance is the object
    ``{"open_costs": [...], "assign_costs": [[...], ...]}``.
``dimacs``
    Graph: ``p edge N M`` header, ``e u v`` edges (1-based), optional vertex weights
    ``w v int`` (default 1), ``c`` comment lines.
``cnf``
    DIMACS CNF: ``p cnf N M`` then zero-terminated clauses.
``orlib``
    ``m n``, then ``n`` column costs, then per row a count followed by that many
    1-based column indices. The row sense comes from ``kind``: ``set-cover`` (>= 1, min),
    ``packing`` (<= 1, max) or ``partition`` (= 1, min).
"""
from __future__ import annotations

import json
import os

from .blp import EQ, GE, LE, MAX, MIN, OBJ_SENSES, ROW_SENSES, BlpInstance, Row
from .errors import OgtcError, ParseError, ValidationError
from .graph import WeightedGraph
from .maxsat import CnfInstance
from .reductions import SplpInstance

FORMATS = ("json", "dimacs", "cnf", "orlib")
ORLIB_KINDS = {"set-cover": (GE, MIN), "packing": (LE, MAX), "partition": (EQ, MIN)}

_EXTENSIONS = {
    ".json": "json",
    ".gr": "dimacs",
    ".col": "dimacs",
    ".dimacs": "dimacs",
    ".cnf": "cnf",
    ".txt": "orlib",
    ".orlib": "orlib",
}


def infer_format(path) -> str:
    ext = os.path.splitext(str(path))[1].lower()
    if ext not in _EXTENSIONS:
        raise ParseError(f"cannot infer the format of {path!r}; pass it explicitly")
    return _EXTENSIONS[ext]


def parse(path, fmt: str | None = None, kind: str | None = None):
    fmt = fmt or infer_format(path)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_text(text, fmt, kind)


def parse_text(text: str, fmt: str, kind: str | None = None):
    if fmt == "json":
        return _parse_json(text)
    if fmt == "dimacs":
        return _parse_dimacs_graph(text)
    if fmt == "cnf":
        return _parse_cnf(text)
    if fmt == "orlib":
        return _parse_orlib(text, kind or "set-cover")
    raise ParseError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def dumps(value, fmt: str | None = None, kind: str | None = None) -> str:
    if fmt is None:
        fmt = {WeightedGraph: "dimacs", CnfInstance: "cnf"}.get(type(value), "json")
    if fmt == "json":
        return _dump_json(value)
    if fmt == "dimacs" and isinstance(value, WeightedGraph):
        return _dump_dimacs_graph(value)
    if fmt == "cnf" and isinstance(value, CnfInstance):
        return _dump_cnf(value)
    if fmt == "orlib" and isinstance(value, BlpInstance):
        return _dump_orlib(value, kind)
    raise ValidationError(f"cannot write {type(value).__name__} as {fmt!r}")


def write(value, path, fmt: str | None = None, kind: str | None = None) -> None:
    fmt = fmt or infer_format(path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(value, fmt, kind))


# ---------------------------------------------------------------------- JSON

def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an integer, got {json.dumps(v)}", where=where)
    return v


def _list(v, where):
    if not isinstance(v, list):
        raise ParseError(f"expected an array, got {json.dumps(v)}", where=where)
    return v


def _parse_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, col=exc.colno) from exc
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    try:
        if "open_costs" in obj:
            C = [_int(v, f"open_costs[{k}]") for k, v in enumerate(_list(obj["open_costs"], "open_costs"))]
            c = [
                [_int(v, f"assign_costs[{k}][{l}]") for l, v in enumerate(_list(r, f"assign_costs[{k}]"))]
                for k, r in enumerate(_list(obj.get("assign_costs"), "assign_costs"))
            ]
            return SplpInstance(C, c)
        sense = obj.get("sense", MAX)
        if sense not in OBJ_SENSES:
            raise ParseError(f"unknown objective sense {json.dumps(sense)}", where="sense")
        if "c" not in obj:
            raise ParseError("missing key \"c\"")
        c = [_int(v, f"c[{j}]") for j, v in enumerate(_list(obj["c"], "c"))]
        rows = []
        for i, r in enumerate(_list(obj.get("rows", []), "rows")):
            where = f"rows[{i}]"
            if not isinstance(r, dict):
                raise ParseError("row must be an object", where=where)
            rs = r.get("sense", LE)
            if rs not in ROW_SENSES:
                raise ParseError(f"unknown row sense {json.dumps(rs)}", where=f"{where}.sense")
            coeffs = []
            for k, pair in enumerate(_list(r.get("coeffs", []), f"{where}.coeffs")):
                pw = f"{where}.coeffs[{k}]"
                if not isinstance(pair, list) or len(pair) != 2:
                    raise ParseError("coefficient must be a [col, a] pair", where=pw)
                coeffs.append((_int(pair[0], pw), _int(pair[1], pw)))
            if "b" not in r:
                raise ParseError("missing key \"b\"", where=where)
            rows.append(Row(tuple(coeffs), _int(r["b"], f"{where}.b"), rs))
        return BlpInstance(c, rows, sense)
    except (ParseError, ValidationError):
        raise
    except OgtcError as exc:
        raise ValidationError(str(exc)) from exc


def _dump_json(value) -> str:
    if isinstance(value, SplpInstance):
        obj = {"open_costs": list(value.open_costs), "assign_costs": [list(r) for r in value.assign_costs]}
    elif isinstance(value, BlpInstance):
        obj = {
            "sense": value.sense,
            "c": list(value.c),
            "rows": [
                {"coeffs": [[j, a] for j, a in r.coeffs], "b": r.b, "sense": r.sense} for r in value.rows
            ],
        }
    else:
        raise ValidationError(f"cannot write {type(value).__name__} as JSON")
    return json.dumps(obj, indent=1) + "\n"


# -------------------------------------------------------------------- DIMACS

def _tokens(text):
    """Yield ``(line number, tokens)`` skipping blanks and ``c`` comments."""
    for no, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if toks and toks[0] != "c":
            yield no, toks


def _to_int(tok, line, col=None):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line=line, col=col) from None


def _parse_dimacs_graph(text):
    n = m = None
    edges, weights = [], {}
    for no, toks in _tokens(text):
        tag = toks[0]
        if tag == "p":
            if len(toks) != 4 or toks[1] not in ("edge", "col"):
                raise ParseError("header must read 'p edge N M'", line=no)
            if n is not None:
                raise ParseError("second header line", line=no)
            n, m = _to_int(toks[2], no), _to_int(toks[3], no)
            continue
        if n is None:
            raise ParseError(f"{tag!r} line before the 'p edge' header", line=no)
        if tag in ("e", "w"):
            if len(toks) != 3:
                raise ParseError(f"'{tag}' line needs two fields", line=no)
            a, b = _to_int(toks[1], no), _to_int(toks[2], no)
            if not 1 <= a <= n or (tag == "e" and not 1 <= b <= n):
                raise ParseError(f"vertex out of range 1..{n}", line=no)
            if tag == "e":
                edges.append((a - 1, b - 1))
            else:
                weights[a - 1] = b
        else:
            raise ParseError(f"unknown line type {tag!r}", line=no)
    if n is None:
        raise ParseError("missing 'p edge' header")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return WeightedGraph(n, tuple(edges), tuple(weights.get(v, 1) for v in range(n)))


def _dump_dimacs_graph(g: WeightedGraph) -> str:
    lines = [f"p edge {g.n} {len(g.edges)}"]
    lines += [f"w {v + 1} {w}" for v, w in enumerate(g.weights)]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def _parse_cnf(text):
    n = m = None
    clauses, cur = [], []
    for no, toks in _tokens(text):
        if toks[0] == "p":
            if len(toks) != 4 or toks[1] != "cnf":
                raise ParseError("header must read 'p cnf N M'", line=no)
            n, m = _to_int(toks[2], no), _to_int(toks[3], no)
            continue
        if toks[0] == "%":  # SATLIB end marker
            break
        if n is None:
            raise ParseError("clause before the 'p cnf' header", line=no)
        for tok in toks:
            lit = _to_int(tok, no)
            if lit == 0:
                if not cur:
                    raise ParseError("empty clause", line=no)
                clauses.append(tuple(cur))
                cur = []
            elif abs(lit) > n:
                raise ParseError(f"literal {lit} exceeds {n} variables", line=no)
            else:
                cur.append((abs(lit) - 1, lit > 0))
    if n is None:
        raise ParseError("missing 'p cnf' header")
    if cur:
        clauses.append(tuple(cur))
    if len(clauses) != m:
        raise ParseError(f"header announces {m} clauses, found {len(clauses)}")
    return CnfInstance(n, tuple(clauses))


def _dump_cnf(cnf: CnfInstance) -> str:
    lines = [f"p cnf {cnf.n_vars} {cnf.M}"]
    for cl in cnf.clauses:
        lines.append(" ".join(str(v + 1 if pol else -(v + 1)) for v, pol in cl) + " 0")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ OR-Library

def _parse_orlib(text, kind):
    if kind not in ORLIB_KINDS:
        raise ParseError(f"unknown OR-Library kind {kind!r}; expected one of {', '.join(ORLIB_KINDS)}")
    row_sense, obj_sense = ORLIB_KINDS[kind]
    toks = [(no, t) for no, line in enumerate(text.splitlines(), 1) for t in line.split()]
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of input")
        no, t = toks[pos]
        pos += 1
        return _to_int(t, no), no

    (m, _), (n, _) = take(), take()
    if m < 0 or n < 0:
        raise ParseError("negative dimensions")
    costs = [take()[0] for _ in range(n)]
    rows = []
    for _ in range(m):
        k, _ = take()
        cols = []
        for _ in range(k):
            j, no = take()
            if not 1 <= j <= n:
                raise ParseError(f"column {j} out of range 1..{n}", line=no)
            cols.append(j - 1)
        rows.append(Row(tuple((j, 1) for j in cols), 1, row_sense))
    if pos != len(toks):
        raise ParseError("trailing data after the last row", line=toks[pos][0])
    try:
        return BlpInstance(costs, rows, obj_sense)
    except OgtcError as exc:
        raise ValidationError(str(exc)) from exc


def _dump_orlib(inst: BlpInstance, kind):
    if kind is not None and kind not in ORLIB_KINDS:
        raise ValidationError(f"unknown OR-Library kind {kind!r}")
    for i, r in enumerate(inst.rows):
        if r.b != 1 or any(a != 1 for _, a in r.coeffs):
            raise ValidationError(f"row {i} is not a 0/1 row with right-hand side 1")
        if kind is not None and r.sense != ORLIB_KINDS[kind][0]:
            raise ValidationError(f"row {i} sense does not match {kind}")
    lines = [f"{inst.m} {inst.n}", " ".join(str(v) for v in inst.c)]
    for r in inst.rows:
        lines.append(str(len(r.coeffs)))
        lines.append(" ".join(str(j + 1) for j, _ in r.coeffs))
    return "\n".join(lines) + "\n"
