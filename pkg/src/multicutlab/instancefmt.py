"""Line-oriented text format for multicut instances.

    mcg 1
    graph <n> <m>
    edge <u> <v> <length> <cost>     (m lines; cost is "p/q" or integer)
    pairs <K>  followed by K lines  pair <s> <t>
      or
    pairs dist>= <t>
    mark <name> <vertex>             (optional, repeatable)

Blank lines and "#" comments are ignored.  Emission is canonical (edges
by id, explicit pairs lexicographic, marks by name), so parse(emit(x))
round-trips exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .graph import Graph, GraphError
from .multicut import DistancePairs, InstanceError, MulticutInstance


class ParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class _Lines:
    def __init__(self, text: str):
        self.items = []  # (lineno, fields, first-field column)
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            if not body.strip():
                continue
            col = len(body) - len(body.lstrip()) + 1
            self.items.append((no, body.split(), col))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self, keyword: str, nfields: int):
        item = self.peek()
        if item is None:
            last = self.items[-1][0] if self.items else 1
            raise ParseError(last, 1, f"unexpected end of file, expected '{keyword}'")
        no, fields, col = item
        if fields[0] != keyword:
            raise ParseError(no, col, f"expected '{keyword}', found {fields[0]!r}")
        if len(fields) != nfields + 1:
            raise ParseError(no, col, f"'{keyword}' takes {nfields} fields, found {len(fields) - 1}")
        self.pos += 1
        return no, fields[1:], col


def _int(fields_item, idx: int, what: str) -> int:
    no, fields, col = fields_item
    try:
        return int(fields[idx])
    except ValueError:
        raise ParseError(no, col, f"{what}: {fields[idx]!r} is not an integer") from None


def _rational(fields_item, idx: int, what: str) -> Fraction:
    no, fields, col = fields_item
    try:
        return Fraction(fields[idx])
    except (ValueError, ZeroDivisionError):
        raise ParseError(no, col, f"{what}: {fields[idx]!r} is not a rational") from None


def parse_instance(text: str) -> MulticutInstance:
    lines = _Lines(text)
    no, fields, col = lines.take("mcg", 1)
    if fields[0] != "1":
        raise ParseError(no, col, f"unsupported format version {fields[0]!r}")
    item = lines.take("graph", 2)
    n = _int((item[0], item[1], item[2]), 0, "vertex count")
    m = _int((item[0], item[1], item[2]), 1, "edge count")
    edges = []
    costs = []
    for _ in range(m):
        item = lines.take("edge", 4)
        u = _int(item, 0, "endpoint")
        v = _int(item, 1, "endpoint")
        length = _int(item, 2, "length")
        cost = _rational(item, 3, "cost")
        if cost < 0:
            raise ParseError(item[0], item[2], "cost must be nonnegative")
        if u == v:
            raise ParseError(item[0], item[2], f"self-loop at vertex {u}")
        if any((u, v) in ((a, b), (b, a)) for a, b, _ in edges):
            raise ParseError(item[0], item[2], f"duplicate edge ({u}, {v})")
        edges.append((u, v, length))
        costs.append(cost)
    item = lines.take("pairs", _pairs_arity(lines))
    pairs = None
    if len(item[1]) == 2:
        if item[1][0] != "dist>=":
            raise ParseError(item[0], item[2], f"expected 'dist>=' or a count, found {item[1][0]!r}")
        threshold = _int((item[0], item[1], item[2]), 1, "distance threshold")
        if threshold < 1:
            raise ParseError(item[0], item[2], "distance threshold must be >= 1")
    else:
        count = _int(item, 0, "pair count")
        if count < 0:
            raise ParseError(item[0], item[2], "pair count must be >= 0")
        pairs = []
        for _ in range(count):
            pitem = lines.take("pair", 2)
            s, t = _int(pitem, 0, "pair vertex"), _int(pitem, 1, "pair vertex")
            if s == t:
                raise ParseError(pitem[0], pitem[2], f"pair ({s}, {t}) has identical endpoints")
            pairs.append((s, t))
    marks = {}
    while lines.peek() is not None:
        item = lines.take("mark", 2)
        name = item[1][0]
        if name in marks:
            raise ParseError(item[0], item[2], f"duplicate mark {name!r}")
        marks[name] = _int(item, 1, "mark vertex")
    extra = lines.peek()
    if extra is not None:
        raise ParseError(extra[0], extra[2], f"unexpected {extra[1][0]!r}")
    try:
        g = Graph(n, edges, marks)
        if pairs is None:
            return MulticutInstance(g, costs, DistancePairs(g, threshold))
        return MulticutInstance(g, costs, pairs)
    except (GraphError, InstanceError) as exc:
        raise ParseError(no, 1, str(exc)) from exc


def _pairs_arity(lines: _Lines) -> int:
    item = lines.peek()
    if item is not None and item[1][0] == "pairs" and len(item[1]) == 3:
        return 2
    return 1


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def emit_instance(instance: MulticutInstance) -> str:
    g = instance.graph
    out = ["mcg 1", f"graph {g.n} {g.m}"]
    for e in g.edges:
        out.append(f"edge {e.u} {e.v} {e.length} {_fmt_rat(instance.costs[e.id])}")
    pairs = instance.pairs
    if isinstance(pairs, DistancePairs):
        out.append(f"pairs dist>= {pairs.threshold}")
    else:
        canon = sorted(pairs)
        out.append(f"pairs {len(canon)}")
        for s, t in canon:
            out.append(f"pair {s} {t}")
    for name in sorted(g.marks):
        out.append(f"mark {name} {g.marks[name]}")
    return "\n".join(out) + "\n"
