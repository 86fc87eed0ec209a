"""Text formats: the ``.2s`` matrix format, graph edge lists, tournament arc lists and JSON.

``.2s`` layout::

    2s 1
    n <N>
    colors <k>
    <name> sym | <name> asym <partner> | <name>     (k lines)
    original <m>                                     (optional)
    <N rows of color names, '.' on the diagonal>

Lines starting with ``#`` are comments.  A bare ``<name>`` declares no pairing,
which is how non-reversible structures are written.
"""

from __future__ import annotations

import json
import re
from typing import List, Optional, Tuple

from twostruct.core import ColorCatalog, TwoStructure, from_graph, from_tournament, with_declared_pairing
from twostruct.errors import ParseError, TwoStructureError

FORMATS = ("2s", "graph", "tournament", "json")


def _lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((i, line))
    return out


def dumps_2s(sigma: TwoStructure, original: Optional[int] = None) -> str:
    sigma = with_declared_pairing(sigma)
    out = ["2s 1", f"n {sigma.n}", f"colors {sigma.epsilon}"]
    names = sigma.catalog.names
    for i, c in enumerate(sigma.catalog.colors):
        if c.partner is None:
            out.append(c.name)
        elif c.partner == i:
            out.append(f"{c.name} sym")
        else:
            out.append(f"{c.name} asym {names[c.partner]}")
    if original is not None:
        out.append(f"original {original}")
    for u in range(sigma.n):
        out.append(" ".join("." if u == v else names[sigma.matrix[u][v]] for v in range(sigma.n)))
    return "\n".join(out) + "\n"


def _expect(lines, pos, keyword):
    if pos >= len(lines):
        raise ParseError(f"expected '{keyword} <int>', got end of input")
    no, line = lines[pos]
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword or not parts[1].isdigit():
        raise ParseError(f"expected '{keyword} <int>', got {line!r}", no, 1)
    return int(parts[1])


def loads_2s(text: str) -> Tuple[TwoStructure, Optional[int]]:
    """Parse ``.2s`` text; the second item is the ``original`` header or None."""
    lines = _lines(text)
    if not lines or lines[0][1].split() != ["2s", "1"]:
        no = lines[0][0] if lines else 1
        raise ParseError("missing '2s 1' header", no, 1)
    n = _expect(lines, 1, "n")
    k = _expect(lines, 2, "colors")
    if n < 1:
        raise ParseError("n must be positive", lines[1][0])
    spec = []
    pos = 3
    for _ in range(k):
        if pos >= len(lines):
            raise ParseError("missing color declarations")
        no, line = lines[pos]
        parts = line.split()
        if parts[0] == "." or len(parts) > 3 or (len(parts) == 2 and parts[1] != "sym") \
                or (len(parts) == 3 and parts[1] != "asym"):
            raise ParseError(f"bad color declaration {line!r}", no, 1)
        spec.append((no, tuple(parts)))
        pos += 1
    try:
        catalog = ColorCatalog.build([s for _, s in spec])
    except TwoStructureError as exc:
        raise ParseError(str(exc), spec[0][0] if spec else None) from exc
    original = None
    if pos < len(lines) and lines[pos][1].startswith("original"):
        original = _expect(lines, pos, "original")
        if original > n:
            raise ParseError("original exceeds n", lines[pos][0])
        pos += 1
    index = {name: i for i, name in enumerate(catalog.names)}
    rows = []
    for u in range(n):
        if pos >= len(lines):
            raise ParseError(f"expected {n} matrix rows, got {u}")
        no, line = lines[pos]
        tokens = line.split()
        if len(tokens) != n:
            raise ParseError(f"row has {len(tokens)} entries, expected {n}", no)
        row = []
        for v, tok in enumerate(tokens):
            if u == v:
                if tok != ".":
                    raise ParseError("diagonal entries must be '.'", no, v + 1)
                row.append(-1)
            elif tok not in index:
                raise ParseError(f"unknown color {tok!r}", no, v + 1)
            else:
                row.append(index[tok])
        rows.append(row)
        pos += 1
    if pos != len(lines):
        raise ParseError("trailing content", lines[pos][0])
    try:
        return TwoStructure(catalog, rows), original
    except TwoStructureError as exc:
        raise ParseError(str(exc)) from exc


_EDGE = re.compile(r"^(\d+)([->])(\d+)$")


def _parse_pairs(text: str, sep: str) -> Tuple[int, List[Tuple[int, int]]]:
    body = " ".join(line for _, line in _lines(text))
    if ";" not in body:
        raise ParseError("expected '<n>; <pairs>'", 1, 1)
    head, tail = body.split(";", 1)
    if not head.strip().isdigit():
        raise ParseError(f"bad vertex count {head.strip()!r}", 1, 1)
    pairs = []
    for tok in tail.split():
        m = _EDGE.match(tok)
        if not m or m.group(2) != sep:
            raise ParseError(f"bad pair {tok!r}, expected u{sep}v", 1)
        pairs.append((int(m.group(1)), int(m.group(3))))
    return int(head), pairs


def loads_graph(text: str) -> TwoStructure:
    """``"4; 0-1 1-2 2-3"``: vertex count, then undirected edges."""
    n, edges = _parse_pairs(text, "-")
    try:
        return from_graph(n, edges)
    except TwoStructureError as exc:
        raise ParseError(str(exc), 1) from exc


def dumps_graph(sigma: TwoStructure) -> str:
    names = sigma.catalog.names
    if not set(names) <= {"edge", "nonedge"} or not sigma.is_symmetric:
        raise TwoStructureError("only edge/nonedge structures are written as graphs")
    edges = [f"{u}-{v}" for u in range(sigma.n) for v in range(u + 1, sigma.n)
             if names[sigma.matrix[u][v]] == "edge"]
    return f"{sigma.n}; " + " ".join(edges) + "\n"


def loads_tournament(text: str) -> TwoStructure:
    """``"3; 0>1 1>2 2>0"``: vertex count, then one arc per pair."""
    n, arcs = _parse_pairs(text, ">")
    try:
        return from_tournament(n, arcs)
    except TwoStructureError as exc:
        raise ParseError(str(exc), 1) from exc


def dumps_tournament(sigma: TwoStructure) -> str:
    if sigma.n > 1 and sigma.catalog.names not in (("fwd", "bwd"), ("bwd", "fwd")):
        raise TwoStructureError("only fwd/bwd structures are written as tournaments")
    fwd = sigma.catalog.names.index("fwd") if sigma.n > 1 else 0
    arcs = [f"{u}>{v}" for u in range(sigma.n) for v in range(sigma.n)
            if u != v and sigma.matrix[u][v] == fwd]
    return f"{sigma.n}; " + " ".join(arcs) + "\n"


def to_json(sigma: TwoStructure, original: Optional[int] = None) -> dict:
    colors = []
    for i, c in enumerate(sigma.catalog.colors):
        entry = {"name": c.name}
        if c.partner is not None:
            entry["kind"] = "sym" if c.partner == i else "asym"
            if c.partner != i:
                entry["partner"] = sigma.catalog.colors[c.partner].name
        colors.append(entry)
    out = {"n": sigma.n, "colors": colors, "matrix": [list(r) for r in sigma.matrix]}
    if original is not None:
        out["original"] = original
    return out


def from_json(data) -> Tuple[TwoStructure, Optional[int]]:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    try:
        spec = []
        for c in data["colors"]:
            if "kind" not in c:
                spec.append((c["name"],))
            elif c["kind"] == "sym":
                spec.append((c["name"], "sym"))
            else:
                spec.append((c["name"], "asym", c["partner"]))
        sigma = TwoStructure(ColorCatalog.build(spec), data["matrix"])
        if sigma.n != data["n"]:
            raise ParseError("n does not match the matrix")
        return sigma, data.get("original")
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed structure JSON: {exc}") from exc
    except TwoStructureError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc


def sniff(text: str) -> str:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    first = lines[0][1]
    if first.startswith("2s"):
        return "2s"
    if first.startswith("{"):
        return "json"
    return "tournament" if ">" in text else "graph"


def loads(text: str, fmt: Optional[str] = None) -> Tuple[TwoStructure, Optional[int]]:
    fmt = fmt or sniff(text)
    if fmt == "2s":
        return loads_2s(text)
    if fmt == "json":
        return from_json(text)
    if fmt == "graph":
        return loads_graph(text), None
    if fmt == "tournament":
        return loads_tournament(text), None
    raise ParseError(f"unknown format {fmt!r}")


def dumps(sigma: TwoStructure, fmt: str = "2s", original: Optional[int] = None) -> str:
    if fmt == "2s":
        return dumps_2s(sigma, original)
    if fmt == "json":
        return json.dumps(to_json(sigma, original)) + "\n"
    if fmt == "graph":
        return dumps_graph(sigma)
    if fmt == "tournament":
        return dumps_tournament(sigma)
    raise ValueError(f"unknown format {fmt!r}")
