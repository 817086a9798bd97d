"""Text grammar and JSON wire format for positions.

Text grammar (sums of integers and one-round triples; general matrices
are JSON-only)::

    expr := term ('+' term)*
    term := integer | '{' integer '|' integer '|' integer '}'

JSON position format (bit-exact, shared by the CLI and the service)::

    {"int": n}
    {"L": [pos...], "R": [pos...], "S": [[pos...]...]}   # S row-major, rows by L
    {"sh": [a, b, c]}                                    # accepted on input only
    {"sum": [pos...]}                                    # list of components

This serialization is an artifact of this tool, not an interchange
standard.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError
from .position import IntGame, Node, Position, as_int, sh_shape, sh_node


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ParseError("expected an integer", start)
        return int(self.text[start : self.pos])

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_terms(text: str) -> list[Position]:
    """Parse ``expr`` into its '+'-separated component positions."""
    sc = _Scanner(text)
    terms = [_term(sc)]
    while not sc.done():
        sc.take("+")
        terms.append(_term(sc))
    return terms


def _term(sc: _Scanner) -> Position:
    if sc.peek() == "{":
        sc.take("{")
        a = sc.integer()
        sc.take("|")
        b = sc.integer()
        sc.take("|")
        c = sc.integer()
        sc.take("}")
        return sh_node(a, b, c)
    return IntGame(sc.integer())


def position_to_obj(g: Position) -> Any:
    """JSON-able object for ``g`` (iterative; deep trees are fine)."""
    results: list[Any] = []
    stack: list[tuple[Position, bool]] = [(g, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, IntGame):
            results.append({"int": node.n})
            continue
        assert isinstance(node, Node)
        kids = list(node.children())
        if not expanded:
            stack.append((node, True))
            stack.extend((k, False) for k in reversed(kids))
            continue
        built = results[len(results) - len(kids) :]
        del results[len(results) - len(kids) :]
        nl, nr = len(node.left), len(node.right)
        obj = {
            "L": built[:nl],
            "R": built[nl : nl + nr],
            "S": [built[nl + nr + i * nr : nl + nr + (i + 1) * nr] for i in range(nl if nr else 0)],
        }
        results.append(obj)
    return results[0]


def _obj_children(obj: Any) -> list[Any]:
    if not isinstance(obj, dict):
        raise ParseError(f"position must be a JSON object, got {type(obj).__name__}")
    if "int" in obj:
        if not isinstance(obj["int"], int) or isinstance(obj["int"], bool):
            raise ParseError('"int" must hold an integer')
        return []
    if "sh" in obj:
        sh = obj["sh"]
        if (
            not isinstance(sh, list)
            or len(sh) != 3
            or any(not isinstance(v, int) or isinstance(v, bool) for v in sh)
        ):
            raise ParseError('"sh" must hold three integers')
        return []
    if set(obj) >= {"L", "R", "S"}:
        left, right, sr = obj["L"], obj["R"], obj["S"]
        if not isinstance(left, list) or not isinstance(right, list) or not isinstance(sr, list):
            raise ParseError('"L", "R", "S" must be lists')
        if any(not isinstance(row, list) for row in sr):
            raise ParseError('"S" must be a list of rows')
        return [*left, *right, *(e for row in sr for e in row)]
    raise ParseError(f"unrecognized position object with keys {sorted(obj)}")


def position_from_obj(obj: Any) -> Position:
    """Build a position from its JSON object form (iterative)."""
    results: list[Position] = []
    stack: list[tuple[Any, bool]] = [(obj, False)]
    while stack:
        o, expanded = stack.pop()
        kids = _obj_children(o)
        if kids and not expanded:
            stack.append((o, True))
            stack.extend((k, False) for k in reversed(kids))
            continue
        if "int" in o:
            results.append(IntGame(o["int"]))
            continue
        if "sh" in o:
            results.append(sh_node(*o["sh"]))
            continue
        built = results[len(results) - len(kids) :]
        del results[len(results) - len(kids) :]
        nl, nr = len(o["L"]), len(o["R"])
        ns = len(o["S"])
        left = built[:nl]
        right = built[nl : nl + nr]
        flat = built[nl + nr :]
        row_lens = [len(row) for row in o["S"]]
        rows, at = [], 0
        for rl in row_lens:
            rows.append(flat[at : at + rl])
            at += rl
        results.append(Node(left, right, rows if ns else ()))
    return results[0]


def components_from_obj(obj: Any) -> list[Position]:
    """Accept a single position object or {"sum": [...]} and return components."""
    if isinstance(obj, dict) and "sum" in obj:
        if not isinstance(obj["sum"], list):
            raise ParseError('"sum" must hold a list of positions')
        return [position_from_obj(o) for o in obj["sum"]]
    return [position_from_obj(obj)]


def components_to_obj(components: list[Position]) -> Any:
    return {"sum": [position_to_obj(g) for g in components]}


def format_position(g: Position, _depth: int = 0) -> str:
    """Text form when the grammar can express ``g``, else compact JSON.

    One-move-each nodes with non-integer entries render as nested braces
    for display; only integer-triple braces are parseable back.
    """
    n = as_int(g)
    if n is not None:
        return str(n)
    triple = sh_shape(g)
    if triple is not None:
        return "{%d|%d|%d}" % triple
    if _depth > 64:
        return "{...}"
    if (
        isinstance(g, Node)
        and len(g.left) == 1
        and len(g.right) == 1
        and g.key[0] == "n"
    ):
        return "{%s|%s|%s}" % (
            format_position(g.left[0], _depth + 1),
            format_position(g.sr[0][0], _depth + 1),
            format_position(g.right[0], _depth + 1),
        )
    try:
        return json.dumps(position_to_obj(g), separators=(",", ":"))
    except RecursionError:  # pragma: no cover - display fallback for huge trees
        return "{...}"


def format_terms(components: list[Position]) -> str:
    if not components:
        return "0"
    return " + ".join(format_position(g) for g in components)
