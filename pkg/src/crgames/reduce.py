"""Equality-preserving rewrites: domination deletion, same-round
replacement, and integer-bracket collapse.

Every rewrite is gated on proven order facts supplied by an oracle
(anything weaker would be unsound), and only facts valid over all
contexts are used.  Scan order is fixed (rows ascending, columns
ascending, bottom-up over subterms) so reductions are reproducible.
No canonical form is claimed; the composed ``simplify`` just reaches a
fixpoint that never grows the position.
"""

from __future__ import annotations

from typing import Callable

from .errors import IterationLimitError
from .position import IntGame, Node, Position, rebuild, sh_shape, unfold

Oracle = Callable[[Position, Position], "object"]

MAX_PASSES = 50


def _default_oracle() -> Oracle:
    from .ordering import cmp_sound

    return cmp_sound


def _ge(oracle: Oracle, x: Position, y: Position) -> bool:
    verdict = oracle(x, y)
    return verdict.relation.name in ("GE", "EQ") and verdict.scope == "cr"


def _canon_rank(x: Position) -> tuple:
    from .notation import format_position

    return (x.node_count, x.birthday, format_position(x))


def collapse_pattern(pos: Position) -> Position:
    """Top-level integer-bracket collapse: {k-1|k|k+t} -> k for k >= 1,
    t >= 0, and the mirrored {-k-t|-k|-k+1} -> -k."""
    triple = sh_shape(pos)
    if triple is None:
        return pos
    l, s, r = triple
    if l == s - 1 and s >= 1 and r >= s:
        return IntGame(s)
    if r == s + 1 and s <= -1 and l <= s:
        return IntGame(s)
    return pos


_COLLAPSE_CACHE: dict = {}


def collapse_integer_bracket(g: Position) -> Position:
    """Collapse every integer-bracket subterm, bottom-up."""
    cached = _COLLAPSE_CACHE.get(g.kid)
    if cached is not None:
        return cached

    def step(node: Position, built: dict) -> Position:
        if isinstance(node, IntGame):
            return node
        out = _COLLAPSE_CACHE.get(node.kid)
        if out is None:
            out = collapse_pattern(_with_children(node, built))
            _COLLAPSE_CACHE[node.kid] = out
        return out

    result = rebuild(g, step)
    _COLLAPSE_CACHE[g.kid] = result
    return result


def _with_children(node: Position, built: dict) -> Node:
    u = unfold(node)
    left = [built[c.kid] for c in u.left]
    right = [built[c.kid] for c in u.right]
    sr = [[built[e.kid] for e in row] for row in u.sr]
    return Node(left, right, sr)


def _delete_rows(node: Node, oracle: Oracle) -> Node:
    left = list(node.left)
    sr = [list(row) for row in node.sr]
    changed = True
    while changed and len(left) > 1:
        changed = False
        for j in range(len(left)):
            for i in range(len(left)):
                if i == j:
                    continue
                if not _ge(oracle, left[i], left[j]):
                    continue
                cols = range(len(node.right))
                if all(
                    any(_ge(oracle, sr[i][r], sr[j][s]) for s in cols) for r in cols
                ):
                    del left[j]
                    if sr:
                        del sr[j]
                    changed = True
                    break
            if changed:
                break
    return Node(left, node.right, sr if node.right and left else ())


def _delete_cols(node: Node, oracle: Oracle) -> Node:
    # Deleting Right's move n needs both of Right's uses of it covered by
    # surviving columns: the unilateral option (cross responses) and every
    # same-round entry.  The same-round condition alone is not enough: a
    # column can carry a bad same-round entry but the best cross option.
    right = list(node.right)
    sr = [list(row) for row in node.sr]
    changed = True
    while changed and len(right) > 1:
        changed = False
        for n in range(len(right)):
            if not any(
                _ge(oracle, right[n], right[j])
                for j in range(len(right))
                if j != n
            ):
                continue
            ok = True
            for i in range(len(node.left)):
                if not any(
                    _ge(oracle, sr[i][n], sr[i][s])
                    for s in range(len(right))
                    if s != n
                ):
                    ok = False
                    break
            if ok:
                del right[n]
                for row in sr:
                    del row[n]
                changed = True
                break
    return Node(node.left, right, sr if right and node.left else ())


def _replace_entries(node: Node, oracle: Oracle) -> Node:
    sr = [list(row) for row in node.sr]
    changed = True
    any_change = False
    while changed:
        changed = False
        for i in range(len(sr)):
            for r in range(len(sr[i])):
                for s in range(len(sr[i])):
                    if s == r or sr[i][r].key == sr[i][s].key:
                        continue
                    if _ge(oracle, sr[i][r], sr[i][s]) and _canon_rank(
                        sr[i][s]
                    ) < _canon_rank(sr[i][r]):
                        sr[i][r] = sr[i][s]
                        changed = True
                        any_change = True
    if not any_change:
        return node
    return Node(node.left, node.right, sr)


def remove_dominated_left(g: Position, oracle: Oracle | None = None) -> Position:
    """Delete Left moves dominated per the two-condition criterion, to a
    fixpoint.  Unknown verdicts block deletion."""
    if not isinstance(g, Node):
        return g
    return _delete_rows(g, oracle or _default_oracle())


def remove_dominated_right(g: Position, oracle: Oracle | None = None) -> Position:
    """Delete Right moves whose every same-round entry is matched by a
    better remaining column, to a fixpoint."""
    if not isinstance(g, Node):
        return g
    return _delete_cols(g, oracle or _default_oracle())


def replace_sr_option(g: Position, oracle: Oracle | None = None) -> Position:
    """Within each row, replace an entry by a provably-smaller-or-equal
    entry of the same row when that shrinks the position."""
    if not isinstance(g, Node):
        return g
    return _replace_entries(g, oracle or _default_oracle())


_DEFAULT_SCAN = ("collapse", "left", "right", "sr")
_RULES = {
    "collapse": lambda node, oracle: collapse_pattern(node),
    "left": _delete_rows,
    "right": _delete_cols,
    "sr": _replace_entries,
}


def _local_simplify(node: Position, oracle: Oracle, scan: tuple[str, ...]) -> Position:
    current = node
    for _ in range(MAX_PASSES):
        nxt = current
        for rule in scan:
            if isinstance(nxt, IntGame):
                break
            nxt = _RULES[rule](nxt, oracle)
        if nxt.key == current.key:
            return nxt
        current = nxt
    raise IterationLimitError("single-node rewrite did not stabilize")


def simplify(
    g: Position,
    oracle: Oracle | None = None,
    max_passes: int = MAX_PASSES,
    scan: tuple[str, ...] = _DEFAULT_SCAN,
) -> Position:
    """All four rewrites to a global fixpoint, bottom-up over subterms.

    The result is equivalent to the input over every context family and
    never has more nodes or a later birthday.  ``scan`` fixes the rule
    order within each node (reproducibility; alternate orders exist for
    the weak-confluence check).
    """
    orc = oracle or _default_oracle()
    if set(scan) != set(_DEFAULT_SCAN):
        raise ValueError(f"scan must be a permutation of {_DEFAULT_SCAN}")

    def step(node: Position, built: dict) -> Position:
        if isinstance(node, IntGame):
            return node
        return _local_simplify(_with_children(node, built), orc, scan)

    current = g
    for _ in range(max_passes):
        nxt = rebuild(current, step)
        if nxt.key == current.key:
            return nxt
        current = nxt
    raise IterationLimitError(f"simplify did not reach a fixpoint in {max_passes} passes")
