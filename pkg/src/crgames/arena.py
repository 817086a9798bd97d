"""Disjunctive sums: eager expansion and the lazy multi-component arena.

The lazy :class:`SumArena` is the default evaluation path for solvers
(the expanded same-round matrix of a sum grows multiplicatively); the
eager :func:`add` exists for definition-level testing and small cases
and enforces a node budget.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import IllegalMoveError, ResourceLimitError
from .position import Key, Node, Position

ComponentMove = tuple[int, int]  # (componentIndex, moveIndexWithinComponent)

DEFAULT_ADD_BUDGET = 200_000


class SumArena:
    """An ordered list of components denoting their disjunctive sum.

    Zero components are dropped at construction (G + 0 = G); the empty
    arena denotes 0.  Arenas are immutable values; solver memo tables
    are owned by the consumers.
    """

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Position] = ()):
        object.__setattr__(
            self, "components", tuple(g for g in components if not g.is_zero)
        )

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("arenas are immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SumArena) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        from .notation import format_terms

        return f"SumArena({format_terms(list(self.components))})"

    def sorted_key(self) -> tuple[Key, ...]:
        """Component-order-insensitive key (sound: sums commute)."""
        return tuple(sorted(c.key for c in self.components))


def arena_moves(arena: SumArena) -> tuple[list[ComponentMove], list[ComponentMove]]:
    """Flattened Left and Right move lists of the sum, component-indexed."""
    left = [
        (ci, mi)
        for ci, comp in enumerate(arena.components)
        for mi in range(len(comp.left_options))
    ]
    right = [
        (cj, mj)
        for cj, comp in enumerate(arena.components)
        for mj in range(len(comp.right_options))
    ]
    return left, right


def arena_round(arena: SumArena, left: ComponentMove, right: ComponentMove) -> SumArena:
    """Apply one full round (a Left move and a Right move) to the arena.

    Same-component rounds use that component's same-round option; cross
    rounds apply the unilateral options.  Resulting zero components are
    dropped.
    """
    comps = arena.components
    ci, mi = left
    cj, mj = right
    if not (0 <= ci < len(comps)) or not (0 <= mi < len(comps[ci].left_options)):
        raise IllegalMoveError(f"no Left move {left} in arena", side="left")
    if not (0 <= cj < len(comps)) or not (0 <= mj < len(comps[cj].right_options)):
        raise IllegalMoveError(f"no Right move {right} in arena", side="right")
    out = list(comps)
    if ci == cj:
        out[ci] = comps[ci].same_round[mi][mj]
    else:
        out[ci] = comps[ci].left_options[mi]
        out[cj] = comps[cj].right_options[mj]
    return SumArena(out)


def _pair_children(a: Position, b: Position) -> Iterable[tuple[Position, Position]]:
    for c in a.children():
        yield c, b
    for c in b.children():
        yield a, c
    for gl in a.left_options:
        for hr in b.right_options:
            yield gl, hr
    for gr in a.right_options:
        for hl in b.left_options:
            yield gr, hl


def add(g: Position, h: Position, *, node_budget: int = DEFAULT_ADD_BUDGET) -> Position:
    """Eagerly expanded disjunctive sum of two positions.

    Left moves of the result are G's Left moves (summed with H) followed
    by H's; same for Right.  Same-round entries pair same-component
    moves through S(G)/S(H) and cross-component moves through the
    unilateral options.  Raises :class:`ResourceLimitError` when the
    expansion needs more than ``node_budget`` distinct pair nodes.
    """
    if g.is_zero:
        return h
    if h.is_zero:
        return g
    done: dict[tuple[int, int], Position] = {}

    def pair(x: Position, y: Position) -> Position:
        if x.is_zero:
            return y
        if y.is_zero:
            return x
        return done[(x.kid, y.kid)]

    def build(a: Position, b: Position) -> Position:
        left = [pair(gl, b) for gl in a.left_options] + [
            pair(a, hl) for hl in b.left_options
        ]
        right = [pair(gr, b) for gr in a.right_options] + [
            pair(a, hr) for hr in b.right_options
        ]
        rows: list[list[Position]] = []
        if left and right:
            a_sr, b_sr = a.same_round, b.same_round
            for i in range(len(a.left_options)):
                rows.append(
                    [pair(a_sr[i][j], b) for j in range(len(a.right_options))]
                    + [pair(a.left_options[i], hr) for hr in b.right_options]
                )
            for i in range(len(b.left_options)):
                rows.append(
                    [pair(gr, b.left_options[i]) for gr in a.right_options]
                    + [pair(a, b_sr[i][j]) for j in range(len(b.right_options))]
                )
        return Node(left, right, rows)

    stack: list[tuple[Position, Position, bool]] = [(g, h, False)]
    while stack:
        a, b, expanded = stack.pop()
        k = (a.kid, b.kid)
        if k in done:
            continue
        if expanded:
            if len(done) >= node_budget:
                raise ResourceLimitError(
                    f"eager sum expansion exceeded node budget of {node_budget}"
                )
            done[k] = build(a, b)
            continue
        stack.append((a, b, True))
        for x, y in _pair_children(a, b):
            if not x.is_zero and not y.is_zero and (x.kid, y.kid) not in done:
                stack.append((x, y, False))
    return done[(g.kid, h.kid)]


def add_all(components: Sequence[Position], *, node_budget: int = DEFAULT_ADD_BUDGET) -> Position:
    """Left fold of :func:`add` over ``components`` (empty sum is 0)."""
    from .position import ZERO

    acc: Position = ZERO
    for comp in components:
        acc = add(acc, comp, node_budget=node_budget)
    return acc
