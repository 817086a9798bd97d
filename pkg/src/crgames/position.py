"""Recursive position model for same-round (cheating-robot) games.

A position is either a compact integer game (``IntGame``) or a ``Node``
holding ordered Left/Right option lists plus the full same-round matrix
that pairs every Left move with every Right move.  Positions are
immutable; structural metadata (key, birthday, dicot flag, node count)
is computed at construction from the already-built children, so no
operation here recurses on the Python stack and arbitrarily deep games
are safe.

Structural identity (equal keys after integer canonicalization) is the
only equality defined here; game-theoretic equality lives in
:mod:`crgames.ordering`.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InvalidPositionError

Key = tuple  # nested structural key; hashable and comparable for identity only


class Outcome(IntEnum):
    """Three-valued result, totally ordered LEFT_WIN > DRAW > RIGHT_WIN."""

    RIGHT_WIN = -1
    DRAW = 0
    LEFT_WIN = 1

    def __str__(self) -> str:
        return {1: "L", 0: "D", -1: "R"}[int(self)]

    @staticmethod
    def from_sign(value: int) -> "Outcome":
        return Outcome((value > 0) - (value < 0))


_INTERN: dict[Key, int] = {}


def _intern(key: Key) -> int:
    """Small process-unique id per structural key (cheap dict keys)."""
    kid = _INTERN.get(key)
    if kid is None:
        kid = _INTERN.setdefault(key, len(_INTERN))
    return kid


class Position:
    """Base class; use :class:`IntGame` or :class:`Node`."""

    __slots__ = ("key", "kid", "birthday", "dicot", "node_count", "is_zero")

    key: Key
    kid: int  # interned key id; equal iff keys are equal, this run only
    birthday: int
    dicot: bool
    node_count: int
    is_zero: bool

    # Option views: IntGame materializes them lazily so that every
    # operation can treat it exactly as its unfolded Node form.
    @property
    def left_options(self) -> tuple["Position", ...]:
        raise NotImplementedError

    @property
    def right_options(self) -> tuple["Position", ...]:
        raise NotImplementedError

    @property
    def same_round(self) -> tuple[tuple["Position", ...], ...]:
        raise NotImplementedError

    @property
    def is_terminal(self) -> bool:
        """True when at most one player can move (the same-round matrix is empty)."""
        return not self.left_options or not self.right_options

    def children(self) -> Iterator["Position"]:
        """Direct options (Left, Right, then same-round entries row-major)."""
        yield from self.left_options
        yield from self.right_options
        for row in self.same_round:
            yield from row

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Position) and self.kid == other.kid

    def __hash__(self) -> int:
        return self.kid

    def __repr__(self) -> str:
        from .notation import format_position

        return f"Position({format_position(self)})"


class IntGame(Position):
    """The integer game: ``n`` unilateral moves for Left (n > 0) or Right (n < 0)."""

    __slots__ = ("n",)

    def __init__(self, n: int):
        if not isinstance(n, int) or isinstance(n, bool):
            raise InvalidPositionError(f"integer game needs an int, got {n!r}")
        object.__setattr__(self, "n", n)
        key = ("i", n)
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "kid", _intern(key))
        object.__setattr__(self, "birthday", abs(n))
        object.__setattr__(self, "dicot", n == 0)
        object.__setattr__(self, "node_count", abs(n) + 1)
        object.__setattr__(self, "is_zero", n == 0)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("positions are immutable")

    @property
    def left_options(self) -> tuple[Position, ...]:
        return (IntGame(self.n - 1),) if self.n > 0 else ()

    @property
    def right_options(self) -> tuple[Position, ...]:
        return (IntGame(self.n + 1),) if self.n < 0 else ()

    @property
    def same_round(self) -> tuple[tuple[Position, ...], ...]:
        return ()


class Node(Position):
    """A general position: Left/Right option lists and the same-round matrix.

    ``same_round[i][j]`` is the option reached when Left plays move ``i``
    and Right plays move ``j`` in the same round.  If both option lists
    are nonempty the matrix must be full |L| x |R|; if either list is
    empty the matrix must be empty.
    """

    __slots__ = ("left", "right", "sr")

    def __init__(
        self,
        left: Sequence[Position] = (),
        right: Sequence[Position] = (),
        same_round: Sequence[Sequence[Position]] = (),
    ):
        left_t = tuple(left)
        right_t = tuple(right)
        sr_t = tuple(tuple(row) for row in same_round)
        for opt in (*left_t, *right_t, *(e for row in sr_t for e in row)):
            if not isinstance(opt, Position):
                raise InvalidPositionError(f"option is not a Position: {opt!r}")
        if left_t and right_t:
            if len(sr_t) != len(left_t) or any(len(row) != len(right_t) for row in sr_t):
                raise InvalidPositionError(
                    f"same-round matrix must be {len(left_t)}x{len(right_t)}, "
                    f"got rows {[len(r) for r in sr_t]}"
                )
        elif sr_t:
            raise InvalidPositionError(
                "same-round matrix must be empty when either option list is empty"
            )
        object.__setattr__(self, "left", left_t)
        object.__setattr__(self, "right", right_t)
        object.__setattr__(self, "sr", sr_t)

        entries = [*left_t, *right_t, *(e for row in sr_t for e in row)]
        object.__setattr__(
            self, "birthday", 1 + max((c.birthday for c in entries), default=-1)
        )
        object.__setattr__(self, "node_count", 1 + sum(c.node_count for c in entries))
        object.__setattr__(
            self,
            "dicot",
            (bool(left_t) == bool(right_t)) and all(c.dicot for c in entries),
        )
        key = _node_key(left_t, right_t, sr_t)
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "kid", _intern(key))
        object.__setattr__(self, "is_zero", key == ("i", 0))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("positions are immutable")

    @property
    def left_options(self) -> tuple[Position, ...]:
        return self.left

    @property
    def right_options(self) -> tuple[Position, ...]:
        return self.right

    @property
    def same_round(self) -> tuple[tuple[Position, ...], ...]:
        return self.sr


def _node_key(left, right, sr) -> Key:
    # Canonicalize nodes that are exactly an unfolded integer game so that
    # IntGame(n) and its Node form share one key.
    if not left and not right:
        return ("i", 0)
    if len(left) == 1 and not right:
        ck = left[0].key
        if ck[0] == "i" and ck[1] >= 0:
            return ("i", ck[1] + 1)
    if len(right) == 1 and not left:
        ck = right[0].key
        if ck[0] == "i" and ck[1] <= 0:
            return ("i", ck[1] - 1)
    return (
        "n",
        tuple(c.key for c in left),
        tuple(c.key for c in right),
        tuple(tuple(e.key for e in row) for row in sr),
    )


ZERO = IntGame(0)
STAR_BAR = Node([ZERO], [ZERO], [[ZERO]])  # the Day-1 dicot {0|0|0}


def mk_int(n: int) -> IntGame:
    """The integer game with ``n`` unilateral moves (sign picks the player)."""
    return IntGame(n)


def mk_node(
    left: Sequence[Position],
    right: Sequence[Position],
    same_round: Sequence[Sequence[Position]],
) -> Node:
    return Node(left, right, same_round)


def sh_node(a: int, b: int, c: int) -> Node:
    """The one-round position {a | b | c} over integer options."""
    return Node([IntGame(a)], [IntGame(c)], [[IntGame(b)]])


def unfold(g: Position) -> Node:
    """One-level Node view of ``g`` (identity for nodes)."""
    if isinstance(g, Node):
        return g
    return Node(g.left_options, g.right_options, g.same_round)


def structural_key(g: Position) -> Key:
    """Hashable key; equal for structurally identical positions after
    integer canonicalization, stable within a process run."""
    return g.key


def birthday(g: Position) -> int:
    return g.birthday


def is_dicot(g: Position) -> bool:
    """True iff in ``g`` and every follower the players run out of moves together."""
    return g.dicot


def as_int(g: Position) -> int | None:
    """The integer value when ``g`` is (an unfolding of) an integer game."""
    return g.key[1] if g.key[0] == "i" else None


def sh_shape(g: Position) -> tuple[int, int, int] | None:
    """Decompose ``g`` as {a | b | c} over integer options, if it has that shape.

    No a >= b >= c ordering is required here; callers that need a genuine
    simple hot game must check it.  Integer games themselves return None.
    """
    if (
        isinstance(g, Node)
        and len(g.left) == 1
        and len(g.right) == 1
        and g.key[0] == "n"
    ):
        a = as_int(g.left[0])
        c = as_int(g.right[0])
        b = as_int(g.sr[0][0])
        if a is not None and b is not None and c is not None:
            return (a, b, c)
    return None


def rebuild(root: Position, step: Callable[[Position, dict], Position]) -> Position:
    """Post-order rebuild of the position DAG with an explicit stack.

    ``step(node, built)`` receives every distinct subposition after all of
    its children are present in ``built`` (a key -> Position map) and
    returns the replacement.  IntGame leaves are passed to ``step`` as-is
    (they are never unfolded).
    """
    built: dict[int, Position] = {}
    stack: list[tuple[Position, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if node.kid in built:
            continue
        if expanded or isinstance(node, IntGame):
            built[node.kid] = step(node, built)
        else:
            stack.append((node, True))
            for child in node.children():
                if child.kid not in built:
                    stack.append((child, False))
    return built[root.kid]


def conjugate(g: Position) -> Position:
    """Swap-and-negate the two players' options; Right stays the responder.

    The same-round matrix transposes: entry (i, j) of the result is the
    conjugate of entry (j, i) of ``g``.  Involution; IntGame(n) maps to
    IntGame(-n).
    """

    def step(node: Position, built: dict) -> Position:
        if isinstance(node, IntGame):
            return IntGame(-node.n)
        left = tuple(built[c.kid] for c in node.right_options)
        right = tuple(built[c.kid] for c in node.left_options)
        old = node.same_round
        sr: tuple[tuple[Position, ...], ...] = ()
        if old:
            sr = tuple(
                tuple(built[old[j][i].kid] for j in range(len(node.left_options)))
                for i in range(len(node.right_options))
            )
        return Node(left, right, sr)

    return rebuild(g, step)


def relabel(g: Position, sigma: Sequence[int], pi: Sequence[int]) -> Position:
    """Permute Left moves by ``sigma`` and Right moves by ``pi`` (top level).

    Row/column ``i`` of the result is row/column ``sigma[i]``/``pi[j]`` of
    ``g``; used to check relabeling invariance.
    """
    u = unfold(g)
    if sorted(sigma) != list(range(len(u.left))) or sorted(pi) != list(range(len(u.right))):
        raise InvalidPositionError("relabel needs permutations of the move indices")
    left = tuple(u.left[s] for s in sigma)
    right = tuple(u.right[p] for p in pi)
    sr = tuple(tuple(u.sr[s][p] for p in pi) for s in sigma) if u.sr else ()
    return Node(left, right, sr)


def followers(g: Position) -> Iterable[Position]:
    """Every distinct subposition of ``g`` (including ``g``), bottom-up order not guaranteed."""
    seen: dict[int, Position] = {}
    stack = [g]
    while stack:
        node = stack.pop()
        if node.kid in seen:
            continue
        seen[node.kid] = node
        if isinstance(node, Node):
            stack.extend(node.children())
    return seen.values()
