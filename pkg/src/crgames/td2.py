"""Toppling-dominoes rows of black-then-white runs: rules, same-round
resolution, translation to simple hot games, and a brute-force oracle.

A row (p, q) is p black dominoes (Left's) followed by q white (Right's).
Toppling a domino knocks everything in its direction, stopping at the
opponent's chosen domino when both moves land in one row; chosen
dominoes always fall, and all toppled dominoes are removed.  The winner
is the player with dominoes remaining when the opponent has none.

Blacks are numbered 1..p and whites 1..q, both left to right (white m
sits at overall slot p + m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import IllegalMoveError, InvalidPositionError, ParseError, SizeLimitError
from .position import IntGame, Outcome, Position
from .simplehot import SHGame, SHSolution, SHSum, solve_sh

Direction = Literal["left", "right"]
Color = Literal["black", "white"]

ORACLE_MAX_DOMINOES = 16


@dataclass(frozen=True, order=True)
class TD2Row:
    """A run of ``p`` black dominoes followed by ``q`` white ones."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q == 0:
            raise InvalidPositionError(f"bad row ({self.p},{self.q})")

    @property
    def hot(self) -> bool:
        return self.p >= 1 and self.q >= 1

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class TD2Move:
    """Topple domino ``index`` (1-based within its color run) of ``row``."""

    row: int
    color: Color
    index: int
    direction: Direction


class TD2Position:
    """A multiset of rows; row order is kept for move addressing."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[TD2Row] = ()):
        object.__setattr__(self, "rows", tuple(rows))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("positions are immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TD2Position) and self.multiset_key() == other.multiset_key()

    def __hash__(self) -> int:
        return hash(self.multiset_key())

    def __repr__(self) -> str:
        return f"TD2Position({format_td2(self)})"

    def multiset_key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((r.p, r.q) for r in self.rows))

    def total_dominoes(self) -> int:
        return sum(r.p + r.q for r in self.rows)


def parse_td2(text: str) -> TD2Position:
    """Parse ``(p,q)+(p,q)+...`` into a position."""
    rows: list[TD2Row] = []
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def expect(ch: str):
        nonlocal pos
        skip_ws()
        if pos >= n or text[pos] != ch:
            raise ParseError(f"expected {ch!r}", pos)
        pos += 1

    def integer() -> int:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected a nonnegative integer", start)
        return int(text[start:pos])

    while True:
        expect("(")
        p = integer()
        expect(",")
        q = integer()
        expect(")")
        if p + q == 0:
            raise ParseError("row (0,0) is empty", pos)
        rows.append(TD2Row(p, q))
        skip_ws()
        if pos >= n:
            break
        expect("+")
    return TD2Position(rows)


def format_td2(position: TD2Position) -> str:
    return "+".join(str(r) for r in position.rows) if position.rows else "(empty)"


def to_simple_hot(row: TD2Row) -> SHGame:
    """The simple hot game of a hot row: {p-1 | p-q | 1-q}."""
    if not row.hot:
        raise InvalidPositionError(
            f"row {row} is cold; it maps to the integer {to_integer(row)}"
        )
    return SHGame(row.p - 1, row.p - row.q, 1 - row.q)


def to_integer(row: TD2Row) -> int:
    """Cold rows are unilateral move counts: (p,0) -> p, (0,q) -> -q."""
    if row.hot:
        raise InvalidPositionError(f"row {row} is hot; use to_simple_hot")
    return row.p if row.q == 0 else -row.q


def to_sh_sum(position: TD2Position) -> tuple[SHSum, tuple[int, ...]]:
    """SH-sum translation plus the input row index behind each hot game."""
    games: list[SHGame] = []
    hot_rows: list[int] = []
    base = 0
    for idx, row in enumerate(position.rows):
        if row.hot:
            games.append(to_simple_hot(row))
            hot_rows.append(idx)
        else:
            base += to_integer(row)
    return SHSum(tuple(games), base), tuple(hot_rows)


def to_components(position: TD2Position) -> list[Position]:
    out: list[Position] = []
    for row in position.rows:
        if row.hot:
            out.append(to_simple_hot(row).position())
        else:
            out.append(IntGame(to_integer(row)))
    return out


def legal_moves(position: TD2Position, player: str) -> list[TD2Move]:
    """All (row, domino, direction) triples for the player's color."""
    color: Color = "black" if player == "left" else "white"
    moves: list[TD2Move] = []
    for ri, row in enumerate(position.rows):
        count = row.p if color == "black" else row.q
        for k in range(1, count + 1):
            for direction in ("left", "right"):
                moves.append(TD2Move(ri, color, k, direction))
    return moves


def _check_move(position: TD2Position, move: TD2Move, color: Color, side: str) -> TD2Row:
    if move.color != color:
        raise IllegalMoveError(f"{side} must topple {color} dominoes", side=side)
    if not (0 <= move.row < len(position.rows)):
        raise IllegalMoveError(f"no row {move.row}", side=side)
    row = position.rows[move.row]
    count = row.p if color == "black" else row.q
    if not (1 <= move.index <= count):
        raise IllegalMoveError(
            f"row {row} has no {color} domino #{move.index}", side=side
        )
    if move.direction not in ("left", "right"):
        raise IllegalMoveError(f"bad direction {move.direction!r}", side=side)
    return row


def _unilateral(row: TD2Row, color: Color, k: int, direction: Direction) -> list[TD2Row]:
    if color == "black":
        after = (k - 1, 0) if direction == "right" else (row.p - k, row.q)
    else:
        after = (0, row.q - k) if direction == "left" else (row.p, k - 1)
    return [TD2Row(*after)] if sum(after) else []


def _same_row(row: TD2Row, k: int, dl: Direction, m: int, dr: Direction) -> list[TD2Row]:
    if dl == "right" and dr == "left":
        pieces = [(k - 1, 0), (0, row.q - m)]
    elif dl == "right" and dr == "right":
        pieces = [(k - 1, 0)]
    elif dl == "left" and dr == "left":
        pieces = [(0, row.q - m)]
    else:
        pieces = [(row.p - k, m - 1)]
    return [TD2Row(p, q) for p, q in pieces if p + q]


def apply_round(position: TD2Position, left: TD2Move, right: TD2Move) -> TD2Position:
    """Resolve one full round (both topples) and drop emptied rows."""
    _check_move(position, left, "black", "left")
    _check_move(position, right, "white", "right")
    out: list[TD2Row] = []
    for ri, row in enumerate(position.rows):
        if ri == left.row == right.row:
            out.extend(_same_row(row, left.index, left.direction, right.index, right.direction))
        elif ri == left.row:
            out.extend(_unilateral(row, "black", left.index, left.direction))
        elif ri == right.row:
            out.extend(_unilateral(row, "white", right.index, right.direction))
        else:
            out.append(row)
    return TD2Position(out)


# -- brute-force outcome oracle --------------------------------------------

_ORACLE_MEMO: dict[tuple, Outcome] = {}


def td2_outcome_oracle(
    position: TD2Position, memo: dict[tuple, Outcome] | None = None
) -> Outcome:
    """Full minimax over rounds (every legal topple, wasteful ones too),
    memoized on the row multiset.  Enforced cap: 16 dominoes."""
    if position.total_dominoes() > ORACLE_MAX_DOMINOES:
        raise SizeLimitError(f"oracle is capped at {ORACLE_MAX_DOMINOES} dominoes")
    table = _ORACLE_MEMO if memo is None else memo
    return _oracle(position.multiset_key(), table)


def _row_moves(state: tuple[tuple[int, int], ...], color: Color):
    seen = set()
    for value in state:
        if value in seen:
            continue
        seen.add(value)
        count = value[0] if color == "black" else value[1]
        for k in range(1, count + 1):
            for direction in ("left", "right"):
                yield value, k, direction


def _remove_one(state: tuple, value: tuple[int, int]) -> tuple:
    out = list(state)
    out.remove(value)
    return tuple(out)


def _oracle(state: tuple[tuple[int, int], ...], memo: dict) -> Outcome:
    cached = memo.get(state)
    if cached is not None:
        return cached
    has_left = any(p for p, _ in state)
    has_right = any(q for _, q in state)
    if not has_left or not has_right:
        if has_left:
            result = Outcome.LEFT_WIN
        elif has_right:
            result = Outcome.RIGHT_WIN
        else:
            result = Outcome.DRAW
        memo[state] = result
        return result

    def successors(lv, lk, ld):
        rest = _remove_one(state, lv)
        seen = set()
        # Right in the same physical row.
        p, q = lv
        if q:
            for m in range(1, q + 1):
                for dr in ("left", "right"):
                    pieces = _same_row(TD2Row(p, q), lk, ld, m, dr)
                    succ = tuple(sorted(rest + tuple((r.p, r.q) for r in pieces)))
                    if succ not in seen:
                        seen.add(succ)
                        yield succ
        # Right in a different physical row.
        left_pieces = tuple(
            (r.p, r.q) for r in _unilateral(TD2Row(p, q), "black", lk, ld)
        )
        for rv, rk, rd in _row_moves(rest, "white"):
            right_pieces = tuple(
                (r.p, r.q)
                for r in _unilateral(TD2Row(*rv), "white", rk, rd)
            )
            succ = tuple(
                sorted(_remove_one(rest, rv) + left_pieces + right_pieces)
            )
            if succ not in seen:
                seen.add(succ)
                yield succ

    best = Outcome.RIGHT_WIN
    for lv, lk, ld in _row_moves(state, "black"):
        row_min = Outcome.LEFT_WIN
        for succ in successors(lv, lk, ld):
            val = _oracle(succ, memo)
            if val < row_min:
                row_min = val
            if row_min == Outcome.RIGHT_WIN:
                break
        if row_min > best:
            best = row_min
        if best == Outcome.LEFT_WIN:
            break
    memo[state] = best
    return best


# -- matching-based solver --------------------------------------------------


@dataclass(frozen=True)
class TD2Solution:
    """SH solution of the translated sum plus the row-level strategy.

    ``row_plan`` lists (left_row, right_row, delta) in Left's play order
    over input row indices; cross responses realize the matching, equal
    rows mean Right answers locally.  ``left_move_for``/``response_in``
    give the concrete inward adjacent-domino topples.
    """

    position: TD2Position
    solution: SHSolution
    hot_rows: tuple[int, ...]
    row_plan: tuple[tuple[int, int, int], ...]

    @property
    def score(self) -> int:
        return self.solution.score

    @property
    def outcome(self) -> Outcome:
        return self.solution.outcome

    def left_move_for(self, row_index: int) -> TD2Move:
        row = self.position.rows[row_index]
        return TD2Move(row_index, "black", row.p, "right")

    def response_in(self, row_index: int) -> TD2Move:
        return TD2Move(row_index, "white", 1, "left")


def solve_td2(position: TD2Position) -> TD2Solution:
    """Translate rows to simple hot games / integers and solve the sum."""
    sh, hot_rows = to_sh_sum(position)
    solution = solve_sh(sh)
    plan = tuple(
        (hot_rows[li], hot_rows[ri], delta) for li, ri, delta in solution.trace
    )
    return TD2Solution(position, solution, hot_rows, plan)


def best_right_response_td2(position: TD2Position, left: TD2Move) -> TD2Move:
    """Right's reply minimizing the solved successor score (exact), ties
    by move enumeration order."""
    _check_move(position, left, "black", "left")
    responses = legal_moves(position, "right")
    if not responses:
        raise IllegalMoveError("Right has no domino to topple", side="right")
    best_move = None
    best_score = None
    for resp in responses:
        succ = apply_round(position, left, resp)
        s = solve_td2(succ).score
        if best_score is None or s < best_score:
            best_move, best_score = resp, s
    assert best_move is not None
    return best_move
