"""Backward-induction outcome solver and the robot's best-response engine.

A round is one max-min step: Left commits a move, Right answers with
full knowledge, and the value of a nonterminal state is the maximum
over Left moves of the minimum over Right responses of the successor
outcome.  Terminal states (one side out of moves) score by who can
still move.  Evaluation runs on lazy arenas with an explicit stack and
a shared memo table keyed by the sorted component keys (sound because
sums commute); all-integer arenas resolve arithmetically.

Move choices are deterministic: outcome first, then the refined integer
score where every component is an integer or simple-hot shaped, then
lowest move index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .arena import ComponentMove, SumArena, arena_moves
from .errors import IllegalMoveError, NoMoveError
from .position import Outcome, Position, as_int
from .simplehot import sh_sum_from_components, solve_sh

State = Union[Position, SumArena, Sequence[Position]]


@dataclass(frozen=True)
class SolveResult:
    """Outcome plus, for nonterminal states, a principal round.

    ``principal`` is a (leftMove, rightResponse) pair realizing the
    value at the root; the response achieves the minimum for the chosen
    Left move.
    """

    outcome: Outcome
    principal: tuple[ComponentMove, ComponentMove] | None


def as_components(state: State) -> tuple[Position, ...]:
    if isinstance(state, SumArena):
        return state.components
    if isinstance(state, Position):
        return (state,) if not state.is_zero else ()
    return SumArena(state).components


def _left_moves(comps: tuple[Position, ...]) -> list[ComponentMove]:
    return [
        (ci, mi)
        for ci, comp in enumerate(comps)
        for mi in range(len(comp.left_options))
    ]


def _right_moves(comps: tuple[Position, ...]) -> list[ComponentMove]:
    return [
        (cj, mj)
        for cj, comp in enumerate(comps)
        for mj in range(len(comp.right_options))
    ]


def _round(
    comps: tuple[Position, ...], left: ComponentMove, right: ComponentMove
) -> tuple[Position, ...]:
    ci, mi = left
    cj, mj = right
    out = list(comps)
    if ci == cj:
        out[ci] = comps[ci].same_round[mi][mj]
    else:
        out[ci] = comps[ci].left_options[mi]
        out[cj] = comps[cj].right_options[mj]
    return tuple(g for g in out if not g.is_zero)


def _arena_key(comps: tuple[Position, ...]) -> tuple:
    """Memo key: sorted interned component ids with same-sign integer
    components folded into two totals (sound: same-sign integers add
    exactly)."""
    pos = neg = 0
    rest = []
    for c in comps:
        k = c.key
        if k[0] == "i":
            if k[1] > 0:
                pos += k[1]
            else:
                neg += k[1]
        else:
            rest.append(c.kid)
    rest.sort()
    return (pos, neg, tuple(rest))


class _Frame:
    __slots__ = ("comps", "key", "lmoves", "rmoves", "i", "j", "row_min", "best")

    def __init__(self, comps, key, lmoves, rmoves):
        self.comps = comps
        self.key = key
        self.lmoves = lmoves
        self.rmoves = rmoves
        self.i = 0
        self.j = 0
        self.row_min = Outcome.LEFT_WIN
        self.best = Outcome.RIGHT_WIN


class Solver:
    """Memoizing outcome solver; safe to share (idempotent inserts)."""

    def __init__(self):
        self._memo: dict[tuple, Outcome] = {}

    # -- outcome ---------------------------------------------------------

    def outcome(self, state: State) -> Outcome:
        comps = as_components(state)
        key = _arena_key(comps)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        quick = self._quick(comps)
        if quick is not None:
            self._memo[key] = quick
            return quick
        return self._eval(comps, key)

    def _quick(self, comps: tuple[Position, ...]) -> Outcome | None:
        total = 0
        all_int = True
        for c in comps:
            k = c.key
            if k[0] == "i":
                total += k[1]
            else:
                all_int = False
                break
        if all_int:
            return Outcome.from_sign(total)
        has_left = any(c.left_options for c in comps)
        has_right = any(c.right_options for c in comps)
        if has_left and has_right:
            return None
        if has_left:
            return Outcome.LEFT_WIN
        if has_right:
            return Outcome.RIGHT_WIN
        return Outcome.DRAW

    def _eval(self, comps0: tuple[Position, ...], key0: tuple) -> Outcome:
        memo = self._memo
        stack = [_Frame(comps0, key0, _left_moves(comps0), _right_moves(comps0))]
        while stack:
            fr = stack[-1]
            while True:
                if fr.best == Outcome.LEFT_WIN or fr.i >= len(fr.lmoves):
                    memo[fr.key] = fr.best
                    stack.pop()
                    break
                if fr.row_min == Outcome.RIGHT_WIN or fr.j >= len(fr.rmoves):
                    if fr.row_min > fr.best:
                        fr.best = fr.row_min
                    fr.i += 1
                    fr.j = 0
                    fr.row_min = Outcome.LEFT_WIN
                    continue
                succ = _round(fr.comps, fr.lmoves[fr.i], fr.rmoves[fr.j])
                skey = _arena_key(succ)
                val = memo.get(skey)
                if val is None:
                    val = self._quick(succ)
                    if val is not None:
                        memo[skey] = val
                if val is None:
                    stack.append(_Frame(succ, skey, _left_moves(succ), _right_moves(succ)))
                    break
                if val < fr.row_min:
                    fr.row_min = val
                fr.j += 1
        return memo[key0]

    # -- refinements -----------------------------------------------------

    def score(self, state: State) -> int | None:
        """Integer value when every component is an integer or simple-hot
        shaped; None otherwise (only the three-valued outcome exists)."""
        sh = sh_sum_from_components(as_components(state))
        if sh is None:
            return None
        return solve_sh(sh).score

    def best_left_move(self, state: State) -> ComponentMove:
        """A Left move attaining the max-min outcome; ties broken by
        higher guaranteed score (when defined), then lowest index."""
        comps = as_components(state)
        lmoves = _left_moves(comps)
        if not lmoves:
            raise NoMoveError("Left has no move")
        rmoves = _right_moves(comps)
        if not rmoves:
            return lmoves[0]
        ranked: list[tuple[ComponentMove, Outcome, int | None]] = []
        for lm in lmoves:
            succs = [_round(comps, lm, rm) for rm in rmoves]
            outcome = min(self.outcome(s) for s in succs)
            scores = [self.score(s) for s in succs]
            guaranteed = min(scores) if all(v is not None for v in scores) else None
            ranked.append((lm, outcome, guaranteed))
        best_outcome = max(o for _, o, _ in ranked)
        cands = [r for r in ranked if r[1] == best_outcome]
        if all(g is not None for _, _, g in cands):
            top = max(g for _, _, g in cands)
            cands = [r for r in cands if r[2] == top]
        return cands[0][0]

    def best_right_response(self, state: State, left: ComponentMove) -> ComponentMove:
        """Right's deterministic reply to ``left``: minimize the successor
        outcome, then its score (when defined), then column index."""
        comps = as_components(state)
        ci, mi = left
        if not (0 <= ci < len(comps)) or not (0 <= mi < len(comps[ci].left_options)):
            raise IllegalMoveError(f"no Left move {left} in state", side="left")
        rmoves = _right_moves(comps)
        if not rmoves:
            raise IllegalMoveError("Right has no move to respond with", side="right")
        ranked = []
        for rm in rmoves:
            succ = _round(comps, left, rm)
            ranked.append((rm, self.outcome(succ), self.score(succ)))
        worst = min(o for _, o, _ in ranked)
        cands = [r for r in ranked if r[1] == worst]
        if all(s is not None for _, _, s in cands):
            low = min(s for _, _, s in cands)
            cands = [r for r in cands if r[2] == low]
        return cands[0][0]

    def solve(self, state: State) -> SolveResult:
        """Outcome plus a principal (leftMove, rightResponse) pair."""
        comps = as_components(state)
        outcome = self.outcome(comps)
        if not _left_moves(comps) or not _right_moves(comps):
            return SolveResult(outcome, None)
        left = self.best_left_move(comps)
        right = self.best_right_response(comps, left)
        return SolveResult(outcome, (left, right))


_default_solver = Solver()


def default_solver() -> Solver:
    return _default_solver


def outcome(state: State, solver: Solver | None = None) -> Outcome:
    return (solver or _default_solver).outcome(state)


def solve(state: State, solver: Solver | None = None) -> SolveResult:
    return (solver or _default_solver).solve(state)


def best_left_move(state: State, solver: Solver | None = None) -> ComponentMove:
    return (solver or _default_solver).best_left_move(state)


def best_right_response(
    state: State, left: ComponentMove, solver: Solver | None = None
) -> ComponentMove:
    return (solver or _default_solver).best_right_response(state, left)


def score(state: State, solver: Solver | None = None) -> int | None:
    return (solver or _default_solver).score(state)
