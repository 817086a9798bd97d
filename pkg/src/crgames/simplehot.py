"""Sums of simple hot games and integers: normalization, standard
indexing, and the matching-based optimal-strategy solver.

A simple hot game {a | b | c} (a >= b >= c) leaves each player exactly
one meaningful move: Left to a, Right to c, with same-round option b.
Solving a sum reduces to an integer base plus a minimum-weight matching
that tells Right where to respond non-locally; Left plays the summands
in standard (a - c descending) order.  ``sh_value_oracle`` is the
independent max-min recursion used to validate the matching solver; it
deliberately searches the dominated integer moves too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidPositionError, SizeLimitError
from .matching import AuxGraph, Matching, build_aux_graph, min_weight_matching
from .position import Node, Outcome, Position, as_int, sh_shape, sh_node

ORACLE_MAX_GAMES = 6
ORACLE_MAX_BASE = 30


@dataclass(frozen=True)
class SHGame:
    """A simple hot game {a | b | c} with a >= b >= c."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if not (self.a >= self.b >= self.c):
            raise InvalidPositionError(
                f"simple hot game needs a >= b >= c, got {{{self.a}|{self.b}|{self.c}}}"
            )

    @property
    def diff(self) -> int:
        return self.a - self.c

    def position(self) -> Node:
        return sh_node(self.a, self.b, self.c)

    def conjugate(self) -> "SHGame":
        return SHGame(-self.c, -self.b, -self.a)

    def __str__(self) -> str:
        return f"{{{self.a}|{self.b}|{self.c}}}"


@dataclass(frozen=True)
class SHSum:
    """A disjunctive sum of simple hot games plus a folded integer part."""

    games: tuple[SHGame, ...] = ()
    base_int: int = 0

    @staticmethod
    def of(games: Iterable[SHGame] = (), base_int: int = 0) -> "SHSum":
        return SHSum(tuple(games), base_int)

    def components(self) -> list[Position]:
        out: list[Position] = [g.position() for g in self.games]
        if self.base_int:
            from .position import IntGame

            out.append(IntGame(self.base_int))
        return out


@dataclass(frozen=True)
class SHSolution:
    """Optimal value and both players' strategies for an SH sum.

    ``left_order`` lists input game indices in Left's (standard index)
    play order; ``right_plan`` is the matching over standard indices
    (1-based) — matched means cross-respond, unmatched means respond
    locally.  ``trace`` logs optimal play round by round as (left input
    index, right input index, integer delta); deltas plus ``base_int``
    sum to ``score``.
    """

    score: int
    outcome: Outcome
    left_order: tuple[int, ...]
    right_plan: Matching
    aux_graph: AuxGraph
    normalized: tuple[SHGame, ...]
    base: int
    trace: tuple[tuple[int, int, int], ...]


def translate(h: SHGame, d: int) -> SHGame:
    """The simple hot game equal to h plus the integer d."""
    return SHGame(h.a + d, h.b + d, h.c + d)


def standard_index(games: Sequence[SHGame]) -> tuple[int, ...]:
    """Indices sorted by a - c descending; ties keep input order."""
    return tuple(sorted(range(len(games)), key=lambda i: (-games[i].diff, i)))


def normalize(s: SHSum) -> tuple[int, tuple[SHGame, ...]]:
    """Shift every same-round option to 0, folding the shifts into the base.

    Returns (base, games) with the games re-sorted into standard index
    order.
    """
    base = s.base_int + sum(g.b for g in s.games)
    cores = [translate(g, -g.b) for g in s.games]
    order = standard_index(cores)
    return base, tuple(cores[i] for i in order)


def solve_sh(s: SHSum) -> SHSolution:
    """Optimal score and strategies via the minimum-weight matching."""
    cores = [translate(g, -g.b) for g in s.games]
    order = standard_index(cores)
    ordered = tuple(cores[i] for i in order)
    base = s.base_int + sum(g.b for g in s.games)
    graph = build_aux_graph(ordered)
    plan = min_weight_matching(graph)
    score = base + plan.total_weight

    trace: list[tuple[int, int, int]] = []
    consumed: set[int] = set()
    for std in range(1, len(ordered) + 1):
        if std in consumed:
            continue
        left_in = order[std - 1]
        partner = plan.partner(std)
        if partner is not None:
            right_in = order[partner - 1]
            delta = s.games[left_in].a + s.games[right_in].c
            consumed.update((std, partner))
        else:
            right_in = left_in
            delta = s.games[left_in].b
            consumed.add(std)
        trace.append((left_in, right_in, delta))
    assert s.base_int + sum(d for _, _, d in trace) == score

    return SHSolution(
        score=score,
        outcome=Outcome.from_sign(score),
        left_order=order,
        right_plan=plan,
        aux_graph=graph,
        normalized=ordered,
        base=base,
        trace=tuple(trace),
    )


def sh_value_oracle(s: SHSum) -> int:
    """Exact game value by max-min search over every legal line of play.

    Left may move in any hot game or any positive integer; Right, seeing
    Left's choice, in any hot game or any negative integer.  Integer
    moves are searched even though they are dominated.  Enforced caps:
    at most 6 games, |base| <= 30.
    """
    if len(s.games) > ORACLE_MAX_GAMES:
        raise SizeLimitError(f"oracle is capped at {ORACLE_MAX_GAMES} games")
    if abs(s.base_int) > ORACLE_MAX_BASE:
        raise SizeLimitError(f"oracle base is capped at |{ORACLE_MAX_BASE}|")

    memo: dict[tuple, int] = {}

    def val(hots: tuple[tuple[int, int, int], ...], pos: int, neg: int) -> int:
        if not hots:
            # Pure integers: each round moves both totals one step toward
            # zero, so the total is invariant and decides the game.
            return pos + neg
        key = (hots, pos, neg)
        cached = memo.get(key)
        if cached is not None:
            return cached

        def credit(p: int, n: int, v: int) -> tuple[int, int]:
            return (p + v, n) if v > 0 else (p, n + v)

        def right_min(after_left: tuple, p: int, n: int, left_gain: int | None) -> int | None:
            # after_left: hot multiset after removing Left's game (or all
            # of them if Left moved in an integer); left_gain is Left's
            # unilateral option value, or None for an integer move.
            worst: int | None = None
            seen_resp: set = set()
            for j in range(len(after_left)):
                if after_left[j] in seen_resp:
                    continue
                seen_resp.add(after_left[j])
                cj = after_left[j][2]
                rest = after_left[:j] + after_left[j + 1 :]
                p2, n2 = (p, n) if left_gain is None else credit(p, n, left_gain)
                p2, n2 = credit(p2, n2, cj)
                v = val(rest, p2, n2)
                worst = v if worst is None else min(worst, v)
            if n < 0:
                p2, n2 = (p, n + 1) if left_gain is None else credit(p, n + 1, left_gain)
                v = val(after_left, p2, n2)
                worst = v if worst is None else min(worst, v)
            return worst

        best: int | None = None
        seen_left: set = set()
        for i, (a, b, _c) in enumerate(hots):
            if hots[i] in seen_left:
                continue
            seen_left.add(hots[i])
            rest = hots[:i] + hots[i + 1 :]
            # Right answering in the same game realizes the same-round option.
            p2, n2 = credit(pos, neg, b)
            worst = val(rest, p2, n2)
            cross = right_min(rest, pos, neg, a)
            if cross is not None:
                worst = min(worst, cross)
            best = worst if best is None else max(best, worst)
        if pos > 0:
            worst = right_min(hots, pos - 1, neg, None)
            assert worst is not None  # hots is nonempty, so Right can respond
            best = worst if best is None else max(best, worst)
        assert best is not None
        memo[key] = best
        return best

    hots = tuple(sorted((g.a, g.b, g.c) for g in s.games))
    pos = max(s.base_int, 0)
    neg = min(s.base_int, 0)
    return val(hots, pos, neg)


def sh_sum_from_components(components: Sequence[Position]) -> SHSum | None:
    """Recognize a component list as integers plus simple hot games."""
    games: list[SHGame] = []
    base = 0
    for comp in components:
        n = as_int(comp)
        if n is not None:
            base += n
            continue
        triple = sh_shape(comp)
        if triple is not None and triple[0] >= triple[1] >= triple[2]:
            games.append(SHGame(*triple))
            continue
        return None
    return SHSum(tuple(games), base)
