"""Sound (partial) decisions of the game partial order, plus bounded
context families for falsification.

``cmp_sound`` applies only proven comparison rules and otherwise says
Unknown.  Verdicts carry the rule that backs them and a scope: "cr"
when the rule holds over every context, "sh" when it is only proven
over simple-hot contexts (the integer-translation rules).  Equality
over *all* contexts is not decidable here; ``refute_geq``/``equiv_mod``
quantify over named bounded families instead — a returned witness is a
genuine refutation, absence proves equivalence modulo the family only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

from .arena import add_all
from .errors import ParseError
from .position import (
    IntGame,
    Node,
    Outcome,
    Position,
    STAR_BAR,
    ZERO,
    as_int,
    sh_shape,
    sh_node,
)
from .reduce import collapse_integer_bracket
from .solver import Solver, State, as_components, default_solver


class Relation(Enum):
    GE = "ge"
    LE = "le"
    EQ = "eq"
    INCOMPARABLE = "incomparable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class OrderVerdict:
    relation: Relation
    strict: bool = False
    evidence: str = ""
    scope: str = "cr"
    witness: Position | None = None

    @property
    def proven(self) -> bool:
        return self.relation is not Relation.UNKNOWN

    def flipped(self) -> "OrderVerdict":
        rel = {Relation.GE: Relation.LE, Relation.LE: Relation.GE}.get(
            self.relation, self.relation
        )
        return OrderVerdict(rel, self.strict, self.evidence, self.scope, self.witness)

    def describe(self) -> str:
        symbol = {
            Relation.GE: ">" if self.strict else ">=",
            Relation.LE: "<" if self.strict else "<=",
            Relation.EQ: "=",
            Relation.INCOMPARABLE: "||",
            Relation.UNKNOWN: "?",
        }[self.relation]
        scope = "" if self.scope == "cr" else f" [{self.scope} contexts]"
        return f"{symbol} ({self.evidence}){scope}"


UNKNOWN = OrderVerdict(Relation.UNKNOWN, evidence="no applicable rule")


def _sh_decompose(g: Position) -> tuple[int, tuple[int, int] | None] | None:
    n = as_int(g)
    if n is not None:
        return n, None
    triple = sh_shape(g)
    if triple is not None and triple[0] >= triple[1] >= triple[2]:
        a, b, c = triple
        return b, (a - b, c - b)
    return None


def _vs_zero(g: Position) -> OrderVerdict:
    # g is known not to be (structurally) zero here.
    if g.left_options and not g.right_options:
        return OrderVerdict(
            Relation.GE, strict=True, evidence="Left-only game exceeds zero"
        )
    if g.dicot:
        return OrderVerdict(
            Relation.LE, strict=True, evidence="nonzero dicot falls below zero"
        )
    return UNKNOWN


_CMP_CACHE: dict[tuple, OrderVerdict] = {}


def cmp_sound(g: Position, h: Position) -> OrderVerdict:
    """Compare by proven rules only; Unknown carries no claim."""
    key = (g.kid, h.kid)
    cached = _CMP_CACHE.get(key)
    if cached is None:
        cached = _CMP_CACHE[key] = _cmp_sound(g, h)
    return cached


def _cmp_sound(g: Position, h: Position) -> OrderVerdict:
    gc = collapse_integer_bracket(g)
    hc = collapse_integer_bracket(h)
    if gc.key == hc.key:
        return OrderVerdict(Relation.EQ, evidence="structural identity")
    gi, hi = as_int(gc), as_int(hc)
    if gi is not None and hi is not None:
        if gi == hi:  # distinct keys cannot reach here, kept for clarity
            return OrderVerdict(Relation.EQ, evidence="integer equality")
        rel = Relation.GE if gi > hi else Relation.LE
        return OrderVerdict(rel, strict=True, evidence="integer order")
    if hi == 0:
        return _vs_zero(gc)
    if gi == 0:
        return _vs_zero(hc).flipped()
    gd, hd = _sh_decompose(gc), _sh_decompose(hc)
    if gd is not None and hd is not None and gd[1] is not None and gd[1] == hd[1]:
        if gd[0] == hd[0]:
            return OrderVerdict(
                Relation.EQ, evidence="integer translation, equal cores", scope="sh"
            )
        rel = Relation.GE if gd[0] > hd[0] else Relation.LE
        return OrderVerdict(
            rel,
            strict=True,
            evidence="integer translation, shifted bases",
            scope="sh",
        )
    return UNKNOWN


# -- context families -----------------------------------------------------


@dataclass(frozen=True)
class ContextFamily:
    """A named, deterministic, budget-capped enumeration of positions.

    Iteration is lazy with an incremental shared cache, so witness
    searches that exit early never pay for the whole family.
    """

    name: str
    budget: int

    def iter_components(self) -> Iterator[tuple[Position, ...]]:
        """Members as lazy component tuples (scan-friendly view)."""
        cache = _family_cache(self.name, self.budget)
        i = 0
        while True:
            if i < len(cache.entries):
                yield cache.entries[i]
                i += 1
                continue
            if not cache.advance():
                return

    def member_position(self, index: int) -> Position:
        return _family_cache(self.name, self.budget).member_position(index)

    def __iter__(self) -> Iterator[Position]:
        for i, _ in enumerate(self.iter_components()):
            yield self.member_position(i)

    def positions(self) -> tuple[Position, ...]:
        cache = _family_cache(self.name, self.budget)
        while cache.advance():
            pass
        return tuple(cache.member_position(i) for i in range(len(cache.entries)))

    def __len__(self) -> int:
        return len(self.positions())

    def __bool__(self) -> bool:
        return True


_FAMILY_BUDGETS = {"day2-mixed": 20_000, "sh-only": 20_000}


def family_names() -> list[str]:
    return sorted(_FAMILY_BUDGETS)


def get_family(name: str, budget: int | None = None) -> ContextFamily:
    if name not in _FAMILY_BUDGETS:
        raise ParseError(f"unknown context family {name!r}; known: {family_names()}")
    return ContextFamily(name, budget or _FAMILY_BUDGETS[name])


def default_family() -> ContextFamily:
    return get_family("day2-mixed")


def _integers(limit: int) -> Iterator[Position]:
    yield ZERO
    for n in range(1, limit + 1):
        yield IntGame(n)
        yield IntGame(-n)


def _sh_triples(limit: int) -> Iterator[Position]:
    for a in range(-limit, limit + 1):
        for b in range(-limit, a + 1):
            for c in range(-limit, b + 1):
                yield sh_node(a, b, c)


def _day2_nodes() -> Iterator[Position]:
    entries = (ZERO, IntGame(1), IntGame(-1), STAR_BAR)
    shapes = [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0), (1, 2), (2, 1), (2, 2)]
    for m, n in shapes:
        for combo in itertools.product(entries, repeat=m + n + m * n):
            left = combo[:m]
            right = combo[m : m + n]
            flat = combo[m + n :]
            sr = [flat[i * n : (i + 1) * n] for i in range(m)] if m and n else ()
            yield Node(left, right, sr)


def _base_iter(name: str) -> Iterator[Position]:
    if name == "day2-mixed":
        yield from _integers(3)
        yield from _sh_triples(3)
        yield from _day2_nodes()
    elif name == "sh-only":
        yield from _integers(4)
        yield from _sh_triples(4)


class _FamilyCache:
    """Deduplicated, budget-capped member list.

    Members are stored as component tuples (pair sums stay lazy: the
    outcome of a sum does not depend on how it is summed); the eager
    Position view is materialized only when the API needs one.
    """

    def __init__(self, name: str, budget: int):
        self.entries: list[tuple[Position, ...]] = []
        self._positions: dict[int, Position] = {}
        self._seen: set = set()
        self._budget = budget
        self._source = self._generate(name)

    def advance(self) -> bool:
        """Pull one more member into the cache; False when exhausted."""
        if len(self.entries) >= self._budget:
            return False
        for comps in self._source:
            comps = tuple(c for c in comps if not c.is_zero)
            key = tuple(sorted(c.key for c in comps))
            if key not in self._seen:
                self._seen.add(key)
                self.entries.append(comps)
                return True
        return False

    def member_position(self, index: int) -> Position:
        pos = self._positions.get(index)
        if pos is None:
            comps = self.entries[index]
            pos = comps[0] if len(comps) == 1 else add_all(comps)
            self._positions[index] = pos
        return pos

    def _generate(self, name: str) -> Iterator[tuple[Position, ...]]:
        for g in _base_iter(name):
            yield (g,)
        # Pairwise sums of the deduplicated base members (i <= j).
        n = len(self.entries)
        for i in range(n):
            for j in range(i, n):
                yield self.entries[i] + self.entries[j]


_cache: dict[tuple[str, int], _FamilyCache] = {}


def _family_cache(name: str, budget: int) -> _FamilyCache:
    key = (name, budget)
    cache = _cache.get(key)
    if cache is None:
        cache = _cache[key] = _FamilyCache(name, budget)
    return cache


# -- bounded search -------------------------------------------------------


def refute_geq(
    g: "State",
    h: "State",
    family: ContextFamily | None = None,
    solver: Solver | None = None,
) -> Position | None:
    """First family member X with o(g + X) < o(h + X), if any.

    A returned witness refutes g >= h outright; None proves nothing
    beyond equivalence modulo the family.  Sums may be passed lazily as
    arenas or component lists — an arena denotes its disjunctive sum.
    """
    fam = family if family is not None else default_family()
    sv = solver if solver is not None else default_solver()
    gc = as_components(g)
    hc = as_components(h)
    for i, xc in enumerate(fam.iter_components()):
        if sv.outcome(gc + xc) < sv.outcome(hc + xc):
            return fam.member_position(i)
    return None


def equiv_mod(
    g: "State",
    h: "State",
    family: ContextFamily | None = None,
    solver: Solver | None = None,
) -> bool:
    """True iff g and h have equal outcomes against every family member."""
    fam = family if family is not None else default_family()
    sv = solver if solver is not None else default_solver()
    gc = as_components(g)
    hc = as_components(h)
    return all(
        sv.outcome(gc + xc) == sv.outcome(hc + xc) for xc in fam.iter_components()
    )


def compare(
    g: Position,
    h: Position,
    family: ContextFamily | None = None,
    solver: Solver | None = None,
) -> OrderVerdict:
    """cmp_sound, falling back to witness search over the family."""
    verdict = cmp_sound(g, h)
    if verdict.proven:
        return verdict
    fam = family if family is not None else default_family()
    not_ge = refute_geq(g, h, fam, solver)
    not_le = refute_geq(h, g, fam, solver)
    if not_ge is not None and not_le is not None:
        return OrderVerdict(
            Relation.INCOMPARABLE,
            evidence="one-sided witnesses both ways",
            witness=not_ge,
        )
    if not_ge is not None:
        return OrderVerdict(
            Relation.UNKNOWN,
            evidence=f"not >= (witnessed); converse open within family {fam.name}",
            witness=not_ge,
        )
    if not_le is not None:
        return OrderVerdict(
            Relation.UNKNOWN,
            evidence=f"not <= (witnessed); converse open within family {fam.name}",
            witness=not_le,
        )
    return OrderVerdict(
        Relation.UNKNOWN, evidence=f"equivalent modulo family {fam.name}"
    )


def check_outcome_ge(
    g: Position, h: Position, x: Position, solver: Solver | None = None
) -> bool:
    sv = solver if solver is not None else default_solver()
    return sv.outcome((g, x)) >= sv.outcome((h, x))


__all__ = [
    "Relation",
    "OrderVerdict",
    "cmp_sound",
    "ContextFamily",
    "get_family",
    "default_family",
    "family_names",
    "refute_geq",
    "equiv_mod",
    "compare",
    "Outcome",
]
