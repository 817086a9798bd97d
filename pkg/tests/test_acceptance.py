"""Acceptance suite: one test per criterion, exact tolerances, stated
time budgets.  Run with ``pytest tests/test_acceptance.py -v -s`` to see
one PASS line per criterion."""

import itertools
import random
import time

from crgames import (
    IntGame,
    Node,
    Outcome,
    SHGame,
    SHSum,
    STAR_BAR,
    SumArena,
    ZERO,
    add,
    add_all,
    collapse_integer_bracket,
    conjugate,
    equiv_mod,
    get_family,
    mk_int,
    normalize,
    outcome,
    refute_geq,
    remove_dominated_left,
    remove_dominated_right,
    replace_sr_option,
    sh_node,
    sh_value_oracle,
    simplify,
    solve,
    solve_sh,
    structural_key,
)
from crgames.matching import AuxGraph, brute_force_matching, min_weight_matching
from crgames.solver import default_solver
from crgames.td2 import TD2Position, TD2Row, parse_td2, solve_td2, td2_outcome_oracle


def report(name: str, elapsed: float, budget: float) -> None:
    print(f"ACCEPTANCE PASS: {name} ({elapsed:.2f}s, budget {budget:.0f}s)")
    assert elapsed < budget, f"{name} exceeded its {budget}s budget: {elapsed:.2f}s"


def test_criterion_1_two_game_example():
    t0 = time.perf_counter()
    s = SHSum((SHGame(6, 0, -55), SHGame(10, 0, -36)))
    sol = solve_sh(s)
    assert sol.score == -30
    assert sol.outcome is Outcome.RIGHT_WIN
    assert sh_value_oracle(s) == -30
    report("two-game example score -30, RightWin, oracle agrees", time.perf_counter() - t0, 1)


def test_criterion_2_section3_sum():
    t0 = time.perf_counter()
    s = SHSum((SHGame(10, 8, -3), SHGame(5, -2, -4)), 2 + (-1))
    base, games = normalize(s)
    assert base == 7
    assert games == (SHGame(2, 0, -11), SHGame(7, 0, -2))
    sol = solve_sh(s)
    assert sol.aux_graph.edges == ()
    assert sol.score == 7
    assert sh_value_oracle(s) == 7

    # Cor. 1: the principal moves stay out of the integer components.
    arena = SumArena([sh_node(10, 8, -3), sh_node(5, -2, -4), mk_int(2), mk_int(-1)])
    result = solve(arena)
    left, right = result.principal
    assert left[0] in (0, 1) and right[0] in (0, 1)
    report("section-3 sum normalizes to 7 with empty matching", time.perf_counter() - t0, 1)


def test_criterion_3_td2_worked_example():
    t0 = time.perf_counter()
    rows = [(56, 7), (37, 11), (24, 15), (20, 17)] + [(1, 10)] * 5 + [(1, 9)]
    position = TD2Position(TD2Row(p, q) for p, q in rows)
    assert sum(p - q for p, q in rows) == 34  # local strategy score
    sol = solve_td2(position)
    assert sol.solution.base == 34
    assert sol.solution.right_plan.pairs == ((1, 2), (3, 4))
    weights = dict(
        ((i, j), w) for i, j, w in sol.solution.aux_graph.edges
    )
    assert weights[(1, 2)] == -30 and weights[(3, 4)] == -5
    assert sol.solution.right_plan.total_weight == -35
    assert sol.score == -1
    assert sol.outcome is Outcome.RIGHT_WIN
    report("TD2 worked example: local 34, matching -35, score -1", time.perf_counter() - t0, 1)


def test_criterion_4_matching_exactness():
    t0 = time.perf_counter()
    rng = random.Random(20260810)
    for _ in range(1000):
        n = rng.randint(1, 12)
        edges = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if rng.random() < 0.5:
                    edges.append((i, j, rng.randint(-50, -1)))
        graph = AuxGraph(n, tuple(edges))
        assert min_weight_matching(graph) == brute_force_matching(graph)
    report("matching exactness on 1000 random graphs", time.perf_counter() - t0, 30)


def test_criterion_5_td2_oracle_equivalence():
    t0 = time.perf_counter()
    types = [(p, s - p) for s in range(1, 15) for p in range(0, s + 1)]
    seen = set()
    count = 0
    memo: dict = {}
    for r in range(1, 5):
        for combo in itertools.combinations_with_replacement(types, r):
            if sum(p + q for p, q in combo) > 14:
                continue
            key = tuple(sorted(combo))
            if key in seen:
                continue
            seen.add(key)
            position = TD2Position(TD2Row(p, q) for p, q in combo)
            assert td2_outcome_oracle(position, memo) is Outcome.from_sign(
                solve_td2(position).score
            ), combo
            count += 1
    assert count > 16000
    report(
        f"TD2 oracle equivalence on {count} exhaustive positions",
        time.perf_counter() - t0,
        300,
    )


def test_criterion_6_outcome_axioms_and_day1_chain():
    t0 = time.perf_counter()
    for n in range(1, 6):
        assert outcome(mk_int(n)) is Outcome.LEFT_WIN
        assert outcome(mk_int(-n)) is Outcome.RIGHT_WIN
    assert outcome(ZERO) is Outcome.DRAW
    assert outcome(STAR_BAR) is Outcome.DRAW

    family = get_family("day2-mixed")
    chain = [mk_int(1), ZERO, STAR_BAR, mk_int(-1)]
    for above, below in zip(chain, chain[1:]):
        # Zero counter-witnesses against "above >= below" ...
        assert refute_geq(above, below, family) is None
        # ... and a strictness witness for the converse.
        witness = refute_geq(below, above, family)
        assert witness is not None
        sv = default_solver()
        assert sv.outcome((below, witness)) < sv.outcome((above, witness))
    report("outcome axioms and Day-1 chain over day2-mixed", time.perf_counter() - t0, 120)


def _corpus(rng) -> list:
    from test_arena import rand_position

    corpus = []
    while len(corpus) < 120:
        corpus.append(rand_position(rng))
    for _ in range(30):
        k = rng.randint(1, 3)
        t = rng.randint(0, 2)
        bracket = sh_node(k - 1, k, k + t) if rng.random() < 0.5 else sh_node(-k - t, -k, -k + 1)
        corpus.append(
            Node([bracket], [mk_int(rng.randint(-2, 2))], [[rand_position(rng, 1)]])
        )
    for _ in range(30):
        a, b = rng.randint(-2, 2), rng.randint(-2, 2)
        lo, hi = min(a, b), max(a, b)
        corpus.append(
            Node(
                [mk_int(hi), mk_int(lo)],
                [mk_int(rng.randint(-2, 2))],
                [[mk_int(rng.randint(-2, 2))], [mk_int(rng.randint(-2, 2))]],
            )
        )
    for _ in range(20):
        terms = [mk_int(rng.randint(-2, 2))]
        for _ in range(rng.randint(1, 2)):
            vals = sorted((rng.randint(-2, 2) for _ in range(3)), reverse=True)
            terms.append(sh_node(*vals))
        corpus.append(add_all(terms))
    return corpus


def test_criterion_7_algebraic_laws():
    t0 = time.perf_counter()
    rng = random.Random(97)
    corpus = _corpus(rng)
    assert len(corpus) == 200
    family = get_family("day2-mixed")

    for g in corpus:
        assert structural_key(add(g, ZERO)) == structural_key(g)

    small = [g for g in corpus if g.node_count <= 30]
    assert len(small) >= 100
    for _ in range(100):
        g, h = rng.choice(small), rng.choice(small)
        assert outcome(add(g, h)) == outcome(add(h, g))
    for _ in range(40):
        g, h, k = (rng.choice(small) for _ in range(3))
        assert outcome(add(add(g, h), k)) == outcome(add(g, add(h, k)))

    scanned: set = set()
    changed = 0
    for g in corpus:
        reduced = simplify(g)
        ops = (
            collapse_integer_bracket(g),
            remove_dominated_left(g),
            remove_dominated_right(g),
            replace_sr_option(g),
        )
        for out in ops:
            assert outcome(out) == outcome(g)
        for out in (reduced, *ops):
            pair = (out.key, g.key)
            if out.key == g.key or pair in scanned:
                continue
            scanned.add(pair)
            changed += 1
            # A scan-local solver keeps the memo (and GC pressure) bounded.
            from crgames.solver import Solver

            assert equiv_mod(out, g, family, solver=Solver()), (g, out)
    assert changed >= 40  # the corpus genuinely exercises the rewrites
    report(
        f"algebraic laws on 200 positions ({changed} reductions family-checked)",
        time.perf_counter() - t0,
        600,
    )


def test_criterion_8_paper_counterexample():
    t0 = time.perf_counter()
    g = sh_node(2, 0, -4)
    h = sh_node(3, 0, -1)
    assert outcome(g) is Outcome.DRAW
    assert outcome([g, h, conjugate(h)]) is Outcome.RIGHT_WIN
    witness = refute_geq(SumArena([h, conjugate(h)]), ZERO, get_family("sh-only"))
    assert witness is not None
    sv = default_solver()
    assert sv.outcome((h, conjugate(h), witness)) < sv.outcome((witness,))
    report("conjugates are not inverses: witness found", time.perf_counter() - t0, 1)
