import random

import pytest

from crgames import (
    IntGame,
    Node,
    STAR_BAR,
    ZERO,
    add,
    add_all,
    as_int,
    collapse_integer_bracket,
    equiv_mod,
    get_family,
    mk_int,
    outcome,
    parse_terms,
    remove_dominated_left,
    remove_dominated_right,
    replace_sr_option,
    sh_node,
    simplify,
)

from test_arena import rand_position

FAMILY = None


def small_family():
    global FAMILY
    if FAMILY is None:
        FAMILY = get_family("day2-mixed", budget=400)
    return FAMILY


class TestCollapse:
    @pytest.mark.parametrize(
        "triple,expected",
        [((2, 3, 5), 3), ((-5, -3, -2), -3), ((0, 1, 3), 1), ((0, 1, 1), 1), ((-3, -1, 0), -1)],
    )
    def test_collapses(self, triple, expected):
        assert as_int(collapse_integer_bracket(sh_node(*triple))) == expected

    @pytest.mark.parametrize("triple", [(1, 0, -1), (2, 2, 5), (-1, 0, 5), (9, 9, 9)])
    def test_leaves_non_matching(self, triple):
        assert as_int(collapse_integer_bracket(sh_node(*triple))) is None

    def test_integer_untouched(self):
        assert collapse_integer_bracket(mk_int(7)).key == mk_int(7).key

    def test_bottom_up_subterms(self):
        g = Node([sh_node(2, 3, 5)], [mk_int(-1)], [[sh_node(0, 1, 3)]])
        r = collapse_integer_bracket(g)
        assert as_int(r.left_options[0]) == 3
        assert as_int(r.same_round[0][0]) == 1

    def test_preserves_equivalence(self):
        g = sh_node(2, 3, 5)
        assert equiv_mod(collapse_integer_bracket(g), g, small_family())


class TestRemoveDominatedLeft:
    def test_integer_rows(self):
        g = Node([mk_int(2), mk_int(1)], [ZERO], [[ZERO], [ZERO]])
        r = remove_dominated_left(g)
        assert len(r.left_options) == 1 and as_int(r.left_options[0]) == 2
        assert equiv_mod(r, g, small_family())

    def test_single_move_unchanged(self):
        g = sh_node(1, 0, -1)
        assert remove_dominated_left(g).key == g.key

    def test_unknown_verdicts_block(self):
        a = Node([STAR_BAR], [ZERO], [[ZERO]])
        b = sh_node(1, 0, -1)
        g = Node([a, b], [ZERO], [[ZERO], [ZERO]])
        assert remove_dominated_left(g).key == g.key

    def test_same_round_condition_matters(self):
        # Left options equal, but row 0's entries are strictly worse:
        # deleting row 1 would need some entry of row 0 to dominate.
        g = Node(
            [mk_int(1), mk_int(1)],
            [ZERO, ZERO],
            [[mk_int(-1), mk_int(-1)], [mk_int(1), mk_int(1)]],
        )
        r = remove_dominated_left(g)
        # Row with entries 1,1 dominates the row with -1,-1; only one row stays.
        assert len(r.left_options) == 1
        assert [as_int(e) for e in r.same_round[0]] == [1, 1]
        assert equiv_mod(r, g, small_family())

    def test_duplicate_rows_collapse_sums(self):
        s = add(mk_int(2), mk_int(3))
        r = simplify(s)
        assert as_int(r) == 5


class TestRemoveDominatedRight:
    def test_duplicate_column(self):
        g = Node([mk_int(3)], [mk_int(-1), mk_int(-1)], [[ZERO, ZERO]])
        r = remove_dominated_right(g)
        assert len(r.right_options) == 1
        assert equiv_mod(r, g, small_family())

    def test_one_by_one_unchanged(self):
        g = sh_node(4, 2, 1)
        assert remove_dominated_right(g).key == g.key

    def test_keeps_better_column_for_right(self):
        # Column with entry 1 dominates (is >=) column with entry -1, so
        # the 1-column goes and the -1-column stays.
        g = Node([mk_int(5)], [ZERO, ZERO], [[mk_int(1), mk_int(-1)]])
        r = remove_dominated_right(g)
        assert [as_int(e) for e in r.same_round[0]] == [-1]
        assert equiv_mod(r, g, small_family())


class TestReplaceSrOption:
    def test_row_two_one(self):
        g = Node([ZERO], [ZERO, ZERO], [[mk_int(2), mk_int(1)]])
        r = replace_sr_option(g)
        assert [as_int(e) for e in r.same_round[0]] == [1, 1]
        assert equiv_mod(r, g, small_family())

    def test_incomparable_unchanged(self):
        g = Node([ZERO], [ZERO, ZERO], [[STAR_BAR, mk_int(1)]])
        assert replace_sr_option(g).key == g.key

    def test_equal_entries_unchanged(self):
        g = Node([ZERO], [ZERO, ZERO], [[mk_int(1), mk_int(1)]])
        assert replace_sr_option(g).key == g.key


class TestSimplify:
    def test_bracket_plus_zero(self):
        s = add_all(parse_terms("{2|3|5}+0"))
        assert as_int(simplify(s)) == 3

    def test_star_bar_fixed(self):
        assert simplify(STAR_BAR).key == STAR_BAR.key

    def test_bracket_example(self):
        assert as_int(simplify(sh_node(0, 1, 3))) == 1

    def test_monotone_size(self):
        rng = random.Random(21)
        for _ in range(60):
            g = rand_position(rng)
            r = simplify(g)
            assert r.node_count <= g.node_count
            assert r.birthday <= g.birthday

    def test_preserves_equivalence_on_corpus(self):
        rng = random.Random(22)
        fam = small_family()
        for _ in range(25):
            g = rand_position(rng)
            r = simplify(g)
            if r.key != g.key:
                assert equiv_mod(r, g, fam)

    def test_outcome_never_flips(self):
        rng = random.Random(23)
        for _ in range(60):
            g = rand_position(rng)
            for op in (
                collapse_integer_bracket,
                remove_dominated_left,
                remove_dominated_right,
                replace_sr_option,
                simplify,
            ):
                assert outcome(op(g)) == outcome(g)

    def test_weak_confluence(self):
        rng = random.Random(24)
        fam = small_family()
        alternate = ("sr", "right", "left", "collapse")
        for _ in range(15):
            g = rand_position(rng)
            a = simplify(g)
            b = simplify(g, scan=alternate)
            if a.key != b.key:
                assert equiv_mod(a, b, fam)

    def test_scan_order_validated(self):
        with pytest.raises(ValueError):
            simplify(ZERO, scan=("collapse",))
