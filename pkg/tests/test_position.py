import pytest

from crgames import (
    InvalidPositionError,
    IntGame,
    Node,
    Outcome,
    STAR_BAR,
    ZERO,
    as_int,
    birthday,
    conjugate,
    is_dicot,
    mk_int,
    relabel,
    sh_node,
    structural_key,
    unfold,
)


class TestIntGame:
    def test_zero_has_no_moves(self):
        g = mk_int(0)
        assert g.left_options == () and g.right_options == () and g.same_round == ()

    def test_one_unfolds_to_single_left_option(self):
        g = mk_int(1)
        assert [as_int(o) for o in g.left_options] == [0]
        assert g.right_options == ()

    def test_minus_one_unfolds_to_single_right_option(self):
        g = mk_int(-1)
        assert [as_int(o) for o in g.right_options] == [0]
        assert g.left_options == ()

    @pytest.mark.parametrize("n", [0, 1, -1, 5, -7])
    def test_unfold_matches_recursive_definition(self, n):
        u = unfold(mk_int(n))
        if n > 0:
            assert len(u.left) == 1 and as_int(u.left[0]) == n - 1 and not u.right
        elif n < 0:
            assert len(u.right) == 1 and as_int(u.right[0]) == n + 1 and not u.left
        else:
            assert not u.left and not u.right
        assert u.key == mk_int(n).key

    def test_unfolded_chain_canonicalizes(self):
        g = ZERO
        for _ in range(4):
            g = Node([g], [], [])
        assert g.key == mk_int(4).key
        h = ZERO
        for _ in range(3):
            h = Node([], [h], [])
        assert h.key == mk_int(-3).key

    def test_left_option_to_negative_is_not_an_integer(self):
        assert as_int(Node([mk_int(-1)], [], [])) is None


class TestMatrixShapeInvariant:
    def test_full_matrix_required(self):
        with pytest.raises(InvalidPositionError):
            Node([ZERO, ZERO], [ZERO], [[ZERO]])

    def test_ragged_rows_rejected(self):
        with pytest.raises(InvalidPositionError):
            Node([ZERO], [ZERO, ZERO], [[ZERO]])

    def test_matrix_must_be_empty_without_both_sides(self):
        with pytest.raises(InvalidPositionError):
            Node([ZERO], [], [[ZERO]])

    def test_non_position_rejected(self):
        with pytest.raises(InvalidPositionError):
            Node([1], [], [])


class TestConjugate:
    def test_sh_triple(self):
        g = sh_node(1, 2, -2)
        assert conjugate(g).key == sh_node(2, -2, -1).key

    def test_nested_example(self):
        inner = sh_node(-2, -1, 3)
        h = Node([mk_int(1)], [mk_int(5)], [[inner]])
        expect = Node([mk_int(-5)], [mk_int(-1)], [[sh_node(-3, 1, 2)]])
        assert conjugate(h).key == expect.key

    def test_zero_fixed_point(self):
        assert conjugate(ZERO).key == ZERO.key

    def test_involution(self):
        for g in [sh_node(1, 2, -2), STAR_BAR, mk_int(4), Node([STAR_BAR], [], [])]:
            assert conjugate(conjugate(g)).key == g.key

    def test_int_negation(self):
        assert conjugate(mk_int(7)).key == mk_int(-7).key

    def test_transposes_matrix(self):
        g = Node(
            [mk_int(1), mk_int(2)],
            [mk_int(-1)],
            [[mk_int(3)], [mk_int(4)]],
        )
        c = conjugate(g)
        assert [as_int(x) for x in c.left_options] == [1]
        assert [as_int(x) for x in c.right_options] == [-1, -2]
        assert [[as_int(e) for e in row] for row in c.same_round] == [[-3, -4]]


class TestBirthday:
    def test_zero(self):
        assert birthday(ZERO) == 0

    def test_star_bar(self):
        assert birthday(STAR_BAR) == 1

    def test_sh_triple(self):
        # Longest option path: IntGame(2) or IntGame(-2), depth 2, plus the root.
        assert birthday(sh_node(1, 2, -2)) == 3

    def test_int_games(self):
        assert birthday(mk_int(9)) == 9 and birthday(mk_int(-4)) == 4

    def test_unfolded_matches_compact(self):
        assert birthday(unfold(mk_int(6))) == 6


class TestDicot:
    def test_star_bar(self):
        assert is_dicot(STAR_BAR)

    def test_integer_is_not(self):
        assert not is_dicot(mk_int(1))

    def test_zero_is(self):
        assert is_dicot(ZERO)

    def test_deep_follower_violation(self):
        g = Node([mk_int(1)], [ZERO], [[ZERO]])
        assert not is_dicot(g)


class TestStructuralKey:
    def test_equal_ints(self):
        assert structural_key(mk_int(3)) == structural_key(mk_int(3))

    def test_zero_vs_star_bar(self):
        assert structural_key(ZERO) != structural_key(STAR_BAR)

    def test_conjugate_involution_key(self):
        g = sh_node(1, 2, -2)
        assert structural_key(g) == structural_key(conjugate(conjugate(g)))

    def test_duplicates_preserved(self):
        once = Node([ZERO], [], [])
        twice = Node([ZERO, ZERO], [], [])
        assert structural_key(once) != structural_key(twice)


class TestRelabel:
    def test_permutation_shape(self):
        g = Node(
            [mk_int(1), mk_int(2)],
            [mk_int(-1), mk_int(-2)],
            [[mk_int(1), mk_int(2)], [mk_int(3), mk_int(4)]],
        )
        p = relabel(g, [1, 0], [1, 0])
        assert [as_int(x) for x in p.left_options] == [2, 1]
        assert [[as_int(e) for e in row] for row in p.same_round] == [[4, 3], [2, 1]]

    def test_rejects_non_permutation(self):
        g = Node([mk_int(1), mk_int(2)], [], [])
        with pytest.raises(InvalidPositionError):
            relabel(g, [0, 0], [])


class TestStackSafety:
    def test_deep_unfolded_chain_ops(self):
        depth = 10_000
        g = ZERO
        for _ in range(depth):
            g = Node([g], [], [])
        assert g.birthday == depth
        assert g.key == mk_int(depth).key
        assert not is_dicot(g)
        assert as_int(conjugate(g)) == -depth

    def test_compact_int_games_are_cheap(self):
        g = mk_int(10_000)
        assert birthday(g) == 10_000
        assert conjugate(g).key == mk_int(-10_000).key


class TestOutcomeOrder:
    def test_total_order(self):
        assert Outcome.LEFT_WIN > Outcome.DRAW > Outcome.RIGHT_WIN

    def test_strings(self):
        assert [str(o) for o in (Outcome.LEFT_WIN, Outcome.DRAW, Outcome.RIGHT_WIN)] == ["L", "D", "R"]

    def test_from_sign(self):
        assert Outcome.from_sign(17) is Outcome.LEFT_WIN
        assert Outcome.from_sign(0) is Outcome.DRAW
        assert Outcome.from_sign(-2) is Outcome.RIGHT_WIN
