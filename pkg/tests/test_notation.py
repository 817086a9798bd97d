import pytest

from crgames import (
    ParseError,
    ZERO,
    as_int,
    format_position,
    format_terms,
    mk_int,
    parse_terms,
    position_from_obj,
    position_to_obj,
    sh_node,
    sh_shape,
)
from crgames.notation import components_from_obj


class TestTextGrammar:
    def test_single_integer(self):
        (g,) = parse_terms("5")
        assert as_int(g) == 5

    def test_negative_integer(self):
        (g,) = parse_terms("-12")
        assert as_int(g) == -12

    def test_triple(self):
        (g,) = parse_terms("{10|8|-3}")
        assert sh_shape(g) == (10, 8, -3)

    def test_sum(self):
        terms = parse_terms("{10|8|-3}+{5|-2|-4}+2+-1")
        assert len(terms) == 4
        assert as_int(terms[2]) == 2 and as_int(terms[3]) == -1

    def test_whitespace(self):
        terms = parse_terms(" {6|0|-55} + {10|0|-36} ")
        assert len(terms) == 2

    @pytest.mark.parametrize("bad", ["", "{1|2}", "{1|2|3", "1 + ", "x", "{a|b|c}"])
    def test_errors_have_offsets(self, bad):
        with pytest.raises(ParseError) as exc:
            parse_terms(bad)
        assert exc.value.offset is not None

    def test_unordered_triples_parse(self):
        # {2|3|5} is a legal position even though it is not simple-hot ordered.
        (g,) = parse_terms("{2|3|5}")
        assert sh_shape(g) == (2, 3, 5)


class TestJson:
    def test_int_form(self):
        assert position_to_obj(mk_int(4)) == {"int": 4}
        assert as_int(position_from_obj({"int": -2})) == -2

    def test_sh_shorthand_input_only(self):
        g = position_from_obj({"sh": [3, 1, -2]})
        assert sh_shape(g) == (3, 1, -2)
        assert "sh" not in position_to_obj(g)

    def test_node_round_trip(self):
        g = sh_node(6, 0, -55)
        obj = position_to_obj(g)
        assert obj["L"] == [{"int": 6}] and obj["R"] == [{"int": -55}]
        assert obj["S"] == [[{"int": 0}]]
        assert position_from_obj(obj).key == g.key

    def test_nested_round_trip(self):
        from crgames import Node, STAR_BAR

        g = Node([STAR_BAR, mk_int(2)], [mk_int(-1)], [[sh_node(1, 0, -1)], [ZERO]])
        assert position_from_obj(position_to_obj(g)).key == g.key

    def test_sum_form(self):
        comps = components_from_obj({"sum": [{"int": 1}, {"sh": [2, 0, -2]}]})
        assert len(comps) == 2 and as_int(comps[0]) == 1

    @pytest.mark.parametrize(
        "bad",
        [
            {"int": "x"},
            {"sh": [1, 2]},
            {"L": [], "R": []},
            {"what": 1},
            [1, 2],
            {"L": [], "R": [], "S": [[{"int": 0}]]},
        ],
    )
    def test_bad_objects(self, bad):
        from crgames import InvalidPositionError

        with pytest.raises((ParseError, InvalidPositionError)):
            position_from_obj(bad)


class TestFormat:
    def test_int(self):
        assert format_position(mk_int(-7)) == "-7"

    def test_triple(self):
        assert format_position(sh_node(2, 3, 5)) == "{2|3|5}"

    def test_unfolded_int_prints_as_int(self):
        from crgames import Node

        assert format_position(Node([ZERO], [], [])) == "1"

    def test_nested_braces_for_display(self):
        from crgames import Node

        g = Node([mk_int(1)], [mk_int(5)], [[sh_node(-2, -1, 3)]])
        assert format_position(g) == "{1|{-2|-1|3}|5}"

    def test_general_matrix_is_json(self):
        from crgames import Node

        g = Node([ZERO, ZERO], [ZERO], [[ZERO], [ZERO]])
        assert format_position(g).startswith("{\"")

    def test_terms(self):
        assert format_terms([mk_int(2), sh_node(1, 0, -1)]) == "2 + {1|0|-1}"
        assert format_terms([]) == "0"

    def test_text_round_trip(self):
        text = "{10|8|-3} + {5|-2|-4} + 2 + -1"
        again = format_terms(parse_terms(text))
        assert parse_terms(again) == parse_terms(text)
