from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from cantorgroups.cantor import (CantorPoint, PartitionSet, common_refinement, enumerate_points,
                                 expand, lex_cmp, parse_word, prepend, shift, standard_partition,
                                 strip_prefix, validate_partition, word_measure)
from cantorgroups.errors import AlphabetError, GapError, OverlapError, ParseError, WordTooLong

from oracles import is_partition, point_seq, refine, seq

words = st.text("01", max_size=8)
periods = st.text("01", min_size=1, max_size=6)
points = st.builds(CantorPoint, st.text("01", max_size=5), periods)


def P(*ws):
    return validate_partition(ws)


class TestWords:
    def test_lex_cmp(self):
        assert lex_cmp("", "0") < 0
        assert lex_cmp("01", "1") < 0
        assert lex_cmp("10", "10") == 0

    def test_empty_word_syntax(self):
        assert parse_word("e") == ""
        assert parse_word("∅") == ""

    def test_alphabet(self):
        with pytest.raises(AlphabetError):
            parse_word("012")

    def test_length_cap(self):
        with pytest.raises(WordTooLong):
            parse_word("0" * (2 ** 16 + 1))

    @given(words, words)
    def test_lex_cmp_matches_string_order(self, a, b):
        assert lex_cmp(a, b) == (a > b) - (a < b)

    def test_measure_is_exact(self):
        assert word_measure("010") == Fraction(1, 8)


class TestPartitions:
    def test_validate(self):
        assert P("0", "10", "11").words == ("0", "10", "11")
        with pytest.raises(OverlapError):
            P("0", "1", "1")
        with pytest.raises(GapError):
            P("0", "10")

    def test_prefix_overlap_rejected(self):
        with pytest.raises(OverlapError):
            P("0", "01", "1")

    def test_expand(self):
        assert expand(P("0", "1"), 1) == P("00", "01", "1")
        assert expand(P(""), 1) == P("0", "1")
        assert expand(P("0", "10", "11"), 2) == P("0", "100", "101", "11")

    def test_common_refinement_examples(self):
        assert common_refinement(P("0", "1"), P("0", "1")) == P("0", "1")
        assert common_refinement(P("0", "1"), P("00", "01", "1")) == P("00", "01", "1")
        # derived from the pairwise intersection oracle
        assert refine(["0", "10", "11"], ["00", "01", "1"]) == ["00", "01", "10", "11"]
        assert common_refinement(P("0", "10", "11"), P("00", "01", "1")) == P("00", "01", "10", "11")

    def test_text_round_trip(self):
        p = PartitionSet.parse("{00,01,1}")
        assert str(p) == "{00,01,1}"
        assert PartitionSet.parse("{e}") == P("")
        with pytest.raises(ParseError):
            PartitionSet.parse("00,01,1")

    @given(st.lists(st.integers(1, 40), max_size=6), st.lists(st.integers(1, 40), max_size=6))
    def test_refinement_agrees_with_oracle(self, xs, ys):
        p, q = P(""), P("")
        for i in xs:
            p = expand(p, i % len(p) + 1)
        for j in ys:
            q = expand(q, j % len(q) + 1)
        r = common_refinement(p, q)
        assert is_partition(r.words)
        assert list(r.words) == refine(p.words, q.words)

    def test_standard_partition(self):
        assert standard_partition(2) == P("00", "01", "10", "11")


class TestPoints:
    def test_shift(self):
        assert shift(CantorPoint("", "01")) == CantorPoint("", "10")
        assert shift(CantorPoint("1", "0")) == CantorPoint("", "0")
        assert shift(CantorPoint("", "110")) == CantorPoint("", "101")

    def test_strip_prefix(self):
        assert strip_prefix("0", CantorPoint("0", "1")) == CantorPoint("", "1")
        assert strip_prefix("1", CantorPoint("0", "1")) is None
        assert strip_prefix("01", CantorPoint("", "01")) == CantorPoint("", "01")

    def test_prepend(self):
        assert prepend("1", CantorPoint("", "0")) == CantorPoint("1", "0")
        x = CantorPoint("10", "011")
        assert prepend("", x) == x
        assert prepend("01", CantorPoint("", "01")) == CantorPoint("", "01")

    def test_normal_form(self):
        x = CantorPoint("0101", "0101")
        assert (x.pre, x.per) == ("", "01")
        assert str(CantorPoint("10", "0")) == "1(0)"
        assert CantorPoint.parse("0(10)") == CantorPoint("", "01")
        assert str(CantorPoint.parse("01(10)")) == "01(10)"

    def test_bad_point(self):
        with pytest.raises(ParseError):
            CantorPoint.parse("01")

    def test_enumerate_examples(self):
        show = lambda xs: [str(x) for x in xs]
        assert show(enumerate_points(0, 1)) == ["(0)", "(1)"]
        assert show(enumerate_points(0, 2)) == ["(0)", "(01)", "(10)", "(1)"]
        assert show(enumerate_points(1, 1)) == ["(0)", "1(0)", "0(1)", "(1)"]

    def test_enumerate_is_duplicate_free(self):
        xs = enumerate_points(3, 3)
        assert len(set(xs)) == len(xs)
        assert all(len(x.pre) <= 3 and len(x.per) <= 3 for x in xs)

    @pytest.mark.parametrize("pre,per", [(0, 3), (2, 3), (3, 2)])
    def test_enumerate_is_complete(self, pre, per):
        # every raw (preperiod, period) pair within the bounds, compared as sequences
        expected = {seq(a, b, 64)
                    for i in range(pre + 1) for a in map("".join, product("01", repeat=i))
                    for j in range(1, per + 1) for b in map("".join, product("01", repeat=j))}
        got = [point_seq(x, 64) for x in enumerate_points(pre, per)]
        assert len(got) == len(set(got))
        assert set(got) == expected

    @given(st.text("01", max_size=5), periods)
    def test_equality_is_sequence_equality(self, pre, per):
        x = CantorPoint(pre, per)
        assert point_seq(x) == seq(pre, per)

    @given(words, points)
    def test_strip_undoes_prepend(self, w, x):
        assert strip_prefix(w, prepend(w, x)) == x

    @given(points)
    def test_shift_drops_one_bit(self, x):
        assert point_seq(shift(x), 40) == point_seq(x, 41)[1:]

    @given(points, points)
    def test_equal_points_have_equal_sequences(self, x, y):
        assert (x == y) == (point_seq(x, 64) == point_seq(y, 64))
