import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liechar import ParseError, RankMismatchError, ZPolynomial
from liechar.zpoly import (format_fixture_record, parse_poly, print_poly,
                           read_fixture_text)


def P(text, rank=8):
    return parse_poly(text, rank)


class TestArithmetic:
    def test_mul_variables(self):
        z8 = ZPolynomial.variable(8, 8)
        assert z8 * z8 == P("z8^2")

    def test_additive_inverse(self):
        p = P("3*z1 - 2*z2^2 + 7")
        assert (p + (-1) * p).is_zero

    def test_character_rearrangement(self):
        # z8^2 decomposes into the top character plus lower fundamentals
        chi = P("-1 - z1 - z7 - z8 + z8^2")
        assert chi + P("1 + z1 + z7 + z8") == P("z8^2")

    def test_scale(self):
        assert 3 * P("z1 - z2") == P("3*z1 - 3*z2")
        assert 0 * P("z1") == ZPolynomial.zero(8)

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatchError):
            P("z1", rank=2) + P("z1", rank=3)

    def test_zero_coefficients_dropped(self):
        p = ZPolynomial(2, {(1, 0): 5, (0, 1): 0})
        assert p.terms == {(1, 0): 5}

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            ZPolynomial(2, {(-1, 0): 1})


class TestCalculus:
    def test_derivative_square(self):
        assert P("z8^2").partial_derivative(8) == P("2*z8")

    def test_derivative_other_variable(self):
        assert P("z8^2").partial_derivative(1).is_zero

    def test_derivative_product(self):
        assert P("z1*z8 - z2").partial_derivative(8) == P("z1")

    def test_derivative_index_range(self):
        with pytest.raises(ValueError):
            P("z1").partial_derivative(9)

    def test_evaluate_constant(self):
        assert ZPolynomial.const(8, 1).evaluate([0] * 8) == 1

    def test_evaluate_big(self):
        point = [0, 0, 0, 0, 0, 0, 0, 248]
        assert P("z8^2 - z8").evaluate(point) == 248 ** 2 - 248 == 61256

    def test_evaluate_length_check(self):
        with pytest.raises(RankMismatchError):
            P("z1").evaluate([1, 2])


class TestParser:
    def test_factored_table_style(self):
        expanded = P("-124 - 28*z1 - 4*z7 - 64*z8 + 4*z8^2")
        assert P("-4*(31 + 7*z1 + z7 + 16*z8 - z8^2)") == expanded
        # the asterisk before '(' is optional, whitespace joins factors
        assert P("-4 (31 + 7 z1 + z7 + 16 z8 - z8^2)") == expanded

    def test_zero(self):
        assert P("0").is_zero

    def test_latex_thin_space_ignored(self):
        assert P(r"7\,z1\,z8") == P("7*z1*z8")

    def test_nested_parens_rejected(self):
        with pytest.raises(ParseError):
            P("2*(1 + 3*(z1))")

    def test_variable_beyond_rank(self):
        with pytest.raises(ParseError) as err:
            P("z3", rank=2)
        assert err.value.offset == 0

    def test_exponent_on_integer_rejected(self):
        with pytest.raises(ParseError):
            P("2^3")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            P("z1 )")

    def test_unknown_character_offset(self):
        with pytest.raises(ParseError) as err:
            P("z1 + q")
        assert err.value.offset == 5

    def test_paren_needs_scalar_prefix(self):
        with pytest.raises(ParseError):
            P("z1*(1 + z2)")


class TestPrinter:
    def test_zero(self):
        assert print_poly(ZPolynomial.zero(3)) == "0"

    def test_table_order(self):
        # constants first, later variables weigh more, unit coefficients bare
        p = P("z3 + z1*z2 - 1 + 2*z1*z8^2 + z8^3")
        assert print_poly(p) == "-1 + z1*z2 + z3 + 2*z1*z8^2 + z8^3"

    def test_leading_negative(self):
        assert print_poly(P("-1 - z1")) == "-1 - z1"


def _poly_strategy(rank):
    term = st.tuples(
        st.tuples(*[st.integers(0, 4) for _ in range(rank)]),
        st.integers(-10 ** 9, 10 ** 9))
    return st.lists(term, max_size=8).map(
        lambda pairs: ZPolynomial(rank, {e: c for e, c in pairs}))


triples = st.integers(1, 4).flatmap(
    lambda r: st.tuples(_poly_strategy(r), _poly_strategy(r), _poly_strategy(r)))


class TestProperties:
    @given(triples)
    def test_ring_axioms(self, polys):
        p, q, r = polys
        assert (p + q) * r == p * r + q * r
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)

    @given(triples)
    def test_derivatives_commute(self, polys):
        p, _, _ = polys
        for j in range(1, p.rank + 1):
            for k in range(j + 1, p.rank + 1):
                assert p.partial_derivative(j).partial_derivative(k) == \
                    p.partial_derivative(k).partial_derivative(j)

    @given(triples, st.lists(st.integers(-9, 9), min_size=4, max_size=4))
    def test_evaluate_is_ring_hom(self, polys, point):
        p, q, _ = polys
        point = point[:p.rank]
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)

    @settings(max_examples=200)
    @given(st.integers(1, 5).flatmap(_poly_strategy))
    def test_parse_print_round_trip(self, p):
        assert parse_poly(print_poly(p), p.rank) == p


class TestFixtureRecords:
    def test_round_trip(self):
        text = """# comment line
chi[0,0,0,0,0,0,0,2] = -1 - z1 - z7 - z8 + z8^2

a[8,8] = -4*(31 + 7*z1 + z7 + 16*z8 - z8^2)

b[8] = 120*z8
"""
        records = read_fixture_text(text, 8)
        assert [r.kind for r in records] == ["chi", "a", "b"]
        assert records[0].index == (0, 0, 0, 0, 0, 0, 0, 2)
        assert records[1].poly == P("-124 - 28*z1 - 4*z7 - 64*z8 + 4*z8^2")
        reprinted = "\n\n".join(format_fixture_record(r) for r in records)
        assert [r.poly for r in read_fixture_text(reprinted, 8)] == \
            [r.poly for r in records]

    def test_bad_header(self):
        with pytest.raises(ParseError):
            read_fixture_text("chi{1} = z1", 1)

    def test_wrong_label_count(self):
        with pytest.raises(ParseError):
            read_fixture_text("chi[1,2] = z1", 1)

    def test_packaged_files_parse(self, operator_fixtures, order2_chars,
                                  higher_chars):
        assert len(operator_fixtures.a) == 36
        assert len(operator_fixtures.b) == 8
        assert len(order2_chars) == 36
        assert len(higher_chars) == 151

    def test_multi_hundred_term_round_trip(self, operator_fixtures):
        big = operator_fixtures.a[(4, 4)]
        assert len(big) > 200
        assert parse_poly(print_poly(big), 8) == big
