"""Grammar, desugaring, error reporting and print/parse round-trips."""

import pytest
from hypothesis import given, strategies as st

from ordsem.formulas import (
    BOT,
    And,
    Bot,
    Imp,
    Or,
    ParseError,
    Var,
    free_vars,
    neg,
    parse,
    pretty,
    subformulas,
)


class TestParse:
    def test_weak_lem_desugaring(self):
        p = Var("p")
        assert parse("~p | ~~p") == Or(Imp(p, BOT), Imp(Imp(p, BOT), BOT))

    def test_imp_right_associative(self):
        assert parse("p -> q -> r") == Imp(Var("p"), Imp(Var("q"), Var("r")))

    def test_and_or_precedence(self):
        assert parse("p & q | r") == Or(And(Var("p"), Var("q")), Var("r"))
        assert parse("p | q -> r") == Imp(Or(Var("p"), Var("q")), Var("r"))

    def test_neg_binds_tightest(self):
        assert parse("~p & q") == And(neg(Var("p")), Var("q"))

    def test_bot_keyword(self):
        assert parse("bot") == BOT
        assert parse("bottom") == Var("bottom")  # only the exact word is reserved

    def test_identifiers(self):
        assert parse("x_1") == Var("x_1")
        assert parse("pQ2") == Var("pQ2")

    def test_parens(self):
        assert parse("(p -> q) -> r") == Imp(Imp(Var("p"), Var("q")), Var("r"))


class TestParseErrors:
    def test_truncated_input_offset(self):
        with pytest.raises(ParseError) as info:
            parse("p ->")
        assert info.value.offset == 4

    def test_expected_token_set(self):
        with pytest.raises(ParseError) as info:
            parse("p -> )")
        assert "ident" in info.value.expected

    def test_unbalanced_paren(self):
        with pytest.raises(ParseError) as info:
            parse("(p -> q")
        assert info.value.offset == 7

    def test_garbage_character(self):
        with pytest.raises(ParseError) as info:
            parse("p + q")
        assert info.value.offset == 2

    def test_trailing_tokens(self):
        with pytest.raises(ParseError):
            parse("p q")


class TestPretty:
    def test_round_trip_examples(self):
        for text in (
            "p", "bot", "~p", "~~p", "p -> q -> r", "(p -> q) -> r",
            "p & q | r", "p & (q | r)", "~(p & q)", "~p | ~~p",
            "p | (q | r)", "(p | q) | r",
        ):
            ast = parse(text)
            assert parse(pretty(ast)) == ast

    def test_negation_sugar_restored(self):
        assert pretty(parse("p -> bot")) == "~p"


def _formulas(max_depth: int):
    atoms = st.one_of(
        st.sampled_from([Var("p"), Var("q"), Var("r")]), st.just(BOT)
    )
    return st.recursive(
        atoms,
        lambda children: st.one_of(
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Imp, children, children),
        ),
        max_leaves=2 ** max_depth,
    )


class TestRoundTripProperty:
    @given(_formulas(4))
    def test_parse_of_pretty_is_identity(self, ast):
        assert parse(pretty(ast)) == ast


class TestHelpers:
    def test_free_vars(self):
        assert free_vars(parse("p -> (q & ~p)")) == {"p", "q"}
        assert free_vars(BOT) == frozenset()

    def test_subformulas_child_first(self):
        subs = subformulas(parse("p -> (p & q)"))
        assert subs.index(Var("p")) < subs.index(And(Var("p"), Var("q")))
        assert len(subs) == 4
