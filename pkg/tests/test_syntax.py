import pytest
from hypothesis import given

import gen
from excupdate.parser import ParseError, parse
from excupdate.syntax import (
    DLP, TAU, Alphabet, KnowledgeBase, Literal, NestedProgram, Rule, RuleBase, classify,
    format_nested_rule, is_acyclic, neg, pos, to_text,
)


def keys(program):
    return sorted(map(repr, (r.key for r in program)))


class TestParse:
    def test_fact(self):
        r = parse("rule", "p.")
        assert r.head == (pos("p"),) and r.body == ()

    def test_default_negation_in_head_and_body(self):
        r = parse("rule", "~p :- ~q, ~r.")
        assert r.head == (neg("p"),)
        assert set(r.body) == {neg("q"), neg("r")}

    def test_constraint(self):
        r = parse("rule", ":- p, q.")
        assert r.head == () and set(r.body) == {pos("p"), pos("q")}

    def test_not_keyword(self):
        assert parse("rule", "p :- not q.").body == (neg("q"),)

    def test_fresh_ids_in_text_order(self):
        prog = parse("program", "p. q. r.")
        uids = [r.uid for r in prog]
        assert uids == sorted(uids) and len(set(uids)) == 3

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse("program", "p.\nq :- r,.")
        assert info.value.line == 2

    def test_separator_outside_dlp(self):
        with pytest.raises(ParseError):
            parse("program", "p.\n%%\nq.")

    def test_reserved_prefix(self):
        with pytest.raises(ParseError):
            parse("rule", "p :- _x.")
        assert parse("rule", "p :- _x.", permissive=True).body == (pos("_x"),)

    def test_dlp_sections(self):
        dlp = parse("dlp", "p.\n%%\n~p.\n%%\np :- p.\n")
        assert len(dlp) == 3

    def test_empty_rule(self):
        r = parse("rule", ":- .")
        assert r.head == () and r.body == ()
        assert to_text(r) == ":- ."

    def test_comments(self):
        assert len(parse("program", "% nothing\np. % the fact\n")) == 1


class TestPrint:
    def test_fact(self):
        assert to_text(Rule([pos("p")])) == "p."

    def test_constraint(self):
        assert to_text(Rule([], [pos("p"), pos("q")])) == ":- p, q."

    def test_nested_guard(self):
        text = "p :- true & ~((~q & ~r) | s)."
        rule = next(iter(parse("nested", text)))
        assert format_nested_rule(rule) == text

    def test_formula_precedence(self):
        kb = parse("kb", "p -> q <-> r\n(p | q) & r\np | q & r")
        assert to_text(kb).splitlines() == ["(p -> q) <-> r", "(p | q) & r", "p | (q & r)"]

    @given(gen.programs)
    def test_program_round_trip(self, program):
        assert keys(parse("program", to_text(program))) == keys(program)

    @given(gen.from_seed(gen.rulebase, gen.ATOMS))
    def test_rulebase_round_trip(self, rb):
        back = parse("rulebase", to_text(rb))
        assert [type(u) for u in back] == [type(u) for u in rb]
        assert to_text(back) == to_text(rb)

    @given(gen.from_seed(gen.dlp))
    def test_dlp_round_trip(self, dlp):
        back = parse("dlp", to_text(dlp))
        assert [keys(p) for p in back] == [keys(p) for p in dlp]

    @given(gen.from_seed(gen.kb, gen.ATOMS[:3]))
    def test_kb_round_trip(self, kb):
        back = parse("kb", to_text(kb))
        assert back.formulas == kb.formulas

    @given(gen.from_seed(gen.dlp))
    def test_nested_round_trip(self, dlp):
        from excupdate.condense import condense_sequence
        prog = condense_sequence("JU", dlp)
        assert parse("nested", to_text(prog), permissive=True) == prog


class TestClassify:
    def test_constraint(self):
        assert classify(parse("rule", ":- p, q.")) == {"constraint", "non_disjunctive"}

    def test_abolishing(self):
        assert classify(parse("rule", "~p :- q.")) == {"abolishing", "non_disjunctive"}

    def test_local_cycle(self):
        assert classify(parse("rule", "p :- p.")) == {"local_cycle", "non_disjunctive"}

    def test_fact(self):
        assert classify(parse("rule", "p.")) == {"fact", "non_disjunctive"}

    def test_canonical_tautology(self):
        assert "tautological_syntactic" in classify(TAU)

    @given(gen.rules)
    def test_flags_consistent(self, rule):
        flags = classify(rule)
        if "abolishing" in flags:
            assert "constraint" not in flags
        if "fact" in flags:
            assert "constraint" not in flags and "non_disjunctive" in flags


class TestAcyclic:
    @pytest.mark.parametrize("text, expected", [
        ("p. q :- p.", True),
        ("p :- p.", False),
        ("p :- ~q. q :- ~p.", False),
    ])
    def test_examples(self, text, expected):
        assert is_acyclic(parse("program", text)) is expected


@given(gen.literals)
def test_complement_involution(lit):
    assert lit.complement().complement() == lit
    assert lit.complement() != lit


def test_alphabet_rejects_duplicates():
    with pytest.raises(ValueError):
        Alphabet(("p", "p"))


def test_alphabet_order_is_first_occurrence():
    prog = parse("program", "q :- p. r.")
    assert Alphabet.of(prog).atoms == ("q", "p", "r")


def test_rulebase_identity_is_by_id():
    r = parse("rule", "p.")
    s = parse("rule", "p.")
    assert RuleBase([r, s]).units == (r, s)
    assert RuleBase([r, r]).units == (r,)
