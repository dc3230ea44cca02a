import pytest
from hypothesis import given

import gen
import oracles
from excupdate.causal import (
    check_property, dlp_models, encode_dlp, expected_fact_update, rejected,
)
from excupdate.parser import parse
from excupdate.syntax import DLP, Alphabet, is_acyclic


def dlp(*texts):
    return DLP(parse("program", t) for t in texts)


def uids(d, *positions):
    return {d[i].rules[k].uid for i, k in positions}


P1 = ("p.", "~p.", "p :- p.")


class TestRejected:
    def test_ju(self):
        d = dlp(*P1)
        assert rejected("JU", d, {"p"}) == uids(d, (0, 0), (1, 0))

    def test_as(self):
        d = dlp(*P1)
        assert rejected("AS", d, {"p"}) == uids(d, (1, 0))

    def test_single_program(self):
        assert rejected("JU", dlp("p. ~p. q :- ~p."), {"p"}) == frozenset()

    def test_disjunctive_rejected(self):
        with pytest.raises(ValueError):
            dlp("p; q.")


class TestModels:
    def test_p1(self):
        d = dlp(*P1)
        assert dlp_models("JU", d) == {frozenset()}
        assert dlp_models("AS", d) == {frozenset(), frozenset("p")}

    def test_fact_override(self):
        d = dlp("p. q.", "~p.")
        assert dlp_models("JU", d) == dlp_models("AS", d) == {frozenset("q")}

    def test_single_program_is_stable_semantics(self):
        assert dlp_models("JU", dlp("p :- ~q. q :- ~p.")) == {frozenset("p"), frozenset("q")}

    def test_constraints_are_encoded(self):
        d = dlp("p :- ~q. q :- ~p.", ":- p.")
        assert dlp_models("AS", d) == {frozenset("q")}
        assert all(r.head for p in encode_dlp(d) for r in p)

    def test_semantics_name(self):
        with pytest.raises(ValueError):
            dlp_models("XY", dlp("p."))

    @given(gen.from_seed(gen.dlp, gen.ATOMS[:3], 3, 2))
    def test_matches_oracle(self, d):
        a = Alphabet(gen.ATOMS[:3])
        programs = list(encode_dlp(d))
        atoms = a.extend(Alphabet.of(*programs).atoms).atoms
        for variant in ("JU", "AS"):
            expected = {m - {"_bot"} for m in oracles.dlp_models(variant, programs, atoms)}
            assert dlp_models(variant, d, a) == expected

    @given(gen.from_seed(gen.dlp, gen.ATOMS, 2, 4))
    def test_short_dlps_agree(self, d):
        assert dlp_models("JU", d) == dlp_models("AS", d)

    @given(gen.from_seed(gen.dlp, gen.ATOMS, 3, 4))
    def test_acyclic_dlps_agree(self, d):
        if is_acyclic(d.all_rules()):
            assert dlp_models("JU", d) == dlp_models("AS", d)

    @given(gen.from_seed(gen.dlp, gen.ATOMS, 3, 4))
    def test_as_contains_ju(self, d):
        assert dlp_models("JU", d) <= dlp_models("AS", d)


class TestProperties:
    def test_expected_fact_update(self):
        assert expected_fact_update(dlp("p. q.", "~p.")) == frozenset("q")

    def test_fact_update_needs_facts(self):
        with pytest.raises(ValueError):
            check_property("fact_update", dlp("p :- q."), set())

    def test_causal_rejection_witness(self):
        d = dlp("p.", "~p :- ~q.", "q.")
        assert not check_property("causal_rejection", d, {frozenset("q")})
        assert check_property("causal_rejection", d, {frozenset("pq")})

    def test_unknown(self):
        with pytest.raises(ValueError):
            check_property("nope", dlp("p."), set())

    @given(gen.from_seed(gen.dlp, gen.ATOMS, 3, 4))
    def test_semantics_satisfy_all(self, d):
        for variant in ("JU", "AS"):
            models = dlp_models(variant, d)
            assert check_property("support", d, models)
            assert check_property("causal_rejection", d, models)
            assert check_property("acyclic_justified_update", d, models)

    @given(gen.from_seed(gen.fact_sequence, gen.ATOMS, 3, 3, consistent=False))
    def test_fact_update(self, d):
        for variant in ("JU", "AS"):
            assert check_property("fact_update", d, dlp_models(variant, d))
