import random

import pytest
from hypothesis import given, settings, strategies as st

from ectl.automata import determinize, regex_to_nfa
from ectl.automata.library import BUILTINS
from ectl.errors import EctlError, ValidationError
from ectl.frontend.formats import parse_aut, parse_lts, serialize_aut, serialize_lts

from .gen import random_dfa, random_lts, random_nfa, random_pda, random_vpa, words

DATA = __import__("pathlib").Path(__file__).parent / "data"


def same_lts(a, b):
    return (a.states == b.states and a.actions == b.actions and a.transitions == b.transitions
            and a.designated == b.designated
            and a.labeling == b.labeling)


class TestLtsFormat:
    def test_reads_sample(self):
        lts = parse_lts((DATA / "buffer_loop.lts").read_text())
        assert lts.states == {"s"} and lts.actions == {"p", "c", "r"}
        assert lts.designated == ("s",) and lts.name == "buffer"

    @pytest.mark.parametrize("seed", range(25))
    def test_round_trip(self, seed):
        lts = random_lts(random.Random(seed))
        text = serialize_lts(lts)
        back = parse_lts(text)
        assert same_lts(lts, back)
        assert serialize_lts(back) == text

    def test_crlf_and_bom(self):
        text = "﻿actions a\r\nstate s\r\ntrans s a s\r\n"
        assert parse_lts(text).transitions == {("s", "a", "s")}

    @pytest.mark.parametrize("text,line", [
        ("actions a\nstate s\ntrans s b s\n", 3),
        ("actions a\nstate s\nstate s\n", 3),
        ("actions a\nstate s [p]\n", 2),
        ("actions a\nstate s\ninit t\n", 3),
        ("actions a\nfrobnicate\n", 2),
        ("actions a\nstate s\ntrans s a\n", 3),
        ("actions a\nstate s [p\n", 2),
    ])
    def test_errors_carry_positions(self, text, line):
        with pytest.raises(ValidationError) as err:
            parse_lts(text)
        assert err.value.line == line
        assert f"line {line}" in str(err.value)

    def test_column_points_at_token(self):
        with pytest.raises(ValidationError) as err:
            parse_lts("actions a\nstate s\ntrans s b s\n")
        assert err.value.column is not None and err.value.column > 1

    def test_comments_and_blank_lines(self):
        lts = parse_lts("# header\n\nactions a  # trailing\nprops p\nstate s [p]\n")
        assert lts.labeling["s"] == {"p"}


class TestAutFormat:
    @pytest.mark.parametrize("name", sorted(BUILTINS))
    def test_builtins_round_trip(self, name):
        aut = BUILTINS[name]()
        back = parse_aut(serialize_aut(aut))
        assert back.kind == aut.kind and back.name == aut.name
        for w in words(sorted(aut.alphabet), 6):
            assert back.accepts(w) == aut.accepts(w)

    @pytest.mark.parametrize("seed", range(15))
    def test_random_round_trip(self, seed):
        rng = random.Random(seed)
        for aut in (random_nfa(rng), random_dfa(rng), random_vpa(rng), random_pda(rng)):
            text = serialize_aut(aut)
            back = parse_aut(text)
            assert serialize_aut(back) == text
            for w in words(sorted(aut.alphabet), 5):
                assert back.accepts(w) == aut.accepts(w)

    def test_determinized_vpa(self):
        det = determinize(BUILTINS["anbn"]())
        back = parse_aut(serialize_aut(det))
        assert back.kind == "dvpa"
        for w in words(["a", "b"], 7):
            assert back.accepts(w) == det.accepts(w)

    def test_samples_on_disk(self):
        for f in ("nbu.aut", "anbn.aut", "anban_det.aut"):
            aut = parse_aut((DATA / f).read_text())
            assert aut.name == f[:-4]

    def test_epsilon_rules(self):
        aut = parse_aut("kind nfa\nalphabet a\nstates p q\ninitial p\nfinal q\nrule p eps q\n")
        assert aut.accepts(())
        assert parse_aut(serialize_aut(aut)).accepts(())

    @pytest.mark.parametrize("text", [
        "alphabet a\nstates p\ninitial p\n",
        "kind tree\nstates p\ninitial p\n",
        "kind dfa\nalphabet a\nstates p\ninitial q\n",
        "kind dfa\nalphabet a\nstates p\ninitial p\nrule p b p\n",
        "kind vpa\ncalls a\nreturns b\nstates p\ninitial p\nstack G\n",
        "kind pda\nalphabet a\nstates p\ninitial p\nstack G\nbottom Z\nrule p a G p\n",
        "kind nfa\nalphabet eps\nstates p\ninitial p\n",
        "kind dfa\nalphabet a\nstates p q\ninitial p\nrule p a p\nrule p a q\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(ValidationError):
            parse_aut(text)

    def test_rule_error_line(self):
        with pytest.raises(ValidationError) as err:
            parse_aut("kind nfa\nalphabet a\nstates p\ninitial p\nrule p a r\n")
        assert err.value.line == 5


def _mutate(text, ops):
    chars = list(text)
    for kind, pos, ch in ops:
        if not chars:
            chars.append(ch)
            continue
        i = pos % len(chars)
        if kind == 0:
            del chars[i]
        elif kind == 1:
            chars.insert(i, ch)
        else:
            chars[i] = ch
    return "".join(chars)


_ops = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 10_000),
                          st.sampled_from(list("ab sq[]#\n\t-é>0GZ"))), max_size=8)
_LTS_TEXT = serialize_lts(random_lts(random.Random(4)))
_AUT_TEXTS = [serialize_aut(regex_to_nfa("a (b|a)*", {"a", "b"})),
              serialize_aut(BUILTINS["anbn"]()), serialize_aut(BUILTINS["anban"]())]


class TestFuzz:
    @settings(max_examples=150, deadline=None)
    @given(_ops)
    def test_lts_mutations_never_crash(self, ops):
        try:
            parse_lts(_mutate(_LTS_TEXT, ops))
        except EctlError as err:
            assert isinstance(err, ValidationError)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, len(_AUT_TEXTS) - 1), _ops)
    def test_aut_mutations_never_crash(self, which, ops):
        try:
            parse_aut(_mutate(_AUT_TEXTS[which], ops))
        except EctlError as err:
            assert isinstance(err, ValidationError)
