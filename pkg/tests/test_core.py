import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsc.constructions import coin_transducer, theorem2_transducer
from fsc.core import (
    Transducer,
    TransducerFormatError,
    evaluate,
    identity_transducer,
    negate,
    parse_transducer,
    serialize_transducer,
)

from oracles import step_interpreter

bits = st.text(alphabet="01", max_size=12)


@st.composite
def transducers(draw, max_states=5, max_out=6):
    n = draw(st.integers(1, max_states))
    table = [
        (draw(st.integers(1, n)), draw(st.text(alphabet="01", max_size=max_out))) for _ in range(2 * n)
    ]
    return Transducer(tuple(table))


def test_identity_evaluates_to_input():
    assert evaluate(identity_transducer(), "0110") == "0110"


@given(transducers())
def test_empty_program_gives_empty_output(t):
    assert evaluate(t, "") == ""


def test_coin_transducer_hand_simulation():
    t = coin_transducer()
    rows = {q + 1: {"0": t.table[2 * q], "1": t.table[2 * q + 1]} for q in range(t.n)}
    assert step_interpreter(rows, "101001") == "10"
    assert evaluate(t, "101001") == "10"


@pytest.mark.parametrize(
    "table, message",
    [
        (((1, "0"),), "2n entries"),
        (((1, "0"), (2, "1")), "outside"),
        (((1, "02"), (1, "1")), "0/1"),
    ],
)
def test_invalid_tables_rejected(table, message):
    with pytest.raises(ValueError, match=message):
        Transducer(table)


@given(transducers(), bits, bits)
def test_prefix_compositionality(t, p, q):
    head, state = t.run(p)
    tail, _ = t.run(q, state)
    assert evaluate(t, p + q) == head + tail


@given(transducers(), bits)
def test_negated_outputs_negate_result(t, p):
    assert evaluate(t.negated(), p) == negate(evaluate(t, p))


@given(transducers(), bits)
def test_output_length_bound(t, p):
    out = evaluate(t, p)
    assert len(out) <= len(p) * t.max_output_length()
    assert evaluate(t, p) == out


def test_serialize_identity():
    assert serialize_transducer(identity_transducer()) == "fst v1\nstates 1\n1 0 1 0\n1 1 1 1\n"


def test_serialize_ladder_line_count():
    t, _ = theorem2_transducer(1, 1)
    assert len(serialize_transducer(t).splitlines()) == 6
    assert t.n == 2


def test_parse_identity():
    assert parse_transducer("fst v1\nstates 1\n1 0 1 0\n1 1 1 1\n") == identity_transducer()


def test_parse_epsilon_dash():
    t = parse_transducer("fst v1\nstates 1\n1 0 1 -\n1 1 1 -\n")
    assert t.table == ((1, ""), (1, ""))


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("fst v2\nstates 1\n1 0 1 0\n1 1 1 1\n", 1, "header"),
        ("fst v1\nstate 1\n1 0 1 0\n1 1 1 1\n", 2, "header"),
        ("fst v1\nstates 2\n1 0 3 0\n1 1 1 1\n2 0 2 -\n2 1 2 -\n", 3, "state index out of range"),
        ("fst v1\nstates 2\n1 0 1 0\n1 1 1 1\n2 0 2 -\n", 6, "missing transition"),
        ("fst v1\nstates 1\n1 0 1 0\n1 1 1 12\n", 4, "non-binary output"),
        ("fst v1\nstates 1\n1 1 1 0\n1 0 1 1\n", 3, "expected transition"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(TransducerFormatError, match=fragment) as err:
        parse_transducer(text)
    assert err.value.line == line


@settings(max_examples=1000)
@given(transducers())
def test_serialize_parse_round_trip(t):
    assert parse_transducer(serialize_transducer(t)) == t


@given(transducers())
def test_serialized_form_is_canonical(t):
    text = serialize_transducer(t)
    assert serialize_transducer(parse_transducer(text)) == text
