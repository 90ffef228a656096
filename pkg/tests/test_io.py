import pytest

from effalg import ParseError, parse_ea, parse_triple, serialize_ea, serialize_triple
from effalg import extract_triple, generate, validate_ea

GOOD = """
# chain with three elements
ea 3
labels 0 a 1
zero 0
unit 2
table
0 1 2
1 2 .
2 . .
"""


def test_parse_good():
    E = parse_ea(GOOD)
    assert E.n == 3 and E.labels == ("0", "a", "1")
    assert validate_ea(E).valid


def test_labels_optional():
    text = "\n".join(line for line in GOOD.splitlines() if not line.startswith("labels"))
    E = parse_ea(text)
    assert E.labels == ("e0", "e1", "e2")


@pytest.mark.parametrize("name", ["chain(4)", "mo(2)", "diamond", "product(chain(2),mo(2))"])
def test_round_trip(name):
    E = generate(name)
    assert parse_ea(serialize_ea(E)) == E


@pytest.mark.parametrize("mutate, message, lineno", [
    (lambda s: s.replace("1 2 .", "1 2 0"), "asymmetric", 9),
    (lambda s: s.replace("labels 0 a 1", "labels 0 a a"), "duplicate label", 4),
    (lambda s: s.replace("1 2 .", "1 7 ."), "out of range", 9),
    (lambda s: s.replace("1 2 .", "1 2"), "has 2 entries", 9),
    (lambda s: s.replace("unit 2", "unit 0"), "must differ", 6),
    (lambda s: s + "extra\n", "trailing", 11),
    (lambda s: s.replace("1 2 .", "1 x ."), "expected an integer", 9),
])
def test_parse_errors_carry_line_numbers(mutate, message, lineno):
    with pytest.raises(ParseError) as info:
        parse_ea(mutate(GOOD))
    assert message in str(info.value)
    assert info.value.lineno == lineno


def test_truncated_input():
    with pytest.raises(ParseError, match="unexpected end"):
        parse_ea("ea 3\nzero 0\nunit 2\ntable\n0 1 2\n")


def test_triple_round_trip(c3):
    T = extract_triple(c3)
    text = serialize_triple(T)
    T2 = parse_triple(text)
    assert T2.sharp == T.sharp and T2.meager == T.meager and T2.h == T.h
    assert serialize_triple(T2) == text


def test_triple_parse_errors():
    text = serialize_triple(extract_triple(generate("chain(3)")))
    with pytest.raises(ParseError, match="duplicate h entry"):
        parse_triple(text.replace("1: 0", "0: 0"))
