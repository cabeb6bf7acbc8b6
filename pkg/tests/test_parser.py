import pytest
from helpers import DYADIC, elements, random_clopen, seeded, seeds
from hypothesis import given

from fullgroup.element import Element, validate
from fullgroup.errors import ParseError
from fullgroup.odometer import OdometerSystem, parse_clopen
from fullgroup.parser import eval_set, evaluate, parse, parse_set, to_text, to_word
from fullgroup.rewriting import normal_form, word_of_normal_form

g = Element.generator(DYADIC)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("g_[1]^2 g^-1", validate(DYADIC, 1, [3, -1])),
        ("g g^-1", Element.identity(DYADIC)),
        ("id", Element.identity(DYADIC)),
        ("g^3", g ** 3),
        ("g_[]", g),
        ("g_(X)", g),
        ("g_([0]+[1])", g),
        ("g_[0]", validate(DYADIC, 1, [2, 0])),
        ("(g_[0] g)^2", (validate(DYADIC, 1, [2, 0]) * g) ** 2),
    ],
)
def test_evaluate_examples(text, expected):
    assert evaluate(text, DYADIC) == expected


def test_composition_applies_rightmost_first():
    # g_[1] g sends code 0 to 1 first, then g_[1] moves it to 3
    assert evaluate("g_[1] g", DYADIC).table_at(1)[0] == 3
    assert evaluate("g g_[1]", DYADIC).table_at(1)[0] == 1


@pytest.mark.parametrize(
    "text, column",
    [("g_[", 3), ("", 1), ("g h", 3), ("g^", 3), ("(g", 1), ("g_(~)", 5)],
)
def test_parse_errors(text, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.column == column


def test_set_expressions():
    assert eval_set(parse_set("[0] + [11]"), DYADIC) == parse_clopen(DYADIC, "[0]+[11]")
    assert eval_set(parse_set("~[0] & [11]"), DYADIC).literal() == "[11]"
    assert eval_set(parse_set("~([0]+[10])"), DYADIC).literal() == "[11]"
    assert eval_set(parse_set("{}"), DYADIC).is_empty()
    # '&' binds tighter than '+'
    assert eval_set(parse_set("[0] + [1] & [11]"), DYADIC).literal() == "[0]+[11]"


def test_cylinder_digits_follow_the_system():
    big = OdometerSystem((), (12,))
    assert eval_set(parse_set("[11]"), big).codes_at(1) == [11]
    assert eval_set(parse_set("[11 3]"), big).codes_at(2) == [11 + 12 * 3]


def test_to_word():
    assert to_word("g_[0] g^-1", DYADIC).literal() == "g_[0] g^-1"
    assert to_word("g^-2 id", DYADIC).literal() == "g^-2"
    # negative powers of induced generators are spelled by the normal form
    word = to_word("g_[0]^-1", DYADIC)
    assert word.evaluate() == ~validate(DYADIC, 1, [2, 0])


@pytest.mark.parametrize(
    "text", ["g_[1]^2 g^-1", "g_([0]+[11]) g", "(g_[0] g)^-2", "g_(~[0] & [11] + {})", "id"]
)
def test_print_parse_round_trip(text):
    ast = parse(text)
    assert to_text(parse(to_text(ast))) == to_text(ast)
    assert evaluate(to_text(ast), DYADIC) == evaluate(ast, DYADIC)


# properties


@given(elements())
def test_normal_form_literal_parses_back(a):
    literal = word_of_normal_form(normal_form(a), a.system).literal()
    assert evaluate(literal, a.system) == a
    assert to_word(literal, a.system).literal() == literal


@given(seeds)
def test_set_literal_parses_back(seed):
    rng = seeded(seed)
    system = rng.choice([DYADIC, OdometerSystem((2,), (3,))])
    A = random_clopen(rng, system)
    assert eval_set(parse_set(A.literal()), system) == A
