"""Expression grammar: parsing, error positions, unparse round-trips,
and agreement between the scalar and jet evaluation paths."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stefbench import BUILTINS, DomainError, ParseError, from_expression
from stefbench.expr import Binary, Const, Pow, Unary, Var, parse, unparse


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtin_sources_round_trip(name):
    ast = parse(BUILTINS[name].source)
    assert parse(unparse(ast)) == ast


@pytest.mark.parametrize(
    "text, position, fragment",
    [
        ("2 +", 3, "end of input"),
        ("", 0, "empty expression"),
        ("   ", 0, "empty expression"),
        ("sin x", 4, "expected '('"),
        ("x ^ 2.5", 4, "non-integer exponent"),
        ("y + 1", 0, "unknown identifier"),
        ("x $ 2", 2, "unexpected character"),
        ("(x + 1", 6, "expected ')'"),
        ("2 ^ x", 4, "literal integer"),
        ("x ** 2", 3, "expected operand"),
        ("x^2^3", 3, "unexpected"),
    ],
)
def test_parse_errors_carry_positions(text, position, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position
    assert fragment in str(info.value)
    assert str(info.value).endswith(f"at position {position}")


def test_precedence(ctx):
    def ev(text, x):
        return from_expression(text)(ctx.mpf(x), ctx)

    assert ev("1 - 2 - 3", 0) == -4
    assert ev("2 + 3 * 4", 0) == 14
    assert ev("-x^2", 3) == -9
    assert ev("(-x)^2", 3) == 9
    assert ev("2*x^-1", 4) == ctx.mpf(1) / 2
    assert ev("x/2/3", 12) == 2
    assert ev("x^-2", 2) == ctx.mpf(1) / 4


def test_nested_power_needs_parens_and_keeps_them():
    ast = parse("(x^2)^3")
    assert ast == Pow(Pow(Var(), 2), 3)
    assert unparse(ast) == "(x^2)^3"


def test_literals_convert_at_working_precision(ctx):
    assert from_expression("0.1")(ctx.mpf(0), ctx) == ctx.mpf("0.1")
    assert from_expression("1e-40")(ctx.mpf(0), ctx) == ctx.mpf("1e-40")


def test_scalar_evaluation_matches_context_functions(ctx):
    x = ctx.mpf("0.5")
    assert from_expression("sin(x)")(x, ctx) == ctx.sin(x)
    assert from_expression("x^2 - 2")(ctx.mpf(3), ctx) == 7
    assert from_expression("abs(0 - x)")(ctx.mpf(2), ctx) == 2


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_scalar_and_jet_constant_terms_agree_bitwise(ctx, name):
    f = BUILTINS[name]
    x0 = ctx.mpf(f.default_x0)
    assert f(x0, ctx) == f.eval_jet(x0, 4, ctx).coeffs[0]


@pytest.mark.parametrize(
    "text, x, fragment",
    [
        ("ln(0 - x)", "1", "in 'ln(0 - x)'"),
        ("1/(x - 1)", "1", "division by zero"),
        ("x^-1", "0", "zero raised to negative power"),
        ("sqrt(0 - x)", "4", "sqrt of negative"),
    ],
)
def test_domain_errors_name_the_subexpression(ctx, text, x, fragment):
    f = from_expression(text)
    with pytest.raises(DomainError) as info:
        f(ctx.mpf(x), ctx)
    assert fragment in str(info.value)


def test_unparse_spacing_conventions():
    assert unparse(parse("x^2-2")) == "x^2 - 2"
    assert unparse(parse("-(x+1)*x")) == "-(x + 1)*x"
    assert unparse(parse("x/(x+1)")) == "x/(x + 1)"
    assert unparse(parse("8*x - cos(x) - 2*x^2")) == "8*x - cos(x) - 2*x^2"


def _ast_strategy():
    leaves = st.one_of(
        st.just(Var()),
        st.integers(0, 99).map(lambda n: Const(str(n))),
        st.just(Const("1.5")),
        st.just(Const("0.25")),
    )

    def extend(children):
        return st.one_of(
            st.tuples(st.sampled_from("+-*/"), children, children).map(
                lambda t: Binary(t[0], t[1], t[2])
            ),
            st.tuples(
                st.sampled_from(["neg", "sin", "cos", "exp", "ln", "arctan", "sqrt", "abs"]),
                children,
            ).map(lambda t: Unary(t[0], t[1])),
            st.tuples(children, st.integers(-4, 4)).map(lambda t: Pow(t[0], t[1])),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@settings(max_examples=120, deadline=None)
@given(ast=_ast_strategy())
def test_unparse_parse_round_trip_property(ast):
    assert parse(unparse(ast)) == ast
