import numpy as np
import pytest
from hypothesis import given, strategies as st

from gencliff import algebra as alg
from gencliff.algebra import make_context
from gencliff.errors import EvaluationError, GencliffError, ParseError, SingularElementError
from gencliff.expr import MAX_DEPTH, BinOp, Call, Generator, Neg, Power, Scalar, TokenKind, evaluate_text, parse, tokenize
from gencliff.matrix_rep import matrix_det, represent
from gencliff.spectral import CharPolyResult

from conftest import elements


def ev(text, m=3, d=2):
    return evaluate_text(text, make_context(m, d))


# --------------------------------------------------------------------------
# lexer


def test_token_kinds():
    toks = tokenize("e12 + 2.5e-3*omega - w*i*(3i, x)^2")
    kinds = [t.kind for t in toks]
    assert kinds == [
        TokenKind.GENERATOR, TokenKind.OPERATOR, TokenKind.NUMBER, TokenKind.OPERATOR,
        TokenKind.OMEGA, TokenKind.OPERATOR, TokenKind.OMEGA, TokenKind.OPERATOR,
        TokenKind.IMAGINARY_UNIT, TokenKind.OPERATOR, TokenKind.PAREN, TokenKind.NUMBER,
        TokenKind.COMMA, TokenKind.IDENTIFIER, TokenKind.PAREN, TokenKind.OPERATOR,
        TokenKind.NUMBER, TokenKind.END,
    ]  # fmt: skip
    assert toks[0].value == 12
    assert toks[2].value == 2.5e-3
    assert toks[11].value == 3j
    positions = [t.position for t in toks]
    assert positions == sorted(set(positions))


def test_lex_error_position():
    with pytest.raises(ParseError) as info:
        tokenize("e1 + $")
    assert info.value.position == 5


def test_imaginary_literal_needs_word_boundary():
    toks = tokenize("2inv")
    assert toks[0].kind is TokenKind.NUMBER and toks[0].value == 2
    assert toks[1].kind is TokenKind.IDENTIFIER


# --------------------------------------------------------------------------
# parser


def test_precedence_and_associativity(ctx32):
    node = parse("-e1^2*e2 - e1 - e2", ctx32)
    # ((-(e1^2) * e2) - e1) - e2
    assert isinstance(node, BinOp) and node.op == "-"
    assert isinstance(node.left, BinOp) and node.left.op == "-"
    prod = node.left.left
    assert isinstance(prod, BinOp) and prod.op == "*"
    assert isinstance(prod.left, Neg) and isinstance(prod.left.operand, Power)
    assert prod.left.operand.exponent == 2
    assert isinstance(prod.right, Generator) and prod.right.index == 2


def test_call_nodes(ctx32):
    node = parse("grade(e1*e2, 2)", ctx32)
    assert isinstance(node, Call) and node.name == "grade" and len(node.args) == 2
    assert isinstance(parse("e", ctx32), Generator) and parse("e", ctx32).index == 0
    assert isinstance(parse("2.5", ctx32), Scalar)


@pytest.mark.parametrize(
    "text",
    ["e1 +", "e1 e2", "(e1", "e1)", "foo(e1)", "det(e1, e2)", "grade(e1)", "e3", "e1^-1", "e1^2.5", "e1^e2", "", "e1^2^2"],
)
def test_parse_errors(text, ctx32):
    with pytest.raises(ParseError) as info:
        parse(text, ctx32)
    assert 0 <= info.value.position <= len(text)


def test_depth_limit(ctx32):
    deep = "(" * (MAX_DEPTH + 5) + "e1" + ")" * (MAX_DEPTH + 5)
    with pytest.raises(ParseError):
        parse(deep, ctx32)
    with pytest.raises(ParseError):
        parse("-" * (MAX_DEPTH + 5) + "e1", ctx32)
    assert ev("(" * 50 + "e1" + ")" * 50) == alg.generator(make_context(3, 2), 1)


def test_long_sums_do_not_recurse(ctx32):
    U = ev(" + ".join(["e1"] * 5000))
    assert U == 5000 * alg.generator(ctx32, 1)


# --------------------------------------------------------------------------
# evaluation


def test_relation_evaluates_to_zero(ctx32):
    assert ev("e1*e2 - omega*e2*e1") == alg.zero(ctx32)


def test_examples(ctx32):
    assert abs(ev("det(e1^2*e2^2)") - 1) < 1e-12
    assert ev("herm(i*e1)") == -1j * alg.basis_element(ctx32, (2, 0))
    assert ev("grade(e1*e2, 2)") == alg.basis_element(ctx32, (1, 1))
    assert ev("inv(e1)") == alg.basis_element(ctx32, (2, 0))
    assert ev("trace(e1)") == 0
    assert ev("e") == alg.identity(ctx32)
    assert ev("w") == ctx32.omega and ev("omega^3") == pytest.approx(1)
    assert ev("norm(3*i*e1*e2)") == pytest.approx(3)
    assert ev("underline(e + e1)") == alg.identity(ctx32) - alg.generator(ctx32, 1)
    assert ev("auto(e1, 1)") == ctx32.omega * alg.generator(ctx32, 1)
    assert ev("modgrade(e + e1^2*e2, 0)") == ev("e + e1^2*e2")
    assert ev("adj(e1)") == alg.basis_element(ctx32, (2, 0))


def test_result_kinds(ctx32):
    assert isinstance(ev("det(e1+e2)"), complex)
    assert isinstance(ev("norm(e1)"), float)
    assert isinstance(ev("rep(e1)"), np.ndarray)
    assert isinstance(ev("charpoly(e1)"), CharPolyResult)
    assert isinstance(ev("herm(2)"), alg.AlgebraElement)
    assert isinstance(ev("2*3 - i"), complex)


def test_det_against_lu(ctx32):
    value = ev("det(e1+e2)")
    ref = matrix_det(represent(alg.generator(ctx32, 1) + alg.generator(ctx32, 2)))
    assert abs(value - ref) < 1e-12


@pytest.mark.parametrize(
    "text,error",
    [
        ("inv(e + e1 + e1^2)", SingularElementError),
        ("rep(e1) + e1", EvaluationError),
        ("grade(e1, 1.5)", EvaluationError),
        ("grade(e1, e2)", EvaluationError),
        ("grade(e1, 9)", GencliffError),
        ("inv(0)", GencliffError),
        ("2^99999999999999999999", EvaluationError),
    ],
)
def test_evaluation_errors(text, error):
    with pytest.raises(error):
        ev(text)


def test_multi_digit_generators():
    ctx = make_context(2, 11)
    e10, e11 = alg.generator(ctx, 10), alg.generator(ctx, 11)
    assert evaluate_text("e10*e11 + e11*e10", ctx) == alg.zero(ctx)
    assert evaluate_text("e10*e11", ctx) == alg.multiply(e10, e11)


# --------------------------------------------------------------------------
# properties


@given(elements())
def test_print_parse_round_trip(U):
    text = alg.format_element(U)
    V = evaluate_text(text, U.context)
    V = V if isinstance(V, alg.AlgebraElement) else complex(V) * alg.identity(U.context)
    assert np.abs(V.coeffs - U.coeffs).max() <= 1e-12


ALPHABET = "e0123456789 +-*^().,iwomegahrmnvdjtclu$#\n"


@given(st.text(alphabet=ALPHABET, max_size=40))
def test_parser_totality_on_text(text):
    ctx = make_context(3, 2)
    try:
        evaluate_text(text, ctx)
    except GencliffError:
        pass


@given(st.binary(max_size=40))
def test_parser_totality_on_bytes(raw):
    ctx = make_context(2, 3)
    try:
        evaluate_text(raw.decode("utf-8", errors="replace"), ctx)
    except GencliffError:
        pass


def test_omega_power_alias(ctx32):
    assert ev("w2") == pytest.approx(ctx32.omega**2)
    assert ev("w3") == pytest.approx(1)
    assert ev("w2*e1*e2") == ctx32.omega**2 * alg.basis_element(ctx32, (1, 1))
