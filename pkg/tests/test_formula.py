import pytest
from hypothesis import given, settings, strategies as st

from ethicalrisk import builtin_ers_v1
from ethicalrisk.fixedpoint import Weight
from ethicalrisk.formula import (
    Const,
    DimRef,
    EvaluationError,
    FormulaParseError,
    GateRef,
    Product,
    QuestionTag,
    ScoreRef,
    Sum,
    ValueEnv,
    evaluate,
    gate_multipliers,
    parse_formula,
    print_formula,
    referenced_tags,
)

FW = builtin_ers_v1()
FW_GATED = builtin_ers_v1("gated")


def tag(text: str) -> QuestionTag:
    return QuestionTag.parse(text)


# -- parsing ------------------------------------------------------------

def test_parse_flat_sum_of_score_refs():
    expr = parse_formula("score(Q2.1) + score(Q2.2) + score(Q2.3) + score(Q2.4)")
    assert isinstance(expr, Sum)
    assert expr.terms == tuple(ScoreRef(tag(f"Q2.{i}")) for i in range(1, 5))


def test_parse_single_ref_has_no_wrapper():
    assert parse_formula("score(Q2.1)") == ScoreRef(tag("Q2.1"))


def test_parse_precedence_product_binds_tighter():
    expr = parse_formula("score(Q1.1) * score(Q1.2) + score(Q1.3)")
    assert isinstance(expr, Sum)
    assert isinstance(expr.terms[0], Product)
    assert expr.terms[1] == ScoreRef(tag("Q1.3"))


def test_parse_parenthesized_sum_inside_product():
    expr = parse_formula("score(Q1.1) * (score(Q1.2) + score(Q1.3))")
    assert isinstance(expr, Product)
    assert isinstance(expr.factors[1], Sum)


def test_parse_symbols_and_numbers():
    expr = parse_formula("S + H + T + R")
    assert expr == Sum((DimRef("S"), DimRef("H"), DimRef("T"), DimRef("R")))
    assert parse_formula("0.25") == Const(Weight.parse("0.25"))
    assert parse_formula("gate(Q1.1)") == GateRef(tag("Q1.1"))


def test_parse_whitespace_insignificant():
    a = parse_formula("score(Q1.1)+score(Q1.2)*score(Q1.3)")
    b = parse_formula("  score( Q1.1 ) +\tscore( Q1.2 ) * score( Q1.3 )  ")
    assert a == b


def test_parse_error_unclosed_score_ref():
    with pytest.raises(FormulaParseError) as exc_info:
        parse_formula("score(Q1.1 +")
    err = exc_info.value
    assert err.offset == 11
    assert "')'" in err.expected
    assert "+" in err.found


def test_parse_error_zero_tag_component():
    with pytest.raises(FormulaParseError):
        parse_formula("score(Q0.1)")
    with pytest.raises(FormulaParseError):
        parse_formula("score(Q1.0)")


def test_parse_error_too_many_fraction_digits():
    with pytest.raises(FormulaParseError):
        parse_formula("0.1234567")


def test_parse_error_trailing_garbage():
    with pytest.raises(FormulaParseError) as exc_info:
        parse_formula("score(Q1.1) score(Q1.2)")
    assert exc_info.value.offset == 12


# -- printing -----------------------------------------------------------

def test_print_sum():
    expr = Sum((ScoreRef(tag("Q4.1")), ScoreRef(tag("Q4.2"))))
    assert print_formula(expr) == "score(Q4.1) + score(Q4.2)"


def test_print_product_parenthesizes_sums():
    expr = Product((ScoreRef(tag("Q1.1")),
                    Sum((ScoreRef(tag("Q1.2")), ScoreRef(tag("Q1.3"))))))
    assert print_formula(expr) == "score(Q1.1) * (score(Q1.2) + score(Q1.3))"


def test_builtin_formulas_round_trip():
    formulas = [d.formula for d in FW.dimensions] + [FW.total_formula]
    formulas += [d.formula for d in FW_GATED.dimensions]
    assert len({print_formula(f) for f in formulas}) >= 5
    for f in formulas:
        assert parse_formula(print_formula(f)) == f


def test_gated_builtin_sourcing_formula_prints_with_gate():
    s_dim = FW_GATED.dimension_by_symbol("S")
    assert print_formula(s_dim.formula) == (
        "gate(Q1.1) * (score(Q1.2) + score(Q1.3) + score(Q1.4) + score(Q1.5) + score(Q1.6))"
    )


# -- evaluation ---------------------------------------------------------

def weights(**kwargs: str) -> dict[QuestionTag, Weight]:
    return {tag(k.replace("_", ".")): Weight.parse(v) for k, v in kwargs.items()}


def test_evaluate_sourcing_with_alpha_values():
    expr = FW.dimension_by_symbol("S").formula
    env = ValueEnv(
        weights(Q1_1="1", Q1_2="0", Q1_3="0", Q1_4="0", Q1_5="0", Q1_6="0.25"),
        {}, {})
    assert evaluate(expr, env) == Weight.parse("0.25")


def test_evaluate_rights_with_beta_values():
    expr = FW.dimension_by_symbol("R").formula
    env = ValueEnv(
        weights(Q3_2="1", Q3_3="0.5", Q4_1="0", Q4_2="0.2", Q4_3="0.1",
                Q4_4="0.15", Q4_5="0.15"),
        {}, {})
    assert evaluate(expr, env) == Weight.parse("0.9")


def test_evaluate_all_zero_bindings_gives_zero():
    for dim in FW.dimensions:
        env = ValueEnv({t: Weight(0) for t in referenced_tags(dim.formula)}, {}, {})
        assert evaluate(dim.formula, env) == Weight(0)


def test_evaluate_missing_binding_names_reference():
    expr = parse_formula("score(Q1.1) + score(Q9.9)")
    env = ValueEnv(weights(Q1_1="1"), {}, {})
    with pytest.raises(EvaluationError, match=r"Q9\.9"):
        evaluate(expr, env)


def test_evaluate_gate_values():
    expr = parse_formula("gate(Q1.1) * score(Q1.2)")
    half = weights(Q1_2="0.5")
    assert evaluate(expr, ValueEnv(half, {tag("Q1.1"): 1}, {})) == Weight.parse("0.5")
    assert evaluate(expr, ValueEnv(half, {tag("Q1.1"): 0}, {})) == Weight(0)
    with pytest.raises(EvaluationError):
        evaluate(expr, ValueEnv(half, {tag("Q1.1"): 2}, {}))


def test_gate_multipliers_rewrites_only_product_factors():
    gateable = {tag("Q4.1"), tag("Q4.2"), tag("Q1.1")}
    h = gate_multipliers(FW.dimension_by_symbol("H").formula, gateable)
    assert isinstance(h, Sum)
    assert GateRef(tag("Q4.1")) in h.terms[0].factors
    assert GateRef(tag("Q4.2")) in h.terms[1].factors
    # additive occurrences keep their numeric value
    r = gate_multipliers(FW.dimension_by_symbol("R").formula, gateable)
    assert isinstance(r, Product)
    assert ScoreRef(tag("Q4.1")) in r.factors[1].terms
    assert all(isinstance(n, ScoreRef) for n in r.factors[1].terms)
    # a bare reference is not a multiplier
    bare = ScoreRef(tag("Q1.1"))
    assert gate_multipliers(bare, gateable) == bare


# -- property suites ----------------------------------------------------

_tags = st.builds(QuestionTag, st.integers(1, 20), st.integers(1, 20))
_leaves = st.one_of(
    st.builds(ScoreRef, _tags),
    st.builds(GateRef, _tags),
    st.builds(DimRef, st.sampled_from("ABHRSTXYZ")),
    st.builds(Const, st.builds(Weight, st.integers(0, 5_000_000))),
)


def _make_sum(children):
    terms = []
    for child in children:
        terms.extend(child.terms if isinstance(child, Sum) else (child,))
    return Sum(tuple(terms))


def _make_product(children):
    factors = []
    for child in children:
        factors.extend(child.factors if isinstance(child, Product) else (child,))
    return Product(tuple(factors))


_exprs = st.recursive(
    _leaves,
    lambda inner: st.one_of(
        st.builds(_make_sum, st.lists(inner, min_size=2, max_size=4)),
        st.builds(_make_product, st.lists(inner, min_size=2, max_size=4)),
    ),
    max_leaves=25,
)


@settings(max_examples=1000, deadline=None)
@given(_exprs)
def test_property_print_parse_round_trip(expr):
    assert parse_formula(print_formula(expr)) == expr


_fuzz_corpus = [
    "", " ", "+", "*", "(", ")", "()", "q", "Qx", "score", "score(", "score()",
    "score(Q)", "score(Q1)", "score(Q1.)", "score(Q.1)", "score(Q0.1)",
    "score(Q1.0)", "gate", "gate(Q1.1", "score(Q1.1))", "1.2.3", "1..2",
    "0.1234567", "score(Q1.1) +", "score(Q1.1) + * score(Q1.2)", "S +",
    "-1", "2 - 1", "a + b", "SCORE(Q1.1)", "score (Q1.1)", "score(Q1.1)x",
    "((score(Q1.1))", "score(Q999999999999.1)", "\x00", "score(Q1.1)\n+",
]


@pytest.mark.parametrize("source", _fuzz_corpus)
def test_fuzz_corpus_yields_located_errors_or_parses(source):
    try:
        parse_formula(source)
    except FormulaParseError as err:
        assert 0 <= err.offset <= len(source)
        assert err.expected
        assert err.found


@settings(max_examples=500, deadline=None)
@given(st.text(max_size=60))
def test_property_fuzz_never_crashes(source):
    try:
        parse_formula(source)
    except FormulaParseError as err:
        assert 0 <= err.offset <= len(source)


_two_dp = st.integers(0, 300).map(lambda n: Weight(n * 10_000))


@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_property_builtin_formulas_monotone_in_each_binding(data):
    fw = data.draw(st.sampled_from([FW, FW_GATED]))
    dim = data.draw(st.sampled_from(list(fw.dimensions)))
    expr = dim.formula
    tags = sorted(referenced_tags(expr))
    score_values = {t: data.draw(_two_dp) for t in tags}
    gate_values = {t: data.draw(st.sampled_from([0, 1])) for t in tags}
    base = evaluate(expr, ValueEnv(score_values, gate_values, {}))

    bumped_tag = data.draw(st.sampled_from(tags))
    kind = data.draw(st.sampled_from(["score", "gate"]))
    if kind == "score":
        raised = dict(score_values)
        raised[bumped_tag] = raised[bumped_tag] + data.draw(_two_dp)
        varied = evaluate(expr, ValueEnv(raised, gate_values, {}))
    else:
        raised_gates = dict(gate_values)
        raised_gates[bumped_tag] = 1
        varied = evaluate(expr, ValueEnv(score_values, raised_gates, {}))
    assert varied >= base
