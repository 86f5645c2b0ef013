import dataclasses

import pytest

from ethicalrisk import (
    MatrixKeyError,
    PrincipleCode,
    SupportLevel,
    builtin_ers_v1,
    dump_framework,
    framework_from_payload,
    framework_to_payload,
    lint_framework,
    parse_formula,
    print_formula,
    support_level,
)
from ethicalrisk.formula import QuestionTag
from ethicalrisk.model import Dimension, lint_errors


def code(text: str) -> PrincipleCode:
    return PrincipleCode.parse(text)


# -- built-in content ---------------------------------------------------

def test_builtin_has_23_questions_in_4_groups(fw):
    assert len(fw.questions) == 23
    groups = {}
    for q in fw.questions:
        groups.setdefault(q.tag.dimension_index, []).append(q.tag.order)
    assert groups == {
        1: [1, 2, 3, 4, 5, 6],
        2: [1, 2, 3, 4],
        3: [1, 2, 3, 4, 5, 6, 7, 8],
        4: [1, 2, 3, 4, 5],
    }


def test_builtin_lints_clean(fw, fw_gated):
    assert lint_framework(fw) == []
    assert lint_framework(fw_gated) == []


def test_builtin_option_values_spot_checks(fw):
    q21 = fw.question_by_tag(QuestionTag.parse("Q2.1"))
    assert str(q21.option("yes").value) == "0"
    assert str(q21.option("no").value) == "2"
    q32 = fw.question_by_tag(QuestionTag.parse("Q3.2"))
    assert str(q32.option("yes").value) == "1"
    assert str(q32.option("no").value) == "0"


def test_builtin_every_question_has_one_zero_option(fw):
    for q in fw.questions:
        values = sorted(o.value.scaled for o in q.options)
        assert values[0] == 0, f"{q.tag} has no zero-value option"
        assert len(q.options) == 2


def test_builtin_gate_answers(fw):
    gated = {str(q.tag): q.gate_answer for q in fw.questions if q.gate_answer}
    assert gated == {"Q1.1": "yes", "Q4.1": "yes", "Q4.2": "yes"}


def test_builtin_question_principles_curated_families(fw):
    for q in fw.questions:
        assert q.principle_codes, f"{q.tag} has no principle codes"
        families = {c.family for c in q.principle_codes}
        expected = {1: {"K"}, 2: {"H"}, 3: {"H"}, 4: {"S"}}[q.tag.dimension_index]
        assert families <= expected
    q12 = fw.question_by_tag(QuestionTag.parse("Q1.2"))
    assert code("K1") in q12.principle_codes


def test_builtin_principle_statements_verbatim(fw):
    assert len(fw.principles) == 27
    by_code = {str(p.code): p.statement for p in fw.principles}
    assert by_code["H3"] == "The system should do no harm to and infrastructure of system."
    assert by_code["K1"] == ("Data should be acquired from the proper owner of the data. "
                             "It should not be stolen.")
    assert by_code["S8"] == "An individual has the right to be forgotten i.e. erasure of his/her data"


def test_builtin_total_formula(fw):
    assert print_formula(fw.total_formula) == "S + H + T + R"


def test_builtin_dimension_symbols_unique(fw):
    symbols = [d.symbol for d in fw.dimensions]
    assert sorted(symbols) == ["H", "R", "S", "T"]


def test_every_builtin_question_is_scored_somewhere(fw):
    # lint would flag unscored questions as warnings; clean lint proves coverage
    assert lint_framework(fw) == []


# -- support matrix -----------------------------------------------------

def test_matrix_is_total_270_cells(fw):
    assert len(fw.matrix.theories) == 10
    assert len(fw.matrix.entries) == 27 * 10
    for p in fw.principles:
        for theory in fw.matrix.theories:
            assert (p.code, theory) in fw.matrix.entries


def test_support_level_examples(fw):
    assert support_level(fw.matrix, code("H1"), "Deontological Ethics") is SupportLevel.DIRECT
    assert support_level(fw.matrix, code("S13"), "Rawlsian Justice") is SupportLevel.DIRECT
    assert support_level(fw.matrix, code("S2"), "Environmental Ethics") is SupportLevel.NEUTRAL


def test_support_level_unknown_keys(fw):
    with pytest.raises(MatrixKeyError, match="Stoicism"):
        support_level(fw.matrix, code("H1"), "Stoicism")
    with pytest.raises(MatrixKeyError, match="H99"):
        support_level(fw.matrix, code("H99"), "Pragmatism")


def test_environmental_ethics_neutral_on_every_subject_right(fw):
    for number in range(1, 15):
        level = support_level(fw.matrix, code(f"S{number}"), "Environmental Ethics")
        assert level is SupportLevel.NEUTRAL


def test_rawlsian_justice_s13_is_the_only_s_direct(fw):
    directs = [
        number for number in range(1, 15)
        if support_level(fw.matrix, code(f"S{number}"), "Rawlsian Justice") is SupportLevel.DIRECT
    ]
    assert directs == [13]


def test_h1_column_counts(fw):
    levels = [fw.matrix.entries[(code("H1"), t)] for t in fw.matrix.theories]
    counts = {lvl: levels.count(lvl) for lvl in SupportLevel}
    assert counts[SupportLevel.DIRECT] == 7
    assert counts[SupportLevel.CONDITIONAL] == 2
    assert counts[SupportLevel.INDIRECT] == 1
    assert counts[SupportLevel.NEUTRAL] == 0


# -- lint ---------------------------------------------------------------

def test_lint_unresolved_question_reference(fw):
    broken = dataclasses.replace(
        fw,
        dimensions=tuple(
            d if d.symbol != "T" else Dimension(
                d.id, d.label, d.symbol,
                parse_formula(print_formula(d.formula) + " + score(Q9.9)"))
            for d in fw.dimensions
        ),
    )
    findings = lint_framework(broken)
    errors = lint_errors(findings)
    assert len(errors) == 1
    assert "unresolved question reference Q9.9" in errors[0].message
    assert errors[0].location == "dimension T"


def test_lint_unscored_question_is_a_warning(fw):
    without_q16 = parse_formula(
        "score(Q1.1) * (score(Q1.2) + score(Q1.3) + score(Q1.4) + score(Q1.5))")
    modified = dataclasses.replace(
        fw,
        dimensions=tuple(
            d if d.symbol != "S" else Dimension(d.id, d.label, d.symbol, without_q16)
            for d in fw.dimensions
        ),
    )
    findings = lint_framework(modified)
    assert [f for f in findings if f.severity == "error"] == []
    warnings = [f for f in findings if f.severity == "warning"]
    assert len(warnings) == 1
    assert warnings[0].location == "question Q1.6"
    assert "never scored" in warnings[0].message


def test_lint_total_formula_must_use_symbols_only(fw):
    broken = dataclasses.replace(fw, total_formula=parse_formula("S + score(Q1.1)"))
    errors = lint_errors(lint_framework(broken))
    assert any("total formula" in f.location for f in errors)


def test_lint_unresolved_dimension_symbol(fw):
    broken = dataclasses.replace(fw, total_formula=parse_formula("S + H + T + R + Z"))
    errors = lint_errors(lint_framework(broken))
    assert any("unresolved dimension reference Z" in f.message for f in errors)


def test_lint_gate_ref_requires_gate_answer(fw):
    broken = dataclasses.replace(
        fw,
        dimensions=tuple(
            d if d.symbol != "T" else Dimension(
                d.id, d.label, d.symbol,
                parse_formula("gate(Q2.1) * (score(Q2.2) + score(Q2.3) + score(Q2.4))"))
            for d in fw.dimensions
        ),
    )
    errors = lint_errors(lint_framework(broken))
    assert any("no gate answer" in f.message for f in errors)
    # Q2.1 no longer scored: the gate still counts as a reference
    assert not any("Q2.1" in f.message and "never scored" in f.message
                   for f in lint_framework(broken))


def test_lint_duplicate_tags():
    fw = builtin_ers_v1()
    doubled = dataclasses.replace(fw, questions=fw.questions + (fw.questions[0],))
    errors = lint_errors(lint_framework(doubled))
    assert any("duplicate question tag" in f.message for f in errors)


def test_lint_unknown_principle_code(fw):
    q0 = dataclasses.replace(fw.questions[0], principle_codes=(code("K9"),))
    broken = dataclasses.replace(fw, questions=(q0,) + fw.questions[1:])
    errors = lint_errors(lint_framework(broken))
    assert any("unresolved principle code K9" in f.message for f in errors)


def test_lint_matrix_totality(fw):
    entries = dict(fw.matrix.entries)
    entries.pop((code("H1"), "Pragmatism"))
    broken = dataclasses.replace(
        fw, matrix=dataclasses.replace(fw.matrix, entries=entries))
    errors = lint_errors(lint_framework(broken))
    assert any("missing cell (H1, Pragmatism)" in f.message for f in errors)


# -- serialization ------------------------------------------------------

def test_framework_document_round_trip(fw):
    payload = framework_to_payload(fw)
    again = framework_from_payload(payload)
    assert framework_to_payload(again) == payload
    assert lint_framework(again) == []
    assert dump_framework(again) == dump_framework(fw)


def test_framework_document_top_level_keys(fw):
    payload = framework_to_payload(fw)
    assert set(payload) == {
        "id", "version", "default_mode", "questions", "dimensions",
        "total_formula", "normalization", "principles", "theory_matrix",
    }
    assert payload["total_formula"] == "S + H + T + R"
    assert payload["normalization"]["target_max"] == "10"
