"""Built-in ERS v1 framework: questions, weights, formulas, principles, matrix.

Question texts, option values, principle statements, and matrix cells are
transcribed verbatim from the source methodology, including its
grammatical quirks; cleanup would break provenance. The per-question
principle codes are curated by this project and marked as such.
"""

from __future__ import annotations

import dataclasses

from .fixedpoint import Weight
from .formula import QuestionTag, parse_formula
from .model import (
    MODE_GATED,
    MODE_LITERAL,
    AnswerOption,
    Dimension,
    FrameworkDefinition,
    NormalizationSpec,
    Principle,
    PrincipleCode,
    Question,
    SupportLevel,
    TheorySupportMatrix,
)
from .scoring import effective_formula

BUILTIN_ID = "ers-v1"
BUILTIN_VERSION = "1.0.0"

# tag, text, yes value, no value, gate answer, curated principle codes
_QUESTION_ROWS: tuple[tuple[str, str, str, str, str | None, tuple[str, ...]], ...] = (
    ("Q1.1", "Has the data been acquired?",
     "1", "0", "yes", ("K1",)),
    ("Q1.2", "Has the data been acquired properly from the owner?",
     "0", "0.5", None, ("K1",)),
    ("Q1.3", "Has it been verified that the owner has proper authorization to distribute the data?",
     "0", "0.25", None, ("K2",)),
    ("Q1.4", "Has the owner provided usage permission for the purpose of model training?",
     "0", "0.25", None, ("K2", "K3")),
    ("Q1.5", "Has the owner provided usage permission for the application of the trained model?",
     "0", "0.25", None, ("K2", "K3")),
    ("Q1.6", "If the owner required attribution, does an attribution mechanism exist and is it being used?",
     "0", "0.25", None, ("K2",)),
    ("Q2.1", "Are there sufficient process safeguards to ensure no harm to humans?",
     "0", "2", None, ("H6",)),
    ("Q2.2", "Are there sufficient process safeguards to ensure no harm to other entities (animals, environment, infrastructure, etc.)?",
     "0", "1", None, ("H6",)),
    ("Q2.3", "Have the claimed/advertised benefits of the data been sufficiently validated and documented?",
     "0", "0.1", None, ("H7",)),
    ("Q2.4", "Have bias and other harmful impacts of the data been documented and disclosed?",
     "0", "0.15", None, ("H7",)),
    ("Q3.1", "Is there data other than related to human or individual (non-human)?",
     "0.5", "0", None, ("H2", "H3", "H4", "H5")),
    ("Q3.2", "Is there data related to human (Human)?",
     "1", "0", None, ("H1",)),
    ("Q3.3", "Is there human related data that also identifies individuals (PII)?",
     "0.5", "0", None, ("H1",)),
    ("Q3.4", "Will this data be used to harm the subject? (principle of no harm - intention)?",
     "0.2", "0", None, ("H1", "H8")),
    ("Q3.5", "Can this data be used to harm other human beings? (principle of no harm - intention)?",
     "0.8", "0", None, ("H1", "H8", "H10")),
    ("Q3.6", "Can this data be inadvertently used to harm the subject or HUMAN (unintentional)?",
     "0.25", "0", None, ("H1", "H9")),
    ("Q3.7", "Can this data be used to critically harm other entities (animals, environment, infrastructure, etc.) through ML?",
     "0.5", "0", None, ("H2", "H3", "H4", "H5", "H10")),
    ("Q3.8", "Can this data be used to harm other entities (animals, environment, infrastructure, etc.) through ML?",
     "0.25", "0", None, ("H2", "H3", "H4", "H5", "H9")),
    ("Q4.1", "Does the process conform to the privacy asked by the target?",
     "0", "0.15", "yes", ("S3", "S9")),
    ("Q4.2", "Was the target informed, and did they consent to the method of data collection?",
     "0", "0.2", "yes", ("S1", "S2")),
    ("Q4.3", "Was the target informed, and did they consent to the process of data archiving?",
     "0", "0.1", None, ("S9",)),
    ("Q4.4", "Was the target informed, and did they consent to the data distribution?",
     "0", "0.15", None, ("S9", "S12")),
    ("Q4.5", "Does the target have a means to change mind and opt out?",
     "0", "0.15", None, ("S5", "S8", "S9")),
)

_DIMENSION_ROWS = (
    ("ethical_sourcing", "Ethical Sourcing", "S",
     "score(Q1.1) * (score(Q1.2) + score(Q1.3) + score(Q1.4) + score(Q1.5) + score(Q1.6))"),
    ("transparency", "Transparency", "T",
     "score(Q2.1) + score(Q2.2) + score(Q2.3) + score(Q2.4)"),
    ("harm_potential", "Harm Potential", "H",
     "(score(Q3.2) + score(Q3.3)) * score(Q4.1) * (score(Q3.4) + score(Q3.5) + score(Q3.6))"
     " + score(Q3.1) * score(Q4.2) * (score(Q3.7) + score(Q3.8))"),
    ("target_rights", "Target Rights", "R",
     "(score(Q3.2) + score(Q3.3)) * (score(Q4.1) + score(Q4.2) + score(Q4.3) + score(Q4.4) + score(Q4.5))"),
)

_TOTAL_FORMULA = "S + H + T + R"

_PRINCIPLE_ROWS = (
    ("H1", "The system should do no harm to any individual."),
    ("H2", "The system should do no harm to an organization."),
    ("H3", "The system should do no harm to and infrastructure of system."),
    ("H4", "The system should do no harm to animals."),
    ("H5", "The system should do no harm to environment."),
    ("H6", "The system designer should take necessary measures within its control to mitigate the harm."),
    ("H7", "The system should disclose the net harm potential."),
    ("H8", "Intentional harm is more unethical than unintentional harm."),
    ("H9", "Even the unintentional harm is unethical."),
    ("H10", "The severity of harm is ordered as per harm to individual, environment, animal and organization."),
    ("K1", "Data should be acquired from the proper owner of the data. It should not be stolen."),
    ("K2", "Data should be distributed based on the distribution rights granted by the owner (alteration, commercial/noncommercial, attribution, purpose)"),
    ("K3", "The rights of the data subject should be upheld by the data owner."),
    ("S1", "Any subject has the right to know if data being collected about him/her, what data is being collected, by whom, and for what purpose."),
    ("S2", "Any subject has the right to know the process of how his/her data is being collected."),
    ("S3", "Data should not be used for purposes not authorized by the subject."),
    ("S4", "Any subject has the right to be informed promptly if their data is used for purposes beyond their initial consent, allowing them to restrict such use."),
    ("S5", "Any subject has the right to withdraw permission for the use of their data later."),
    ("S6", "Any subject has the right to request copies and download the data about him/her in a readable format."),
    ("S7", "Any subject has the right to request correction of wrong information in the data about him/her."),
    ("S8", "An individual has the right to be forgotten i.e. erasure of his/her data"),
    ("S9", "Any subject has the right to restrict how his/her data is being collected, processed, archived, or distributed and optout."),
    ("S10", "Any subject has the right to not be subject to automatic decision making."),
    ("S11", "Any subject has the right not to be subject to be used for AI system training."),
    ("S12", "Any subject has the right to restrict his/her information not to be sold to third party."),
    ("S13", "Any subject has the right to not be discriminated against for exercising his data rights by denial and restriction of other services. Individuals cannot be denied goods or services, or offered different prices or quality, for exercising their data rights"),
    ("S14", "Any subject has the right to be compensated if any data about him is monetized profit."),
)

THEORIES = (
    "Utilitarianism",
    "Deontological Ethics",
    "Virtue Ethics",
    "Ethics of Care",
    "Rights-Based Ethics",
    "Social Contract Theory",
    "Rawlsian Justice",
    "Natural Law Theory",
    "Environmental Ethics",
    "Pragmatism",
)

# One compact row per theory over columns H1..H10, K1..K3, S1..S14.
_MATRIX_COLUMNS = tuple(code for code, _ in _PRINCIPLE_ROWS)
_MATRIX_ROWS = {
    "Utilitarianism":         "CCCCCDDCCC" "CCC" "CCCCCCCCCCCCCC",
    "Deontological Ethics":   "DCCCCDDDDD" "DDD" "DDDDDDDDDDDDDD",
    "Virtue Ethics":          "DCCDDDDDDD" "DDD" "DDDDDDDDDDDDDD",
    "Ethics of Care":         "DCCDDDDDDD" "DDD" "DDDDDDDDDDDDDD",
    "Rights-Based Ethics":    "DNNCCDDDDD" "DDD" "DDDDDDDDDDDDDD",
    "Social Contract Theory": "DCCNCCCCCC" "CCC" "CCCCCCCCCCCCCC",
    "Rawlsian Justice":       "DCCNCCCCCC" "CCC" "CCCCCCCCCCCCDC",
    "Natural Law Theory":     "DCCCDDDDDD" "DDD" "DDDDDDDDDDDDDD",
    "Environmental Ethics":   "IIIDDDDINN" "NNN" "NNNNNNNNNNNNNN",
    "Pragmatism":             "CCCCCDCCCC" "CCC" "CCCCCCCCCCCCCC",
}


def builtin_matrix() -> TheorySupportMatrix:
    entries: dict[tuple[PrincipleCode, str], SupportLevel] = {}
    for theory in THEORIES:
        row = _MATRIX_ROWS[theory]
        assert len(row) == len(_MATRIX_COLUMNS)
        for code_text, cell in zip(_MATRIX_COLUMNS, row):
            entries[(PrincipleCode.parse(code_text), theory)] = SupportLevel.parse(cell)
    return TheorySupportMatrix(theories=THEORIES, entries=entries)


def builtin_principles() -> tuple[Principle, ...]:
    return tuple(
        Principle(PrincipleCode.parse(code), statement)
        for code, statement in _PRINCIPLE_ROWS
    )


def builtin_questions() -> tuple[Question, ...]:
    questions = []
    for tag, text, yes_value, no_value, gate_answer, codes in _QUESTION_ROWS:
        questions.append(Question(
            tag=QuestionTag.parse(tag),
            text=text,
            options=(
                AnswerOption("yes", Weight.parse(yes_value)),
                AnswerOption("no", Weight.parse(no_value)),
            ),
            gate_answer=gate_answer,
            principle_codes=tuple(PrincipleCode.parse(c) for c in codes),
            provenance="paper",
        ))
    return tuple(questions)


def builtin_ers_v1(mode: str = MODE_LITERAL) -> FrameworkDefinition:
    """The shipped ERS v1 framework, formulas in the requested mode's form."""
    if mode not in (MODE_LITERAL, MODE_GATED):
        raise ValueError(f"unknown scoring mode {mode!r}")
    questions = builtin_questions()
    dimensions = []
    for dim_id, label, symbol, source in _DIMENSION_ROWS:
        formula = parse_formula(source)
        dimensions.append(Dimension(id=dim_id, label=label, symbol=symbol, formula=formula))
    fw = FrameworkDefinition(
        id=BUILTIN_ID,
        version=BUILTIN_VERSION,
        scoring_mode_default=mode,
        questions=questions,
        dimensions=tuple(dimensions),
        total_formula=parse_formula(_TOTAL_FORMULA),
        normalization=NormalizationSpec(),
        principles=builtin_principles(),
        matrix=builtin_matrix(),
    )
    if mode == MODE_GATED:
        gated_dims = tuple(
            Dimension(d.id, d.label, d.symbol, effective_formula(fw, d, MODE_GATED))
            for d in fw.dimensions
        )
        fw = dataclasses.replace(fw, dimensions=gated_dims)
    return fw
