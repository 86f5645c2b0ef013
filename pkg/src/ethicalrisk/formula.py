"""The scoring formula language: parse, print, evaluate.

Dimension and total formulas are data, not code. The grammar is LL(1),
addition and multiplication only, so every expressible formula is
monotone nondecreasing in each of its inputs:

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := 'score(' TAG ')' | 'gate(' TAG ')' | SYMBOL | NUMBER | '(' expr ')'
    TAG    := 'Q' digits '.' digits        (both parts >= 1)
    SYMBOL := one uppercase letter
    NUMBER := nonnegative decimal, at most six fractional digits

Whitespace is insignificant; '*' binds tighter than '+'. Parsing always
yields a canonical tree: Sum and Product nodes have at least two children,
a Sum never directly contains a Sum, a Product never directly contains a
Product. print_formula emits minimal parentheses, so parse(print(e)) == e
for every canonical tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .fixedpoint import ONE, ZERO, Weight, WeightError


@dataclass(frozen=True, order=True)
class QuestionTag:
    """Identity of one audit question, rendered "Q<dimension>.<order>"."""

    dimension_index: int
    order: int

    def __post_init__(self) -> None:
        if self.dimension_index < 1 or self.order < 1:
            raise ValueError(f"question tag indices must be >= 1, got {self}")

    @classmethod
    def parse(cls, text: str) -> "QuestionTag":
        if not text.startswith("Q") or "." not in text:
            raise ValueError(f"not a question tag: {text!r}")
        dim, _, order = text[1:].partition(".")
        digits = set("0123456789")
        if not dim or not order or not (set(dim) <= digits and set(order) <= digits):
            raise ValueError(f"not a question tag: {text!r}")
        return cls(int(dim), int(order))

    def __str__(self) -> str:
        return f"Q{self.dimension_index}.{self.order}"


@dataclass(frozen=True)
class ScoreRef:
    tag: QuestionTag


@dataclass(frozen=True)
class GateRef:
    tag: QuestionTag


@dataclass(frozen=True)
class DimRef:
    symbol: str


@dataclass(frozen=True)
class Const:
    value: Weight


@dataclass(frozen=True)
class Sum:
    terms: tuple["FormulaExpr", ...]

    def __post_init__(self) -> None:
        if len(self.terms) < 2:
            raise ValueError("Sum needs at least two terms")


@dataclass(frozen=True)
class Product:
    factors: tuple["FormulaExpr", ...]

    def __post_init__(self) -> None:
        if len(self.factors) < 2:
            raise ValueError("Product needs at least two factors")


FormulaExpr = Union[ScoreRef, GateRef, DimRef, Const, Sum, Product]


class FormulaParseError(ValueError):
    """Located parse failure: offset, what was expected, what was found."""

    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {offset}: expected {expected}, found {found}")


class EvaluationError(LookupError):
    """A reference in the formula has no binding in the environment."""


@dataclass
class ValueEnv:
    """Bindings consumed by evaluate().

    gate_values must only ever hold 0 or 1; dim_values is filled in
    progressively as dimension formulas are evaluated.
    """

    score_values: Mapping[QuestionTag, Weight]
    gate_values: Mapping[QuestionTag, int]
    dim_values: Mapping[str, Weight]


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0

    def error(self, expected: str, offset: int | None = None) -> FormulaParseError:
        at = self.pos if offset is None else offset
        if at >= len(self.source):
            found = "end of input"
        else:
            found = repr(self.source[at])
        return FormulaParseError(at, expected, found)

    def skip_ws(self) -> None:
        while self.pos < len(self.source) and self.source[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.source[self.pos] if self.pos < len(self.source) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            raise self.error(f"'{char}'")
        self.pos += 1

    def parse(self) -> FormulaExpr:
        self.skip_ws()
        expr = self.parse_expr()
        self.skip_ws()
        if self.pos != len(self.source):
            raise self.error("'+', '*', or end of input")
        return expr

    def parse_expr(self) -> FormulaExpr:
        terms = [self.parse_term()]
        while True:
            self.skip_ws()
            if self.peek() != "+":
                break
            self.pos += 1
            terms.append(self.parse_term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def parse_term(self) -> FormulaExpr:
        factors = [self.parse_factor()]
        while True:
            self.skip_ws()
            if self.peek() != "*":
                break
            self.pos += 1
            factors.append(self.parse_factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def parse_factor(self) -> FormulaExpr:
        self.skip_ws()
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_expr()
            self.skip_ws()
            self.expect(")")
            return inner
        if "a" <= ch <= "z":
            return self.parse_ref()
        if "0" <= ch <= "9":
            return self.parse_number()
        if "A" <= ch <= "Z":
            self.pos += 1
            return DimRef(ch)
        raise self.error("'score(', 'gate(', a dimension symbol, a number, or '('")

    def parse_ref(self) -> FormulaExpr:
        start = self.pos
        while self.pos < len(self.source) and "a" <= self.source[self.pos] <= "z":
            self.pos += 1
        name = self.source[start:self.pos]
        if name not in ("score", "gate"):
            raise self.error("'score' or 'gate'", start)
        self.expect("(")
        tag = self.parse_tag()
        self.skip_ws()
        self.expect(")")
        return ScoreRef(tag) if name == "score" else GateRef(tag)

    def parse_tag(self) -> QuestionTag:
        self.skip_ws()
        start = self.pos
        if self.peek() != "Q":
            raise self.error("question tag 'Q<n>.<m>'")
        self.pos += 1
        dim = self.parse_digits("digits after 'Q'")
        self.expect(".")
        order = self.parse_digits("digits after '.'")
        if dim < 1 or order < 1:
            raise FormulaParseError(start, "question tag with indices >= 1",
                                    repr(self.source[start:self.pos]))
        return QuestionTag(dim, order)

    def parse_digits(self, expected: str) -> int:
        start = self.pos
        while self.pos < len(self.source) and "0" <= self.source[self.pos] <= "9":
            self.pos += 1
        if self.pos == start:
            raise self.error(expected)
        return int(self.source[start:self.pos])

    def parse_number(self) -> Const:
        start = self.pos
        while self.pos < len(self.source) and "0" <= self.source[self.pos] <= "9":
            self.pos += 1
        if self.peek() == ".":
            self.pos += 1
            frac_start = self.pos
            while self.pos < len(self.source) and "0" <= self.source[self.pos] <= "9":
                self.pos += 1
            if self.pos == frac_start:
                raise self.error("digits after decimal point")
            if self.pos - frac_start > 6:
                raise FormulaParseError(start, "a number with at most 6 fractional digits",
                                        repr(self.source[start:self.pos]))
        try:
            value = Weight.parse(self.source[start:self.pos])
        except WeightError as exc:
            raise FormulaParseError(start, "a nonnegative decimal number", str(exc)) from exc
        return Const(value)


def parse_formula(source: str) -> FormulaExpr:
    """Parse DSL source into an expression tree; raises FormulaParseError."""
    return _Parser(source).parse()


def print_formula(expr: FormulaExpr) -> str:
    """Canonical rendering: minimal parentheses, single spaces around operators."""
    if isinstance(expr, ScoreRef):
        return f"score({expr.tag})"
    if isinstance(expr, GateRef):
        return f"gate({expr.tag})"
    if isinstance(expr, DimRef):
        return expr.symbol
    if isinstance(expr, Const):
        return str(expr.value)
    if isinstance(expr, Sum):
        return " + ".join(print_formula(t) for t in expr.terms)
    if isinstance(expr, Product):
        parts = []
        for f in expr.factors:
            rendered = print_formula(f)
            parts.append(f"({rendered})" if isinstance(f, Sum) else rendered)
        return " * ".join(parts)
    raise TypeError(f"not a formula node: {expr!r}")


def evaluate(expr: FormulaExpr, env: ValueEnv) -> Weight:
    """Evaluate exactly over the environment; missing bindings raise EvaluationError."""
    if isinstance(expr, ScoreRef):
        try:
            return env.score_values[expr.tag]
        except KeyError:
            raise EvaluationError(f"no score value bound for score({expr.tag})") from None
    if isinstance(expr, GateRef):
        try:
            gate = env.gate_values[expr.tag]
        except KeyError:
            raise EvaluationError(f"no gate value bound for gate({expr.tag})") from None
        if gate not in (0, 1):
            raise EvaluationError(f"gate({expr.tag}) bound to {gate}, must be 0 or 1")
        return ONE if gate else ZERO
    if isinstance(expr, DimRef):
        try:
            return env.dim_values[expr.symbol]
        except KeyError:
            raise EvaluationError(f"no dimension value bound for {expr.symbol}") from None
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Sum):
        total = ZERO
        for term in expr.terms:
            total = total + evaluate(term, env)
        return total
    if isinstance(expr, Product):
        product = evaluate(expr.factors[0], env)
        for factor in expr.factors[1:]:
            product = product * evaluate(factor, env)
        return product
    raise TypeError(f"not a formula node: {expr!r}")


def walk(expr: FormulaExpr) -> Iterator[FormulaExpr]:
    """Yield every node of the tree, parents before children."""
    yield expr
    if isinstance(expr, Sum):
        for term in expr.terms:
            yield from walk(term)
    elif isinstance(expr, Product):
        for factor in expr.factors:
            yield from walk(factor)


def referenced_tags(expr: FormulaExpr) -> set[QuestionTag]:
    """Tags referenced through score() or gate()."""
    return {node.tag for node in walk(expr) if isinstance(node, (ScoreRef, GateRef))}


def referenced_symbols(expr: FormulaExpr) -> set[str]:
    """Dimension symbols referenced by the expression."""
    return {node.symbol for node in walk(expr) if isinstance(node, DimRef)}


def gate_multipliers(expr: FormulaExpr, gateable: set[QuestionTag]) -> FormulaExpr:
    """Rewrite score(Q) -> gate(Q) where Q is gateable and the ref multiplies.

    Only references that stand as direct factors of a Product are
    multiplier occurrences; refs inside an additive group keep their
    numeric value. A formula that is a bare reference has no multiplier
    and is returned unchanged.
    """
    if isinstance(expr, Product):
        factors = []
        for factor in expr.factors:
            if isinstance(factor, ScoreRef) and factor.tag in gateable:
                factors.append(GateRef(factor.tag))
            else:
                factors.append(gate_multipliers(factor, gateable))
        return Product(tuple(factors))
    if isinstance(expr, Sum):
        return Sum(tuple(gate_multipliers(t, gateable) for t in expr.terms))
    return expr
