"""
Text Format
-----------
Reader and canonical printer for the textual module syntax.

    #module P1.
    #input b.
    #output a.
    a :- b.
    c :- 2 <= {a=1, not b=2}.
    {d, e} :- a.
    :- d, not e.
    compute {a, not d}.

Atoms with argument lists (``hc(1,2)``) are flat names. ``%`` starts a
comment. Atoms that occur in rules without being declared are outputs,
except nameless ``_h<k>`` atoms, which are hidden.

Usage:
    from modsm.formats.text import parse_text, print_text

    m = parse_text(b"#input b. #output a. a :- b.")
    assert parse_text(print_text(m), m.symbols) == m
"""

import logging
import re
from dataclasses import dataclass

from modsm.core.atoms import HIDDEN_LABEL, Atom, SymbolTable, atom_key
from modsm.core.module import Module, validate_module
from modsm.core.rules import (
    BasicRule,
    CardinalityRule,
    ChoiceRule,
    ComputeStatement,
    Desugarer,
    IntegrityConstraint,
    Rule,
    SurfaceRule,
    WeightConstraint,
    WeightedLiteral,
    WeightRule,
    format_rule,
)
from modsm.errors import DesugarError, ModuleValidationError, ParseError, UnsupportedFeature

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<directive>\#[A-Za-z]+)
  | (?P<if>:-)
  | (?P<le><=)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[{}(),.=\[\]])
    """,
    re.VERBOSE,
)

SECTIONS = ("#input", "#output", "#hidden")


def decode_utf8(data: bytes) -> str:
    """Decode module text; a bad byte becomes a ParseError at its position."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_start = data.rfind(b"\n", 0, e.start) + 1
        raise ParseError(
            f"invalid UTF-8 byte {data[e.start]:#04x}",
            data.count(b"\n", 0, e.start) + 1,
            e.start - line_start + 1,
        ) from e


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        match = TOKEN_PATTERN.match(source, pos)
        if match is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        text = match.group()
        if kind not in ("space", "comment"):
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rfind("\n") + 1
        pos = match.end()
    return tokens


class _Parser:
    """Recursive-descent parser over one module's tokens."""

    def __init__(self, tokens: list[Token], symbols: SymbolTable):
        self.tokens = tokens
        self.pos = 0
        self.symbols = symbols
        self.resolved: dict[str, Atom] = {}
        self.name: str | None = None
        self.declared: dict[str, list[Atom]] = {section: [] for section in SECTIONS}
        self.statements: list[tuple[Token, SurfaceRule]] = []
        # Reserve _h<k> ids before any named atom can take them.
        for token in tokens:
            if token.kind == "ident" and HIDDEN_LABEL.match(token.text):
                self.atom(token.text)

    # ── Token helpers ──

    def peek(self, offset: int = 0) -> Token | None:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def error(self, message: str, token: Token | None = None) -> ParseError:
        token = token or self.peek()
        if token is None:
            last = self.tokens[-1] if self.tokens else None
            line, column = (last.line, last.column + len(last.text)) if last else (1, 1)
            return ParseError(f"{message} at end of input", line, column)
        return ParseError(f"{message}, found {token.text!r}", token.line, token.column)

    def at(self, text: str) -> bool:
        token = self.peek()
        return token is not None and token.text == text and token.kind != "ident"

    def expect(self, text: str) -> Token:
        token = self.peek()
        if token is None or token.text != text:
            raise self.error(f"expected {text!r}")
        self.pos += 1
        return token

    def atom(self, label: str) -> Atom:
        atom = self.resolved.get(label)
        if atom is None:
            atom = self.symbols.resolve_label(label)
            self.resolved[label] = atom
        return atom

    # ── Grammar ──

    def parse(self) -> None:
        while self.peek() is not None:
            token = self.peek()
            if token.kind == "directive":
                self.header()
            elif token.kind == "ident" and token.text == "compute" and self._next_is("{"):
                self.compute()
            elif token.kind == "ident" and token.text == "minimize" and self._next_is("{", "["):
                raise UnsupportedFeature(
                    f"line {token.line}, column {token.column}: "
                    "minimize statements are not supported"
                )
            else:
                self.rule()

    def _next_is(self, *texts: str) -> bool:
        token = self.peek(1)
        return token is not None and token.text in texts

    def header(self) -> None:
        token = self.peek()
        self.pos += 1
        if token.text == "#module":
            name = self.peek()
            if name is None or name.kind != "ident":
                raise self.error("expected a module name")
            self.pos += 1
            self.name = name.text
            self.expect(".")
            return
        if token.text not in SECTIONS:
            raise self.error("unknown directive", token)
        atoms = [] if self.at(".") else self.atom_list()
        self.expect(".")
        self.declared[token.text].extend(atoms)

    def atom_list(self) -> list[Atom]:
        atoms = [self.atom(self.label())]
        while self.at(","):
            self.pos += 1
            atoms.append(self.atom(self.label()))
        return atoms

    def label(self) -> str:
        token = self.peek()
        if token is None or token.kind != "ident" or token.text == "not":
            raise self.error("expected an atom")
        self.pos += 1
        if not self.at("("):
            return token.text
        self.pos += 1
        terms = [self.term()]
        while self.at(","):
            self.pos += 1
            terms.append(self.term())
        self.expect(")")
        return f"{token.text}({','.join(terms)})"

    def term(self) -> str:
        token = self.peek()
        if token is not None and token.kind == "int":
            self.pos += 1
            return token.text
        return self.label()

    def literal(self) -> tuple[Atom, bool]:
        token = self.peek()
        if token is not None and token.kind == "ident" and token.text == "not":
            self.pos += 1
            return self.atom(self.label()), True
        return self.atom(self.label()), False

    def literal_list(self, closing: str | None) -> tuple[list[Atom], list[Atom]]:
        pos: list[Atom] = []
        neg: list[Atom] = []
        if closing is not None and self.at(closing):
            return pos, neg
        while True:
            atom, negated = self.literal()
            (neg if negated else pos).append(atom)
            if not self.at(","):
                return pos, neg
            self.pos += 1

    def weighted_list(self) -> tuple[list[WeightedLiteral], list[WeightedLiteral]]:
        pos: list[WeightedLiteral] = []
        neg: list[WeightedLiteral] = []
        if self.at("}"):
            return pos, neg
        while True:
            atom, negated = self.literal()
            weight = 1
            if self.at("="):
                self.pos += 1
                weight = self.integer()
            (neg if negated else pos).append(WeightedLiteral(atom, weight))
            if not self.at(","):
                return pos, neg
            self.pos += 1

    def integer(self) -> int:
        token = self.peek()
        if token is None or token.kind != "int":
            raise self.error("expected an integer")
        self.pos += 1
        return int(token.text)

    def emit(self, start: Token, statement: SurfaceRule) -> None:
        self.statements.append((start, statement))

    def compute(self) -> None:
        start = self.peek()
        self.pos += 1
        self.expect("{")
        pos, neg = self.literal_list("}")
        self.expect("}")
        self.expect(".")
        self.emit(start, ComputeStatement(tuple(pos), tuple(neg)))

    def rule(self) -> None:
        start = self.peek()
        choice: list[Atom] | None = None
        head: Atom | None = None
        if self.at("{"):
            self.pos += 1
            choice = [] if self.at("}") else self.atom_list()
            self.expect("}")
            if not choice:
                raise self.error("a choice rule needs at least one head atom", start)
        elif not self.at(":-"):
            head = self.atom(self.label())

        if self.at("."):
            self.pos += 1
            if choice is not None:
                self.emit(start, ChoiceRule(tuple(choice)))
            else:
                self.emit(start, BasicRule(head))
            return

        self.expect(":-")
        token = self.peek()
        if token is not None and token.kind == "int":
            if choice is not None:
                raise self.error("weight bodies need a single head atom", start)
            bound = self.integer()
            weighted = self.at("<=")
            if weighted:
                self.pos += 1
            self.expect("{")
            pos, neg = self.weighted_list() if weighted else self.literal_list("}")
            self.expect("}")
            if head is None:
                self.emit(start, WeightConstraint(bound, tuple(pos), tuple(neg)))
            elif weighted:
                self.emit(start, WeightRule(head, bound, tuple(pos), tuple(neg)))
            else:
                self.emit(start, CardinalityRule(head, bound, tuple(pos), tuple(neg)))
        else:
            pos, neg = self.literal_list(None)
            if choice is not None:
                self.emit(start, ChoiceRule(tuple(choice), tuple(pos), tuple(neg)))
            elif head is not None:
                self.emit(start, BasicRule(head, tuple(pos), tuple(neg)))
            else:
                self.emit(start, IntegrityConstraint(tuple(pos), tuple(neg)))
        self.expect(".")


def parse_text(
    data: bytes | str,
    symbols: SymbolTable | None = None,
    validate: bool = True,
) -> Module:
    """
    Parse one module.

    Args:
        data: Module text (UTF-8 when given as bytes).
        symbols: Table to intern atoms into; a fresh one when omitted.
        validate: Raise ModuleValidationError when the module is ill-formed.

    Returns:
        The module with desugared canonical rules.
    """
    source = decode_utf8(data) if isinstance(data, bytes) else data
    symbols = symbols if symbols is not None else SymbolTable()
    parser = _Parser(tokenize(source), symbols)
    parser.parse()

    desugarer = Desugarer(symbols)
    rules: set[Rule] = set()
    for token, statement in parser.statements:
        try:
            rules |= desugarer.desugar(statement)
        except DesugarError as e:
            raise ParseError(str(e), token.line, token.column) from e

    inputs = frozenset(parser.declared["#input"])
    outputs = frozenset(parser.declared["#output"])
    hidden = set(parser.declared["#hidden"])
    if desugarer.falsity is not None:
        hidden.add(desugarer.falsity)
    declared = inputs | outputs | hidden
    undeclared = {a for rule in rules for a in rule.atoms} - declared
    hidden.update(a for a in undeclared if a.name is None)
    outputs = outputs | {a for a in undeclared if a.name is not None}

    module = Module(rules, inputs, outputs, frozenset(hidden), symbols, parser.name)
    if validate:
        violations = validate_module(module)
        if violations:
            raise ModuleValidationError(violations)
    logger.debug(f"Parsed module {module}")
    return module


def print_text(m: Module) -> bytes:
    """Canonical text: headers for non-empty signatures, then rules in text order."""
    lines: list[str] = []
    if m.name is not None:
        lines.append(f"#module {m.name}.")
    for section, atoms in (("#input", m.input), ("#output", m.output), ("#hidden", m.hidden)):
        if atoms:
            names = ", ".join(a.label for a in sorted(atoms, key=atom_key))
            lines.append(f"{section} {names}.")
    lines.extend(sorted(format_rule(rule) for rule in m.rules))
    return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""
