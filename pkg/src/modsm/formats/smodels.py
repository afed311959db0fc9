"""
Numeric smodels Format
----------------------
Decoder and encoder for the integer-coded rule format produced by
grounders:

    <rule lines>            1 basic, 2 constraint, 3 choice, 5 weight
    0
    <id name lines>         symbol table
    0
    B+
    <ids>                   compute statement, atoms that must be true
    0
    B-
    <ids>                   compute statement, atoms that must be false
    0
    <model count>

Field order per rule type:

    1 head #lits #neg neg... pos...
    2 head #lits #neg bound neg... pos...
    3 #heads heads... #lits #neg neg... pos...
    5 head bound #lits #neg neg... pos... weights(neg then pos)

A module interface does not fit this format, so it travels in an optional
leading comment ``% modsm-iface input=<ids> output=<ids> hidden=<ids>``.
Without it, named atoms are outputs and nameless atoms are hidden.

Usage:
    from modsm.formats.smodels import decode_smodels, encode_smodels

    m = decode_smodels(open("prog.sm", "rb").read())
"""

import logging
from collections.abc import Iterable, Iterator

from modsm.core.atoms import Atom, SymbolTable
from modsm.core.module import Module, validate_module
from modsm.core.rules import (
    ChoiceRule,
    ComputeStatement,
    Desugarer,
    Rule,
    WeightedLiteral,
    WeightRule,
)
from modsm.errors import FormatError, ModuleValidationError, UnsupportedFeature

logger = logging.getLogger(__name__)

IFACE_PREFIX = "% modsm-iface"

BASIC = 1
CONSTRAINT = 2
CHOICE = 3
WEIGHT = 5
MINIMIZE = 6


class _Numbers:
    """Cursor over the integers of one rule line."""

    def __init__(self, values: list[int], line_no: int):
        self.values = values
        self.index = 0
        self.line_no = line_no

    def take(self) -> int:
        if self.index >= len(self.values):
            raise FormatError(f"line {self.line_no}: rule line ends too early")
        value = self.values[self.index]
        self.index += 1
        return value

    def take_many(self, count: int) -> list[int]:
        if count < 0:
            raise FormatError(f"line {self.line_no}: negative count {count}")
        return [self.take() for _ in range(count)]

    def done(self) -> None:
        if self.index != len(self.values):
            raise FormatError(f"line {self.line_no}: trailing numbers on rule line")


def _parse_ints(line: str, line_no: int) -> list[int]:
    try:
        return [int(field) for field in line.split()]
    except ValueError as e:
        raise FormatError(f"line {line_no}: expected integers, got {line!r}") from e


def _parse_iface(line: str, line_no: int) -> dict[str, list[int]]:
    fields: dict[str, list[int]] = {"input": [], "output": [], "hidden": []}
    for part in line[len(IFACE_PREFIX):].split():
        key, _, value = part.partition("=")
        if key not in fields:
            raise FormatError(f"line {line_no}: unknown interface field {key!r}")
        try:
            fields[key] = [int(v) for v in value.split(",") if v]
        except ValueError as e:
            raise FormatError(f"line {line_no}: bad interface ids {value!r}") from e
    return fields


def _decode_rule(values: list[int], line_no: int) -> tuple[int, tuple]:
    """Return (type, raw fields) with atom ids still numeric."""
    numbers = _Numbers(values, line_no)
    kind = numbers.take()
    if kind == BASIC:
        head = numbers.take()
        total, negs = numbers.take(), numbers.take()
        neg = numbers.take_many(negs)
        pos = numbers.take_many(total - negs)
        numbers.done()
        return kind, (head, pos, neg)
    if kind == CONSTRAINT:
        head = numbers.take()
        total, negs = numbers.take(), numbers.take()
        bound = numbers.take()
        neg = numbers.take_many(negs)
        pos = numbers.take_many(total - negs)
        numbers.done()
        return kind, (head, bound, pos, neg)
    if kind == CHOICE:
        heads = numbers.take_many(numbers.take())
        total, negs = numbers.take(), numbers.take()
        neg = numbers.take_many(negs)
        pos = numbers.take_many(total - negs)
        numbers.done()
        return kind, (heads, pos, neg)
    if kind == WEIGHT:
        head = numbers.take()
        bound = numbers.take()
        total, negs = numbers.take(), numbers.take()
        neg = numbers.take_many(negs)
        pos = numbers.take_many(total - negs)
        weights = numbers.take_many(total)
        numbers.done()
        return kind, (head, bound, pos, neg, weights[:negs], weights[negs:])
    if kind == MINIMIZE:
        raise UnsupportedFeature(f"line {line_no}: minimize statements (type 6) are not supported")
    raise UnsupportedFeature(f"line {line_no}: rule type {kind} is not supported")


def _rule_ids(kind: int, fields: tuple) -> Iterator[int]:
    if kind == CHOICE:
        heads, pos, neg = fields
        yield from heads
    else:
        yield fields[0]
        pos, neg = fields[-4:-2] if kind == WEIGHT else fields[-2:]
    yield from pos
    yield from neg


def iter_sections(lines: Iterable[str]) -> Iterator[list[tuple[int, str]]]:
    """
    Split numeric text into per-module line groups.

    A module ends with the model count line that follows the ``B-`` block.
    """
    current: list[tuple[int, str]] = []
    stage = 0  # 0 rules, 1 symbols, 2 before B+, 3 B+, 4 before B-, 5 B-, 6 count
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("%") and not line.startswith(IFACE_PREFIX):
            continue
        current.append((line_no, line))
        if line.startswith("%"):
            continue
        if stage in (0, 1) and line == "0":
            stage += 1
        elif stage == 2 and line == "B+":
            stage = 3
        elif stage == 3 and line == "0":
            stage = 4
        elif stage == 4 and line == "B-":
            stage = 5
        elif stage == 5 and line == "0":
            stage = 6
        elif stage == 6:
            yield current
            current, stage = [], 0
    if current:
        raise FormatError(f"line {current[-1][0]}: module is missing its trailing sections")


def decode_utf8(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_no = data.count(b"\n", 0, e.start) + 1
        raise FormatError(f"line {line_no}: invalid UTF-8 byte {data[e.start]:#04x}") from e


def decode_smodels(data: bytes | str, symbols: SymbolTable | None = None) -> Module:
    """
    Decode one module.

    With a fresh symbol table the file's ids are kept as atom ids, so
    ``encode_smodels`` reproduces them. With a shared table, named atoms are
    interned by name and nameless atoms get fresh ids.
    """
    text = decode_utf8(data) if isinstance(data, bytes) else data
    sections = list(iter_sections(text.splitlines()))
    if len(sections) != 1:
        raise FormatError(f"expected exactly one module, found {len(sections)}")
    return decode_lines(sections[0], symbols)


def decode_lines(lines: list[tuple[int, str]], symbols: SymbolTable | None = None) -> Module:
    adopt_ids = symbols is None
    symbols = symbols if symbols is not None else SymbolTable()

    iface: dict[str, list[int]] | None = None
    raw_rules: list[tuple[int, tuple, int]] = []
    names: dict[int, str] = {}
    named: dict[str, int] = {}
    compute_pos: list[int] = []
    compute_neg: list[int] = []

    stage = 0
    for line_no, line in lines:
        if line.startswith(IFACE_PREFIX):
            if iface is not None or raw_rules or stage:
                raise FormatError(f"line {line_no}: interface header must come first")
            iface = _parse_iface(line, line_no)
            continue
        if stage == 0:
            if line == "0":
                stage = 1
                continue
            kind, fields = _decode_rule(_parse_ints(line, line_no), line_no)
            raw_rules.append((kind, fields, line_no))
        elif stage == 1:
            if line == "0":
                stage = 2
                continue
            id_text, _, name = line.partition(" ")
            if not id_text.isdigit() or not name.strip():
                raise FormatError(f"line {line_no}: bad symbol table entry {line!r}")
            atom_id = int(id_text)
            if atom_id in names:
                raise FormatError(f"line {line_no}: atom id {atom_id} named twice")
            name = name.strip()
            if name in named:
                raise FormatError(
                    f"line {line_no}: name {name!r} given to atom ids {named[name]} and {atom_id}"
                )
            names[atom_id] = name
            named[name] = atom_id
        elif stage in (2, 4):
            expected = "B+" if stage == 2 else "B-"
            if line != expected:
                raise FormatError(f"line {line_no}: expected {expected}")
            stage += 1
        elif stage in (3, 5):
            if line == "0":
                stage += 1
                continue
            target = compute_pos if stage == 3 else compute_neg
            target.extend(_parse_ints(line, line_no))
        elif stage == 6:
            _parse_ints(line, line_no)
            stage = 7
        else:
            raise FormatError(f"line {line_no}: unexpected content after model count")
    if stage != 7:
        raise FormatError("numeric module is missing its trailing sections")

    rule_ids = {i for kind, fields, _ in raw_rules for i in _rule_ids(kind, fields)}
    declared = {i for ids in iface.values() for i in ids} if iface else set()
    known = rule_ids | set(names) | declared
    dangling = sorted(set(compute_pos + compute_neg) - known)
    if dangling:
        raise FormatError(f"compute section refers to unknown atom ids {dangling}")
    if any(i < 1 for i in known):
        raise FormatError("atom ids must be positive")

    atoms: dict[int, Atom] = {}
    for atom_id in sorted(known):
        name = names.get(atom_id)
        if adopt_ids:
            atoms[atom_id] = symbols.adopt(atom_id, name)
        else:
            atoms[atom_id] = symbols.intern(name) if name is not None else symbols.fresh()

    rules: set[Rule] = set()
    for kind, fields, _ in raw_rules:
        rules.add(_build_rule(kind, fields, atoms))

    desugarer = Desugarer(symbols)
    if compute_pos or compute_neg:
        rules |= desugarer.desugar(
            ComputeStatement(
                tuple(atoms[i] for i in compute_pos), tuple(atoms[i] for i in compute_neg)
            )
        )

    if iface is None:
        inputs: set[Atom] = set()
        hidden = {atoms[i] for i in known if i not in names}
        outputs = {atoms[i] for i in known if i in names}
    else:
        inputs = {atoms[i] for i in iface["input"]}
        explicit_out = {atoms[i] for i in iface["output"]}
        hidden = {atoms[i] for i in iface["hidden"]}
        hidden |= {atoms[i] for i in known if i not in names} - explicit_out - inputs
        outputs = set(atoms.values()) - inputs - hidden
    if desugarer.falsity is not None:
        hidden.add(desugarer.falsity)

    module = Module(frozenset(rules), inputs, outputs, hidden, symbols)
    violations = validate_module(module)
    if violations:
        raise ModuleValidationError(violations)
    logger.debug(f"Decoded numeric module with {len(rules)} rules")
    return module


def _build_rule(kind: int, fields: tuple, atoms: dict[int, Atom]) -> Rule:
    if kind == BASIC:
        head, pos, neg = fields
        return WeightRule(
            atoms[head], len(pos) + len(neg), tuple(atoms[i] for i in pos),
            tuple(atoms[i] for i in neg),
        )
    if kind == CONSTRAINT:
        head, bound, pos, neg = fields
        return WeightRule(
            atoms[head], bound, tuple(atoms[i] for i in pos), tuple(atoms[i] for i in neg)
        )
    if kind == CHOICE:
        heads, pos, neg = fields
        return ChoiceRule(
            tuple(atoms[i] for i in heads),
            tuple(atoms[i] for i in pos),
            tuple(atoms[i] for i in neg),
        )
    head, bound, pos, neg, neg_weights, pos_weights = fields
    return WeightRule(
        atoms[head],
        bound,
        tuple(WeightedLiteral(atoms[i], w) for i, w in zip(pos, pos_weights, strict=True)),
        tuple(WeightedLiteral(atoms[i], w) for i, w in zip(neg, neg_weights, strict=True)),
    )


def encode_rule(rule: Rule) -> list[int]:
    if isinstance(rule, ChoiceRule):
        heads = [a.id for a in rule.heads]
        neg = [a.id for a in rule.neg]
        pos = [a.id for a in rule.pos]
        return [CHOICE, len(heads), *heads, len(neg) + len(pos), len(neg), *neg, *pos]
    neg = [lit.atom.id for lit in rule.neg]
    pos = [lit.atom.id for lit in rule.pos]
    total = len(neg) + len(pos)
    if rule.is_basic:
        return [BASIC, rule.head.id, total, len(neg), *neg, *pos]
    if rule.is_cardinality:
        return [CONSTRAINT, rule.head.id, total, len(neg), rule.bound, *neg, *pos]
    weights = [lit.weight for lit in rule.neg] + [lit.weight for lit in rule.pos]
    return [WEIGHT, rule.head.id, rule.bound, total, len(neg), *neg, *pos, *weights]


def _needs_iface(m: Module) -> bool:
    return bool(m.input or m.hidden or any(a.name is None for a in m.output))


def encode_smodels(m: Module) -> bytes:
    """Deterministic numeric encoding; ids are the module's atom ids."""
    lines: list[str] = []
    if _needs_iface(m):
        fields = []
        for key, atoms in (("input", m.input), ("output", m.output), ("hidden", m.hidden)):
            if key == "output":
                atoms = {a for a in atoms if a.name is None}
            fields.append(f"{key}={','.join(str(a.id) for a in sorted(atoms))}")
        lines.append(f"{IFACE_PREFIX} {' '.join(fields)}")
    for encoded in sorted(encode_rule(rule) for rule in m.rules):
        lines.append(" ".join(map(str, encoded)))
    lines.append("0")
    for atom in sorted(m.atoms | m.rule_atoms):
        if atom.name is not None:
            lines.append(f"{atom.id} {atom.name}")
    lines.extend(["0", "B+", "0", "B-", "0", "1"])
    return ("\n".join(lines) + "\n").encode("utf-8")
