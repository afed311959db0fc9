"""
Synthetic Instances
-------------------
Module generators for tests and benchmarks: random modules driven by a
``numpy.random.Generator``, joinable and equivalent pairs, context
modules, the Hamiltonian cycle modules and large layered programs.

Random modules name their atoms by role (``i<k>`` inputs, ``o<k>``
outputs, ``h<k>`` hidden), so a failing seed prints readably.

Usage:
    import numpy as np
    from modsm.synthetic import random_module, hamiltonian_module

    m = random_module(np.random.default_rng(7), atoms=8, rules=10)
    h3 = hamiltonian_module(3)
"""

import itertools
import logging
from collections.abc import Iterable, Sequence

import numpy as np

from modsm.algebra.compose import compose_all
from modsm.core.atoms import Atom, SymbolTable
from modsm.core.module import Module
from modsm.core.rules import ChoiceRule, Rule, WeightedLiteral, WeightRule, basic
from modsm.decompose.modlist import DecompositionMode, decompose
from modsm.translate.nlp import tr_nlp

logger = logging.getLogger(__name__)


# ── Random modules ───────────────────────────────────────────────────────────


def _signature(
    symbols: SymbolTable, atoms: int, inputs: int, hidden: int
) -> tuple[list[Atom], list[Atom], list[Atom]]:
    inputs = min(inputs, atoms)
    hidden = min(hidden, atoms - inputs)
    outputs = atoms - inputs - hidden
    return (
        [symbols.intern(f"i{k}") for k in range(inputs)],
        [symbols.intern(f"o{k}") for k in range(outputs)],
        [symbols.intern(f"h{k}") for k in range(hidden)],
    )


def _body(rng: np.random.Generator, universe: Sequence[Atom], max_body: int):
    size = int(rng.integers(0, min(max_body, len(universe)) + 1))
    chosen = rng.choice(len(universe), size=size, replace=False) if size else []
    negated = rng.random(size) < 0.4
    pos = [universe[i] for i, flag in zip(chosen, negated, strict=True) if not flag]
    neg = [universe[i] for i, flag in zip(chosen, negated, strict=True) if flag]
    return pos, neg


def _random_rule(
    rng: np.random.Generator,
    heads: Sequence[Atom],
    universe: Sequence[Atom],
    max_body: int,
    normal: bool,
) -> Rule:
    pos, neg = _body(rng, universe, max_body)
    kind = "basic" if normal else rng.choice(["basic", "basic", "choice", "weight"])
    if kind == "choice":
        count = int(rng.integers(1, min(2, len(heads)) + 1))
        picked = rng.choice(len(heads), size=count, replace=False)
        return ChoiceRule(tuple(heads[i] for i in picked), tuple(pos), tuple(neg))
    head = heads[int(rng.integers(len(heads)))]
    if kind == "weight":
        pos_lits = [WeightedLiteral(a, int(rng.integers(1, 4))) for a in pos]
        neg_lits = [WeightedLiteral(a, int(rng.integers(1, 4))) for a in neg]
        total = sum(lit.weight for lit in pos_lits + neg_lits)
        return WeightRule(head, int(rng.integers(0, total + 1)), tuple(pos_lits), tuple(neg_lits))
    return basic(head, pos, neg)


def random_module(
    rng: np.random.Generator,
    atoms: int = 6,
    rules: int = 6,
    inputs: int = 2,
    hidden: int = 1,
    max_body: int = 3,
    normal: bool = False,
    symbols: SymbolTable | None = None,
) -> Module:
    """
    A random valid module. Heads are drawn from the outputs and hidden
    atoms; bodies from every atom. ``normal`` restricts it to basic rules.
    """
    symbols = symbols or SymbolTable()
    ins, outs, hid = _signature(symbols, atoms, inputs, hidden)
    heads = outs + hid
    universe = ins + outs + hid
    generated: set[Rule] = set()
    if heads:
        for _ in range(rules):
            generated.add(_random_rule(rng, heads, universe, max_body, normal))
    return Module(frozenset(generated), frozenset(ins), frozenset(outs), frozenset(hid), symbols)


def random_normal_module(rng: np.random.Generator, **kwargs) -> Module:
    return random_module(rng, normal=True, **kwargs)


def random_joinable_pair(rng: np.random.Generator, **kwargs) -> tuple[Module, Module]:
    """
    Two joinable modules: the hidden-closed pieces of a random module,
    dealt out to two sides at random.
    """
    m = random_module(rng, **kwargs)
    sides: tuple[list[Module], list[Module]] = ([], [])
    for part in decompose(m, DecompositionMode.POS_HIDDEN).modules:
        sides[int(rng.integers(2))].append(part)
    left, right = (compose_all(side) if side else Module(symbols=m.symbols) for side in sides)
    return left, right


def random_equivalent_pair(rng: np.random.Generator, **kwargs) -> tuple[Module, Module]:
    """A random module and its normal-program translation (modularly equivalent)."""
    m = random_module(rng, **kwargs)
    return m, tr_nlp(m)


def random_context(
    rng: np.random.Generator, m: Module, atoms: int = 2, rules: int = 3, max_body: int = 2
) -> Module:
    """
    A normal context module for ``m``: it may define the inputs of ``m``
    and read its outputs, and has a few outputs of its own.
    """
    own = [m.symbols.intern(f"r{k}") for k in range(atoms)]
    defines = sorted(m.input)
    picked = [a for a in defines if rng.random() < 0.5]
    heads = picked + own
    universe = sorted(m.output) + heads
    generated = {_random_rule(rng, heads, universe, max_body, normal=True) for _ in range(rules)}
    read = frozenset().union(*(r.atoms for r in generated)) - frozenset(heads)
    return Module(frozenset(generated), read, frozenset(heads), frozenset(), m.symbols)


# ── Hamiltonian cycles ───────────────────────────────────────────────────────


def _nodes(n: int) -> range:
    return range(1, n + 1)


def _arc(symbols: SymbolTable, x: int, y: int) -> Atom:
    return symbols.intern(f"arc({x},{y})")


def _hc(symbols: SymbolTable, x: int, y: int) -> Atom:
    return symbols.intern(f"hc({x},{y})")


def _reached(symbols: SymbolTable, x: int) -> Atom:
    return symbols.intern(f"reached({x})")


def _at_least_two(head: Atom, atoms: Iterable[Atom]) -> WeightRule:
    return WeightRule(head, 2, tuple(atoms))


def hamiltonian_module(n: int, symbols: SymbolTable | None = None) -> Module:
    """
    Cycle candidates: choose arcs so that every node has exactly one
    outgoing and one incoming selected arc. Hidden ``c`` flags a violation
    and ``d :- not d, c`` rejects it.
    """
    symbols = symbols or SymbolTable()
    c, d = symbols.intern("c"), symbols.intern("d")
    rules: set[Rule] = set()
    for x, y in itertools.product(_nodes(n), repeat=2):
        rules.add(ChoiceRule((_hc(symbols, x, y),), (_arc(symbols, x, y),)))
    for x in _nodes(n):
        row = [_hc(symbols, x, y) for y in _nodes(n)]
        column = [_hc(symbols, y, x) for y in _nodes(n)]
        rules.add(_at_least_two(c, row))
        rules.add(basic(c, (), row))
        rules.add(_at_least_two(c, column))
        rules.add(basic(c, (), column))
    rules.add(basic(d, [c], [d]))
    inputs = {_arc(symbols, x, y) for x, y in itertools.product(_nodes(n), repeat=2)}
    outputs = {_hc(symbols, x, y) for x, y in itertools.product(_nodes(n), repeat=2)}
    return Module(frozenset(rules), inputs, outputs, frozenset({c, d}), symbols, f"H{n}")


def reachability_module(n: int, symbols: SymbolTable | None = None) -> Module:
    """Every node must be reachable from node 1 along the selected arcs."""
    symbols = symbols or SymbolTable()
    e = symbols.intern("e")
    rules: set[Rule] = set()
    for y in _nodes(n):
        rules.add(basic(_reached(symbols, y), [_hc(symbols, 1, y)]))
        for x in range(2, n + 1):
            rules.add(basic(_reached(symbols, y), [_reached(symbols, x), _hc(symbols, x, y)]))
        rules.add(basic(e, (), [e, _reached(symbols, y)]))
    inputs = {_hc(symbols, x, y) for x, y in itertools.product(_nodes(n), repeat=2)}
    outputs = {_reached(symbols, x) for x in _nodes(n)}
    return Module(frozenset(rules), inputs, outputs, frozenset({e}), symbols, f"R{n}")


def hamiltonian_reachability_module(n: int, symbols: SymbolTable | None = None) -> Module:
    """Arc selection and reachability in one module, mutually dependent."""
    symbols = symbols or SymbolTable()
    f = symbols.intern("f")
    rules: set[Rule] = set()
    for x, y in itertools.product(_nodes(n), repeat=2):
        hc, arc = _hc(symbols, x, y), _arc(symbols, x, y)
        if x == 1:
            rules.add(ChoiceRule((hc,), (arc,)))
        rules.add(ChoiceRule((hc,), (_reached(symbols, x), arc)))
        rules.add(basic(_reached(symbols, y), [hc]))
    for x in _nodes(n):
        rules.add(basic(f, (), [f, _reached(symbols, x)]))
    for x, y, z in itertools.product(_nodes(n), repeat=3):
        if y != z:
            rules.add(basic(f, [_hc(symbols, x, y), _hc(symbols, x, z)], [f]))
        if x != z:
            rules.add(basic(f, [_hc(symbols, x, y), _hc(symbols, z, y)], [f]))
    inputs = {_arc(symbols, x, y) for x, y in itertools.product(_nodes(n), repeat=2)}
    outputs = {_hc(symbols, x, y) for x, y in itertools.product(_nodes(n), repeat=2)}
    outputs |= {_reached(symbols, x) for x in _nodes(n)}
    return Module(frozenset(rules), inputs, outputs, frozenset({f}), symbols, f"HR{n}")


# ── Clause modules ───────────────────────────────────────────────────────────


def clause_modules(
    clauses: Sequence[Sequence[int]], symbols: SymbolTable | None = None
) -> tuple[Module, Module]:
    """
    Two composable modules whose semantical join is defined exactly when
    the clause set is unsatisfiable. Literals are non-zero integers,
    ``-k`` negating variable ``v<k>``.

    The first module is ``e :- d.``; the second derives ``sat_i`` from any
    true literal of clause i and ``d :- e, sat_1, ..., sat_n``. Their
    composition never has ``d`` or ``e`` true, while the natural join gets
    ``{d, e}`` from every satisfying assignment.
    """
    symbols = symbols or SymbolTable()
    d, e = symbols.intern("d"), symbols.intern("e")
    first = Module(
        frozenset({basic(e, [d])}), frozenset({d}), frozenset({e}), frozenset(), symbols
    )

    variables = sorted({abs(lit) for clause in clauses for lit in clause})
    atoms = {k: symbols.intern(f"v{k}") for k in variables}
    satisfied = [symbols.intern(f"sat{i}") for i in range(1, len(clauses) + 1)]
    rules: set[Rule] = {basic(d, [e, *satisfied])}
    for clause, head in zip(clauses, satisfied, strict=True):
        for lit in clause:
            atom = atoms[abs(lit)]
            rules.add(basic(head, [atom]) if lit > 0 else basic(head, (), [atom]))
    second = Module(
        frozenset(rules),
        frozenset(atoms.values()) | {e},
        frozenset({d}),
        frozenset(satisfied),
        symbols,
    )
    return first, second


# ── Throughput ───────────────────────────────────────────────────────────────


def layered_program(
    rng: np.random.Generator, rules: int, atoms: int | None = None, max_body: int = 3
) -> Module:
    """
    A large acyclic normal program: rule k defines atom ``x<k mod atoms>``
    from atoms with smaller indices, so every component is a singleton.
    Body sizes and positions are drawn in bulk with numpy.
    """
    atoms = atoms or rules
    symbols = SymbolTable()
    table = [symbols.intern(f"x{k}") for k in range(atoms)]
    heads = np.arange(rules) % atoms
    sizes = rng.integers(0, max_body + 1, size=rules)
    sizes = np.minimum(sizes, heads)
    offsets = rng.random((rules, max_body))
    negated = rng.random((rules, max_body)) < 0.3

    generated: set[Rule] = set()
    for k in range(rules):
        head = int(heads[k])
        body = {int(offsets[k, j] * head) for j in range(int(sizes[k]))}
        pos = [table[b] for j, b in enumerate(sorted(body)) if not negated[k, j]]
        neg = [table[b] for j, b in enumerate(sorted(body)) if negated[k, j]]
        generated.add(basic(table[head], pos, neg))
    logger.info(f"Generated layered program with {len(generated)} rules over {atoms} atoms")
    return Module.from_program(generated, symbols)
