"""
Atoms and Symbol Tables
-----------------------
Interned propositional atoms. An atom is identified by its numeric id;
the printable name is optional so that machine-generated hidden atoms
can stay anonymous.

Usage:
    from modsm.core.atoms import SymbolTable

    symbols = SymbolTable()
    a = symbols.intern("a")
    f = symbols.fresh()          # nameless, printed as _h<id>
"""

import re
import threading
from collections.abc import Iterable
from dataclasses import dataclass, field

HIDDEN_LABEL = re.compile(r"^_h(\d+)$")


@dataclass(frozen=True, order=True, slots=True)
class Atom:
    """A propositional atom. Equality, ordering and hashing use the id only."""

    id: int
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"Atom ids start at 1, got {self.id}")

    @property
    def label(self) -> str:
        """Printable name; nameless atoms render as ``_h<id>``."""
        return self.name if self.name is not None else f"_h{self.id}"

    def __str__(self) -> str:
        return self.label


Interpretation = frozenset[Atom]
ModelSet = frozenset[Interpretation]


def atom_key(atom: Atom) -> tuple:
    """Canonical print order: named atoms by name, then nameless ones, ties by id."""
    return (atom.name is None, atom.name or "", atom.id)


def model_key(model: Iterable[Atom]) -> tuple[int, ...]:
    """
    Sort key placing interpretations in binary-counter order over atom ids.

    Comparing the ids in descending order is the same as comparing the two
    bit vectors from their most significant position, so the key does not
    depend on the universe the models were drawn from.
    """
    return tuple(sorted((atom.id for atom in model), reverse=True))


def sorted_models(models: Iterable[Iterable[Atom]]) -> list[frozenset[Atom]]:
    return sorted((frozenset(m) for m in models), key=model_key)


def format_atoms(atoms: Iterable[Atom]) -> str:
    """Render an atom set as ``{a,b}`` in canonical order."""
    return "{" + ",".join(a.label for a in sorted(atoms, key=atom_key)) + "}"


class SymbolTable:
    """
    Maps names to atoms and hands out ids.

    The table is the only mutable object in the data model; all access goes
    through a lock so modules sharing a table can be built from several threads.
    """

    def __init__(self):
        self._by_name: dict[str, Atom] = {}
        self._by_id: dict[int, Atom] = {}
        self._next_id = 1
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._by_id)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __iter__(self):
        with self._lock:
            return iter(sorted(self._by_id.values()))

    def _allocate(self) -> int:
        while self._next_id in self._by_id:
            self._next_id += 1
        return self._next_id

    def _register(self, atom: Atom) -> Atom:
        self._by_id[atom.id] = atom
        if atom.name is not None:
            self._by_name[atom.name] = atom
        return atom

    def intern(self, name: str) -> Atom:
        """Return the atom called ``name``, creating it on first use."""
        with self._lock:
            atom = self._by_name.get(name)
            if atom is None:
                atom = self._register(Atom(self._allocate(), name))
            return atom

    def fresh(self, name: str | None = None) -> Atom:
        """Allocate a new atom. A given name must not be taken yet."""
        with self._lock:
            if name is not None and name in self._by_name:
                raise ValueError(f"Atom name '{name}' is already in use")
            return self._register(Atom(self._allocate(), name))

    def adopt(self, atom_id: int, name: str | None = None) -> Atom:
        """
        Register an externally numbered atom, e.g. one read from a numeric file.

        Adopting an id twice with the same name returns the existing atom.
        """
        with self._lock:
            existing = self._by_id.get(atom_id)
            if existing is not None:
                if existing.name != name:
                    raise ValueError(
                        f"Atom id {atom_id} is already bound to '{existing.label}'"
                    )
                return existing
            if name is not None and name in self._by_name:
                raise ValueError(f"Atom name '{name}' is already bound to another id")
            return self._register(Atom(atom_id, name))

    def get(self, name: str) -> Atom | None:
        return self._by_name.get(name)

    def by_id(self, atom_id: int) -> Atom | None:
        return self._by_id.get(atom_id)

    def resolve_label(self, label: str) -> Atom:
        """
        Look up a printed label. ``_h<k>`` refers to atom ``k`` when that atom
        is nameless (or not allocated yet); anything else is interned by name.
        """
        match = HIDDEN_LABEL.match(label)
        if match is not None and label not in self._by_name:
            atom_id = int(match.group(1))
            existing = self._by_id.get(atom_id)
            if existing is None:
                return self.adopt(atom_id)
            if existing.name is None:
                return existing
            return self.fresh()
        return self.intern(label)
