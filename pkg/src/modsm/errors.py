"""
Error Types
-----------
Exception hierarchy shared by every modsm package. All errors derive from
``ModsmError`` so the CLI can map them to exit code 2 in one place.
Errors keep their witnesses (atoms, components, rules, positions) as
attributes for callers that want more than the message.
"""

from collections.abc import Iterable

from modsm.core.atoms import Atom, format_atoms


class ModsmError(Exception):
    """Base class for all modsm failures."""


class DesugarError(ModsmError):
    """A surface rule cannot be turned into a canonical weight or choice rule."""


class UnsupportedFeature(ModsmError):
    """Input uses a construct outside the supported language (e.g. minimize)."""


class SignatureError(ModsmError):
    """Atoms do not belong to the signature part an operation requires."""

    def __init__(self, message: str, atoms: Iterable[Atom] = ()):
        self.atoms = frozenset(atoms)
        if self.atoms:
            message = f"{message}: {format_atoms(self.atoms)}"
        super().__init__(message)


class InputMismatch(SignatureError):
    """An actual input is not a subset of the module's input signature."""


class InterfaceMismatch(ModsmError):
    """Two modules do not share the input/output interface a check needs."""


class ConfigError(ModsmError):
    """An environment setting cannot be used."""


class CapExceeded(ModsmError):
    """An exhaustive computation would exceed its configured cap."""

    def __init__(self, what: str, limit: int, required: int):
        self.what = what
        self.limit = limit
        self.required = required
        super().__init__(f"{what}: {required} exceeds the cap of {limit}")


class CompositionUndefined(ModsmError):
    """Base class for failed module compositions and joins."""

    def __init__(self, message: str, atoms: Iterable[Atom] = ()):
        self.atoms = frozenset(atoms)
        super().__init__(f"{message}: {format_atoms(self.atoms)}")


class OutputClash(CompositionUndefined):
    def __init__(self, atoms: Iterable[Atom]):
        super().__init__("OutputClash", atoms)


class HiddenLeak(CompositionUndefined):
    def __init__(self, atoms: Iterable[Atom]):
        super().__init__("HiddenLeak", atoms)


class MutualDependence(CompositionUndefined):
    """The modules share a strongly connected component of positive dependencies."""

    def __init__(self, component: Iterable[Atom]):
        self.component = frozenset(component)
        super().__init__("MutualDependence", self.component)


class NonNormalRule(ModsmError):
    """An operation defined for normal programs met a choice or weight rule."""

    def __init__(self, rule):
        self.rule = rule
        super().__init__(f"Rule is not a basic rule: {rule}")


class NotSplittingSet(ModsmError):
    def __init__(self, rule):
        self.rule = rule
        super().__init__(f"Rule crosses the splitting set boundary: {rule}")


class NonGroundInput(ModsmError):
    """A check that needs an input-free module received one with inputs."""

    def __init__(self, atoms: Iterable[Atom]):
        self.atoms = frozenset(atoms)
        super().__init__(f"Module has input atoms {format_atoms(self.atoms)}")


class TranslationError(ModsmError):
    """The normal-program translation cannot allocate its complement atoms."""


class ParseError(ModsmError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class ModuleValidationError(ModsmError):
    """A module read from input violates the module well-formedness clauses."""

    def __init__(self, violations):
        self.violations = list(violations)
        details = "; ".join(str(v) for v in self.violations)
        super().__init__(f"Invalid module: {details}")


class FormatError(ModsmError):
    """Malformed numeric (smodels) input."""


class StreamError(ModsmError):
    """Reading one module of a stream failed."""

    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"module #{index}: {cause}")
