"""Exception hierarchy for rackforge.

Library functions raise these; the command-line layer maps the three
families (validation, budget, parse) onto distinct exit codes.
"""

from typing import Any, Optional, Tuple


class RackforgeError(Exception):
    """Base class of all rackforge errors."""


class ValidationError(RackforgeError):
    """An axiom or precondition does not hold.

    Attributes:
        witness: The offending elements, when a concrete witness exists.
    """

    def __init__(self, message: str, witness: Optional[Tuple[Any, ...]] = None) -> None:
        super().__init__(message)
        self.witness = witness


class InvalidTableError(ValidationError):
    """Operation table has the wrong shape or out-of-range entries."""


class NotBijectiveError(ValidationError):
    """Some right translation y -> y<x is not a permutation."""

    def __init__(self, column: int) -> None:
        super().__init__(f"right translation by {column} is not a bijection", (column,))
        self.column = column


class NotDistributiveError(ValidationError):
    """(x<y)<z != (x<z)<(y<z) for the witnessed triple."""

    def __init__(self, x: int, y: int, z: int) -> None:
        super().__init__(f"right distributivity fails at ({x}, {y}, {z})", (x, y, z))


class NotAQuandleError(ValidationError):
    """A quandle was required but x<x != x for some x."""


class NotUnitalError(ValidationError):
    """A unital rack was required but the rack has no units."""


class NotASubrackError(ValidationError):
    """A subset is not closed under the rack operation."""


class NotAGroupError(ValidationError):
    """Multiplication table fails a group axiom."""


class NotAnAutomorphismError(ValidationError):
    """Map is not a group automorphism."""


class NotAHomomorphismError(ValidationError):
    """Map does not respect the group or rack structure."""


class NotFixingSubgroupError(ValidationError):
    """The automorphism moves an element of the subgroup."""


class NotWellDefinedError(ValidationError):
    """An operation on classes depends on the chosen representatives."""


class SingularMatrixError(ValidationError):
    """Matrix determinant is not a unit modulo the modulus."""


class NotAnActionError(ValidationError):
    """Data does not define a group (or fiberwise group) action."""


class RelationViolatedError(ValidationError):
    """phi(x<y) != phi(y) phi(x) phi(y)^-1 for the witnessed pair."""


class NonUnitScalarError(ValidationError):
    """Scalar is not invertible modulo some cyclic factor."""


class ModuleAxiomError(ValidationError):
    """Bundle or module axiom fails."""


class NotSurjectiveError(ValidationError):
    """Extension projection misses a base element."""


class ProjectionNotMorphismError(ValidationError):
    """Extension projection is not a rack morphism."""


class NotPrincipalError(ValidationError):
    """Fiber action is not free and transitive."""


class Axiom1ViolatedError(ValidationError):
    """(e.a)<f != (e<f).eta(a)."""


class Axiom2ViolatedError(ValidationError):
    """e<(f.b) != (e<f).tau(b)."""


class ModuleMismatchError(ValidationError):
    """Extensions are over different bases or modules."""


class NotUnitError(ValidationError):
    """Vector is not of unit length."""


class InconsistentDiagramError(ValidationError):
    """Planar diagram code does not describe a closed diagram."""


class BudgetExceededError(RackforgeError):
    """A search or closure would exceed its configured budget."""

    def __init__(self, message: str, required: int, budget: int) -> None:
        super().__init__(f"{message}: needs {required}, budget {budget}")
        self.required = required
        self.budget = budget


class SearchBudgetExceededError(BudgetExceededError):
    """Exhaustive search space is larger than the budget."""


class ClosureBudgetExceededError(BudgetExceededError):
    """Generated group grew past the order cap."""


class ParseError(RackforgeError):
    """Text input could not be parsed.

    Attributes:
        position: Character offset (PD codes) or line number (files).
    """

    def __init__(self, message: str, position: int = 0) -> None:
        super().__init__(f"{message} (at {position})")
        self.position = position


class FileFormatError(ParseError):
    """Rack, module or extension file is malformed."""
