"""Exception hierarchy shared by every module.

Validation failures carry an ``axiom`` tag and a ``witness`` tuple so that a
failure can be replayed through the checker that produced it.
"""


class CCVarError(Exception):
    """Base class for all workbench errors."""


class RepresentationError(CCVarError, ValueError):
    """Input does not fit the concrete representation (widths, indices, shapes)."""


class CapacityError(CCVarError):
    """A configured size bound was exceeded."""

    def __init__(self, what, value, limit):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds the configured limit {limit}")


class DegenerateError(CCVarError):
    """The structure is degenerate (0 = 1, or pi_1 = pi_2)."""


class AxiomError(CCVarError):
    """An equational law failed; ``witness`` reproduces the failure."""

    def __init__(self, axiom, witness=(), detail=""):
        self.axiom = axiom
        self.witness = tuple(witness)
        self.detail = detail
        msg = f"axiom {axiom!r} fails at {self.witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class PartitionError(AxiomError):
    pass


class ZeroPartError(PartitionError):
    def __init__(self, witness):
        super().__init__("nonzero-parts", witness)


class OverlapError(PartitionError):
    def __init__(self, witness):
        super().__init__("disjoint-parts", witness)


class JoinError(PartitionError):
    def __init__(self, witness):
        super().__init__("join-equals-base", witness)


class DecompositionError(CCVarError):
    """Hyperaffine-unary decomposition missing (``kind='none'``) or not unique."""

    def __init__(self, kind, op, witnesses=()):
        self.kind = kind
        self.op = op
        self.witnesses = list(witnesses)
        super().__init__(f"{kind} decomposition for {op!r} ({len(self.witnesses)} witnesses)")


class InvariantViolation(CCVarError, AssertionError):
    """A theorem-backed invariant failed: this indicates a bug, not bad input."""
