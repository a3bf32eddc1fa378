"""Exception types shared across the package."""


class AlgcertError(Exception):
    """Base class for all library errors."""


class DimensionError(AlgcertError, ValueError):
    """Vector or table length does not match the ambient dimension."""


class FieldMismatchError(AlgcertError, ValueError):
    """Operands live over different scalar fields."""


class FormatError(AlgcertError, ValueError):
    """Malformed algebra file or presentation data.

    Carries a JSONPath-style pointer to the offending entry when the
    error originates from a file.
    """

    def __init__(self, message, pointer=None):
        self.pointer = pointer
        if pointer is not None:
            message = f"{pointer}: {message}"
        super().__init__(message)


class MissingInvolutionError(AlgcertError, ValueError):
    """Operation requires an involution but the presentation has none."""


class IdempotentError(AlgcertError, ValueError):
    """A supplied element violates an idempotent precondition."""


class UnitalityError(AlgcertError, ValueError):
    """Unital/non-unital mismatch (e.g. taking the hull of a unital algebra)."""


class MissingGeneratorsError(AlgcertError, ValueError):
    """Operation needs declared algebra generators but none are present."""


class GeneratorSideError(AlgcertError, ValueError):
    """A pair generator lies outside its declared pair component."""


class StructureError(AlgcertError, ValueError):
    """GeneratorSet structure kind does not match the requested operation."""


class BudgetExceededError(AlgcertError, RuntimeError):
    """Word enumeration exceeded the configured budget."""

    def __init__(self, count, budget):
        self.count = count
        self.budget = budget
        super().__init__(
            f"enumeration budget exceeded: {count} words > budget {budget}"
        )


class CapExceededError(AlgcertError, RuntimeError):
    """Decomposition witness search exceeded the configured length cap."""

    def __init__(self, what, cap):
        self.cap = cap
        super().__init__(f"{what}: no decomposition found with word length <= {cap}")


class CliInputError(AlgcertError, ValueError):
    """Bad command line or input file; maps to exit code 1."""
