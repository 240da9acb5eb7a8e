"""Exception types raised across the package."""


class GallaiError(Exception):
    """Base class for every error raised by this package."""


class ColoringFormatError(GallaiError, ValueError):
    """Malformed, incomplete or inconsistent coloring file."""


class RainbowTriangleError(GallaiError, ValueError):
    """The coloring has a rainbow triangle, so it is not a Gallai coloring."""

    def __init__(self, witness):
        super().__init__(f"rainbow triangle {witness.vertices} with colors {witness.colors}")
        self.witness = witness


class PreconditionError(GallaiError, ValueError):
    """Caller passed arguments outside an operation's hypotheses."""


class BudgetExceeded(GallaiError, RuntimeError):
    """A search exhausted its node-expansion budget before deciding."""

    def __init__(self, budget: int):
        super().__init__(f"node-expansion budget of {budget} exhausted")
        self.budget = budget


class LemmaRefutation(GallaiError, AssertionError):
    """Neither outcome of a proved dichotomy was found; almost certainly a bug."""


class CycleFound(GallaiError):
    """Absence certification failed because a cycle of the target length exists."""

    def __init__(self, witness):
        super().__init__(f"color {witness.color} has a cycle of length {len(witness.vertices)}: {witness.vertices}")
        self.witness = witness


class CapExceeded(GallaiError, ValueError):
    """Exhaustive enumeration requested beyond its configured size caps."""
