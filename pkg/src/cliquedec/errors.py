"""Exception types shared across the package."""


class CliquedecError(Exception):
    """Base class for all errors raised by this package."""


class LoopEdge(CliquedecError):
    pass


class UnknownVertex(CliquedecError):
    pass


class NotChordal(CliquedecError):
    def __init__(self, hole):
        super().__init__(f"graph is not chordal, hole: {hole}")
        self.hole = hole


class NotAClique(CliquedecError):
    pass


class NotATree(CliquedecError):
    pass


class NotASeparation(CliquedecError):
    pass


class EmptySide(CliquedecError):
    pass


class CliquesEqual(CliquedecError):
    pass


class NotNested(CliquedecError):
    pass


class ImproperSeparation(CliquedecError):
    pass


class NestednessViolation(CliquedecError):
    """Post-hoc nestedness assertion failed; indicates a bug, never expected."""


class EmptyBottleneckSelection(CliquedecError):
    """No selectable separation in a bottleneck; indicates a bug, never expected."""


class OrbitNotMatching(CliquedecError):
    """An edge orbit scheduled for contraction is not a matching in the tree."""


class PreconditionViolated(CliquedecError):
    pass


class TooLarge(CliquedecError):
    pass


class OutOfRange(CliquedecError):
    pass


class LiftCrossesBoundary(CliquedecError):
    """A lift leaves the derived window; the caller must enlarge it."""


class Unstable(CliquedecError):
    """Window computation did not stabilise; the caller must enlarge it."""


class WindowNotChordal(CliquedecError):
    pass


class ActionMismatch(CliquedecError):
    """Deck-action bookkeeping on the window is inconsistent; enlarge the window."""


class BallNotPreserved(CliquedecError):
    def __init__(self, center, message=""):
        super().__init__(message or f"ball not preserved at {center!r}")
        self.center = center


class BudgetExceeded(CliquedecError):
    pass
