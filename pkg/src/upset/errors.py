"""Exception hierarchy shared by the library and the CLI."""


class UpsetError(Exception):
    """Base class; the CLI maps these to exit code 1."""


class DegenerateBox(UpsetError):
    pass


class DegenerateTriangle(UpsetError):
    pass


class InvalidN(UpsetError):
    pass


class NotMaximalPlanar(UpsetError):
    pass


class NestingNotFound(UpsetError):
    pass


class MonotoneViolation(UpsetError):
    pass


class DuplicateCoordinate(UpsetError):
    pass


class TooLarge(UpsetError):
    pass


class FormatError(UpsetError):
    """Malformed input file."""


class SearchBudgetExceeded(UpsetError):
    """The embeddability search hit its node budget; the answer is unknown."""

    def __init__(self, nodes_expanded: int):
        super().__init__(f"search budget exhausted after {nodes_expanded} node expansions")
        self.nodes_expanded = nodes_expanded


class NotAGadget(UpsetError):
    """A witness operation was given an embedding of a non-gadget graph."""


class InvalidEmbedding(UpsetError):
    """A placement that is not injective or not crossing-free."""
