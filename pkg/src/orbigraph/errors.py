"""Exception hierarchy shared by every orbigraph module."""


class OrbigraphError(Exception):
    """Base class for all errors raised by the engine."""


class NotCoprime(OrbigraphError):
    """Two integers that must be coprime share a common factor."""


class InvalidInput(OrbigraphError):
    """Arguments violate an operation's preconditions."""


class InvalidGraph(OrbigraphError):
    """A multigraph fails validation where a valid one is required."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class Inconsistent(OrbigraphError):
    """Local edge data at a vertex cannot come from an orbifold chart."""


class NoFatVertex(OrbigraphError):
    """An operation needs a fixed surface but the graph has none."""


class InconsistentSystem(OrbigraphError):
    """The localization equations for surface degrees disagree."""


class NotNegative(OrbigraphError):
    """A sphere that should have negative degree does not."""


class NotIntegral(OrbigraphError):
    """A quantity that must be an integer is not."""


class InvalidEdge(OrbigraphError):
    """An edge reference does not identify a usable edge."""


class InvalidSpec(OrbigraphError):
    """A blow-up specification is inconsistent with its target vertex."""


class InadmissibleSize(OrbigraphError):
    """The blow-up size breaks monotonicity or positivity of labels."""


class NotBlowDownable(OrbigraphError):
    """The chosen sphere or surface cannot be blown down."""


class NoInverse(OrbigraphError):
    """No blow-up reproduces the given graph around the chosen locus."""


class Ambiguous(OrbigraphError):
    """Several inequivalent blow-downs reproduce the given graph."""


class InvalidParams(OrbigraphError):
    """Catalog generator parameters violate the generator's conditions."""


class DocumentSyntaxError(OrbigraphError):
    """A graph document line cannot be parsed."""

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SemanticError(OrbigraphError):
    """A graph document parses but does not describe a valid graph."""
