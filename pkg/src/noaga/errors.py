"""Exception hierarchy. Everything raised on purpose derives from NoagaError."""


class NoagaError(Exception):
    """Base class for all library errors."""


class ConfigInvalid(NoagaError):
    """A configuration value is out of range or inconsistent."""


class UnknownNode(NoagaError):
    """A node id or label does not exist in the snapshot or view."""


class UnknownEdge(NoagaError):
    """An edge pair does not exist in the snapshot."""


class DuplicateNode(NoagaError):
    """AddNode names a node that already exists."""


class DuplicateEdge(NoagaError):
    """AddEdge names a pair that already exists."""


class ForeignEdge(NoagaError):
    """An edge pair is not active in the view it was used against."""


class UnrepairedChromosome(NoagaError):
    """A chromosome violates its encoding's repaired-form invariants."""


class EmptyCluster(NoagaError):
    """A cluster with no members where at least one is required."""


class EmptyPartition(NoagaError):
    """A partition with no clusters where at least one is required."""


class StaleSnapshot(NoagaError):
    """A partition was evaluated against a view of a different snapshot version."""


class TooLarge(NoagaError):
    """Exhaustive enumeration was asked for more nodes than its cap allows."""


class Exhausted(NoagaError):
    """The evaluation budget cannot afford another GA step."""


class ParseError(NoagaError):
    """An input file is malformed. Carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EventError(NoagaError):
    """An update event could not be applied. Carries the event tick."""

    def __init__(self, tick: int, message: str):
        super().__init__(f"event at tick {tick}: {message}")
        self.tick = tick
