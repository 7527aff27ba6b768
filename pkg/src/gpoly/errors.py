import os


class GraphError(ValueError):
    """Malformed graph or unknown id."""


class UnsupportedOperation(ValueError):
    """Operation not defined for this kind of input (exit code 3 in the CLI)."""


class ResourceLimitError(RuntimeError):
    """Subset expansion refused because the graph has too many edges (exit code 4)."""


DEFAULT_MAX_EDGES = 24


def max_edges(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("GPOLY_MAX_EDGES")
    return int(env) if env else DEFAULT_MAX_EDGES


class ParseError(GraphError):
    """Syntax or semantic error in a graph file, with a source position (exit code 2)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)
