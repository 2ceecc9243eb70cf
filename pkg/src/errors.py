"""The exceptions raised by the toolkit. The command line maps every
`SyntopError` that escapes a command onto an exit code; see main.py"""
import typing


class SyntopError(Exception):
    """Base class for every error this package raises on purpose."""
    pass


class InputError(SyntopError):
    """An input file could not be parsed, or parsed but violates one of the
    invariants the operation requires.

    Attributes:
    - `path (str, None)`: The file the problem was found in, if any
    - `location (str, None)`: Where in the file, as a dotted path such as
      `nodes.2.label`
    - `message (str)`: The violated invariant, human readable
    """
    def __init__(
            self, message: str,
            path: typing.Optional[str] = None,
            location: typing.Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.path = path
        self.location = location

    def __str__(self):
        parts = []
        if self.path is not None:
            parts.append(self.path)
        if self.location:
            parts.append(self.location)
        parts.append(self.message)
        return ': '.join(parts)


class PreconditionError(SyntopError, ValueError):
    """An operation was called with arguments outside its precondition."""
    pass


class UnknownNodeError(PreconditionError):
    """A node id which is not part of the diagram was referenced"""
    def __init__(self, diagram_name: str, node_id: str):
        super().__init__(f'unknown node {node_id!r} in diagram {diagram_name!r}')
        self.diagram_name = diagram_name
        self.node_id = node_id


class UnknownSymbolError(PreconditionError):
    """A string contained a symbol outside of the grammar's alphabet"""
    def __init__(self, symbol: str):
        super().__init__(f'symbol {symbol!r} is not in the alphabet')
        self.symbol = symbol


class NotAChainError(PreconditionError):
    """decode_chain was given a diagram which does not satisfy the chain shape
    condition."""
    def __init__(self, reasons: typing.Sequence[str] = ()):
        detail = '; '.join(reasons)
        super().__init__('not a chain' + (f' ({detail})' if detail else ''))
        self.reasons = list(reasons)


class CompositionError(PreconditionError):
    """Two arrows were composed whose endpoints do not line up, or whose
    composite is forbidden by the hom-set case table."""
    pass


class SizeBoundError(SyntopError):
    """An enumeration would exceed the configured bound and was refused.

    Attributes:
    - `what (str)`: What was being enumerated
    - `size (int)`: The size that was requested
    - `bound (int)`: The configured maximum
    """
    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f'refusing to enumerate {what}: size {size} exceeds bound {bound}')
        self.what = what
        self.size = size
        self.bound = bound
