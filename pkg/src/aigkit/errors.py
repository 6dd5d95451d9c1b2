"""Exception types shared across the package."""


class AigError(Exception):
    """Base class for all package errors."""


class CycleDetected(AigError):
    """A combinational loop was found where a DAG is required."""


class ParseError(AigError):
    def __init__(self, message, line=None, offset=None):
        loc = ""
        if line is not None:
            loc = f" (line {line})"
        elif offset is not None:
            loc = f" (byte {offset})"
        super().__init__(f"{message}{loc}")
        self.line = line
        self.offset = offset


class UnsupportedFeature(AigError):
    pass


class UnsupportedDirective(ParseError):
    def __init__(self, directive, line=None):
        super().__init__(f"unsupported directive {directive!r}", line=line)
        self.directive = directive


class DuplicateCell(AigError):
    pass


class UnknownCell(AigError):
    pass


class MultipleDrivers(AigError):
    pass


class UndrivenNet(AigError):
    pass


class UnsupportedOperator(AigError):
    pass


class WidthMismatch(AigError):
    pass


class StaleCandidate(AigError):
    """A transform candidate no longer matches the network it was computed on."""


class InterfaceMismatch(AigError):
    pass


class NoLatches(AigError):
    pass


class EquivalenceFailure(AigError):
    def __init__(self, sample_id, detail=""):
        super().__init__(f"sample {sample_id} failed equivalence verification{': ' + detail if detail else ''}")
        self.sample_id = sample_id


class InconsistentFeature(ParseError):
    pass


class MissingManifest(AigError):
    pass


class EmptyDataset(AigError):
    pass
