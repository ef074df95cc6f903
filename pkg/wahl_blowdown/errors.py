class WahlBlowdownError(Exception):
    pass


class DimensionError(WahlBlowdownError, ValueError):
    # classes or forms of incompatible rank
    pass


class StructureError(WahlBlowdownError, ValueError):
    pass


class UnsupportedGraphError(WahlBlowdownError, ValueError):
    pass


class DomainError(WahlBlowdownError, ValueError):
    pass


class PreconditionError(WahlBlowdownError, ValueError):
    pass


class HypothesisError(PreconditionError):
    def __init__(self, hypothesis: str, message: str):
        super().__init__(message)
        self.hypothesis = hypothesis


class InconsistencyError(WahlBlowdownError, ValueError):
    pass


class ClassificationError(WahlBlowdownError, ValueError):
    pass


class SearchBudgetExceeded(WahlBlowdownError, RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget of {nodes} nodes exceeded")
        self.nodes = nodes


class InputError(WahlBlowdownError, ValueError):
    # malformed input files, reported by the cli with exit code 2
    pass
