"""Exception hierarchy shared by every meshcast module."""


class MeshcastError(Exception):
    """Base class. ``code`` is a stable upper-case identifier for diagnostics."""

    code = "MESHCAST_ERROR"


class UnsatisfiableError(MeshcastError):
    code = "UNSATISFIABLE"


class UnreachableReceiverError(MeshcastError):
    code = "UNREACHABLE_RECEIVER"


class UncoverableError(MeshcastError):
    code = "UNCOVERABLE"


class MissingSIError(MeshcastError):
    code = "MISSING_SI"


class ContractViolationError(MeshcastError):
    code = "CONTRACT_VIOLATION"


class NoPathError(MeshcastError):
    code = "NO_PATH"


class ScenarioError(MeshcastError):
    """Raised by the scenario harness; carries the failing file and pipeline step."""

    def __init__(self, code, message, path=None, step=None):
        self.code = code
        self.path = path
        self.step = step
        where = []
        if path is not None:
            where.append(str(path))
        if step is not None:
            where.append(f"step={step}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(f"{code}: {prefix}{message}")
