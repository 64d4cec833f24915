"""Custom exceptions for the binaural_tse package."""

from __future__ import annotations

from collections.abc import Sequence


class TSEError(Exception):
    """Base exception for all extraction-engine errors."""


class ConfigError(TSEError):
    """Raised when a configuration object fails validation."""

    def __init__(self, name: str, message: str) -> None:
        self.name = name
        super().__init__(f"Config '{name}' invalid: {message}")


class FormatError(TSEError):
    """Raised when a file is not in a supported or well-formed encoding.

    Covers WAV containers and weight bundles alike.
    """

    def __init__(self, resource: str, detail: str) -> None:
        self.resource = resource
        super().__init__(f"Unsupported or corrupt format in '{resource}': {detail}")


class ResourceIOError(TSEError):
    """Raised when a file cannot be read or written."""

    def __init__(self, path: str, detail: str = "") -> None:
        self.path = path
        msg = f"I/O error on '{path}'"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ShapeError(TSEError):
    """Raised when an array does not have the shape an operation requires."""

    def __init__(self, operation: str, expected: object, got: object) -> None:
        self.operation = operation
        self.expected = expected
        self.got = got
        super().__init__(f"Shape mismatch in '{operation}': expected {expected}, got {got}")


class ArgumentError(TSEError):
    """Raised when an argument value is outside what an operation accepts."""

    def __init__(self, operation: str, message: str) -> None:
        self.operation = operation
        super().__init__(f"Invalid argument to '{operation}': {message}")


class UnknownLabelError(TSEError):
    """Raised when a class label is not part of the registry in use."""

    def __init__(self, label: str, valid: Sequence[str]) -> None:
        self.label = label
        self.valid = tuple(valid)
        super().__init__(
            f"Unknown class label '{label}'. Valid labels ({len(self.valid)}): "
            + ", ".join(self.valid)
        )


class SilentSignalError(TSEError):
    """Raised when an operation needs signal energy but got silence."""

    def __init__(self, operation: str) -> None:
        self.operation = operation
        super().__init__(f"'{operation}' cannot operate on a silent signal")


class MetricError(TSEError):
    """Raised when a metric is undefined for its inputs."""

    def __init__(self, metric: str, detail: str) -> None:
        self.metric = metric
        super().__init__(f"Metric '{metric}' failed: {detail}")


class SceneError(TSEError):
    """Raised when a scene cannot be drawn or rendered."""

    def __init__(self, detail: str) -> None:
        super().__init__(f"Scene error: {detail}")
