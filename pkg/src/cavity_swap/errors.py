"""
cavity-swap error types: one subclass per failure mode of the simulator.
"""

from typing import Any, Optional


class CavitySwapError(Exception):
    def __init__(self, code: str, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.code = code
        self.details = details


class DimensionMismatchError(CavitySwapError):
    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__("dimension_mismatch", message, details)


class ZeroNormError(CavitySwapError):
    def __init__(self, message: str = "state has zero norm"):
        super().__init__("zero_norm", message)


class LabelCollisionError(CavitySwapError):
    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__("label_collision", message, details)


class UnknownLabelError(CavitySwapError):
    def __init__(self, label: str):
        super().__init__("unknown_label", f"no subsystem labelled {label!r}", {"label": label})


class UnnormalizedInputError(CavitySwapError):
    def __init__(self, norm_squared: float):
        super().__init__(
            "unnormalized_input",
            f"expected a normalized state, got squared norm {norm_squared:.12g}",
            {"norm_squared": norm_squared},
        )


class LabelMismatchError(CavitySwapError):
    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__("label_mismatch", message, details)


class TruncationLeakError(CavitySwapError):
    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__("truncation_leak", message, details)


class InvalidParamsError(CavitySwapError):
    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__("invalid_params", message, details)


class ConfigError(CavitySwapError):
    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__("config_error", message, details)
