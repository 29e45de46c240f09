"""
String constants for subsystem kinds, protocol variants, encodings and output formats.
"""

import sys

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return self.value

        def __format__(self, spec: str) -> str:
            return self.value.__format__(spec)


class SubsystemKind(StrEnum):
    ATOM = "atom"
    CAVITY = "cavity"


class Variant(StrEnum):
    """Which of Clare's subsystems is measured after the interaction."""
    MEASURE_ATOM = "atom"
    MEASURE_CAVITY_VACUUM = "cavity-vacuum"


class Encoding(StrEnum):
    """Initial-pair encoding.

    SAME: a|ee> + b|gg> for the atoms, a|11> + b|00> for the cavities.
    SINGLE: a|ge> + b|eg> for the atoms, a|10> + b|01> for the cavities.
    """
    SAME = "same"
    SINGLE = "single"


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"
