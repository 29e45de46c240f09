"""
Protocol parameters.
"""

import math

from pydantic import BaseModel, ConfigDict, model_validator

from cavity_swap.errors import InvalidParamsError
from cavity_swap.models.enums import Encoding, Variant

GT_MAGIC = 7 * math.pi / 4
GT_SWAP = math.pi / 2
MIN_TRUNCATION = 3


class ProtocolParams(BaseModel):
    """One protocol configuration.

    ``b`` is the |gg> (or |eg>) coefficient of the atom pair; ``k`` the
    relative error of the cavity pair's coefficient, which becomes b(1+k).
    Coefficients are real and positive.
    """

    model_config = ConfigDict(frozen=True)

    b: float = 0.6
    k: float = 0.0
    gt_clare: float = GT_MAGIC
    variant: Variant = Variant.MEASURE_ATOM
    encoding: Encoding = Encoding.SAME
    bob_readout: bool = False
    gt_bob: float = GT_SWAP
    cavity_truncation: int = MIN_TRUNCATION

    @model_validator(mode="after")
    def _check_constraints(self) -> "ProtocolParams":
        if not 0 < self.b < 1:
            raise InvalidParamsError(f"b must lie in (0, 1), got {self.b}", {"b": self.b})
        if not math.isfinite(self.k) or abs(self.b * (1 + self.k)) >= 1:
            raise InvalidParamsError(
                f"|b(1+k)| must be < 1, got b={self.b}, k={self.k}",
                {"b": self.b, "k": self.k},
            )
        if not (math.isfinite(self.gt_clare) and math.isfinite(self.gt_bob)):
            raise InvalidParamsError("interaction phases must be finite")
        if self.cavity_truncation < MIN_TRUNCATION:
            raise InvalidParamsError(
                f"cavity_truncation must be >= {MIN_TRUNCATION}, got {self.cavity_truncation}",
                {"cavity_truncation": self.cavity_truncation},
            )
        return self

    @property
    def a(self) -> float:
        return math.sqrt(1 - self.b ** 2)

    @property
    def b_cavity(self) -> float:
        return self.b * (1 + self.k)

    @property
    def a_cavity(self) -> float:
        return math.sqrt(1 - self.b_cavity ** 2)
