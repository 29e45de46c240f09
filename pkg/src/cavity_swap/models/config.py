"""
Run configuration: flags and an optional config file, merged.

Config files are flat ``key = value`` text (``#`` starts a comment, list
values are comma separated) or, when the name ends in ``.json``, a flat JSON
object. Keys may use dashes or underscores. Flags override file values.
"""

import json
import math
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, ValidationError

from cavity_swap.errors import ConfigError
from cavity_swap.models.enums import Encoding, OutputFormat, Variant
from cavity_swap.models.params import GT_MAGIC, GT_SWAP, MIN_TRUNCATION, ProtocolParams

LIST_KEYS = {"k_values", "gt_values"}

PRESETS: dict[str, dict[str, Any]] = {
    "figure1": {
        "variant": Variant.MEASURE_ATOM,
        "b_start": 0.05,
        "b_stop": 0.95,
        "b_step": 0.01,
        "k_values": [0.0],
        "gt_values": [GT_MAGIC],
    },
}


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    # protocol
    b: float = 0.6
    k: float = 0.0
    gt: float = GT_MAGIC
    variant: Variant = Variant.MEASURE_ATOM
    encoding: Encoding = Encoding.SAME
    truncation: int = MIN_TRUNCATION
    bob_readout: bool = False
    gt_bob: float = GT_SWAP

    # sweep
    preset: Optional[Literal["figure1"]] = None
    b_start: float = 0.05
    b_stop: float = 0.95
    b_step: float = 0.01
    k_values: list[float] = [0.0]
    gt_values: list[float] = [GT_MAGIC]

    # timing
    g: float = 2 * math.pi * 25e3
    radiative_time_s: float = 3e-2
    cavity_decay_time_s: float = 1e-3
    n_interactions: int = 2
    budget_factor: float = 10.0

    # output
    format: OutputFormat = OutputFormat.CSV
    out: Optional[Path] = None
    plot: Optional[Path] = None
    tolerance: Optional[float] = None
    seed: int = 0
    verbosity: int = 0

    def to_params(self) -> ProtocolParams:
        return ProtocolParams(
            b=self.b,
            k=self.k,
            gt_clare=self.gt,
            variant=self.variant,
            encoding=self.encoding,
            bob_readout=self.bob_readout,
            gt_bob=self.gt_bob,
            cavity_truncation=self.truncation,
        )


def _normalize_key(key: str) -> str:
    return key.strip().replace("-", "_")


def parse_config_text(text: str) -> dict[str, Any]:
    """Parse the flat ``key = value`` format into raw (string) values."""
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}", {"line": lineno})
        key, value = (part.strip() for part in line.split("=", 1))
        key = _normalize_key(key)
        if key in LIST_KEYS:
            values[key] = [v.strip() for v in value.split(",") if v.strip()]
        else:
            values[key] = value
    return values


def load_config_file(path: Path) -> dict[str, Any]:
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e
    if path.suffix == ".json":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON in {path}: {e}") from e
        if not isinstance(raw, dict):
            raise ConfigError(f"{path} must contain a JSON object")
        return {_normalize_key(k): v for k, v in raw.items()}
    return parse_config_text(text)


def resolve_config(config_path: Optional[Path] = None, **overrides: Any) -> RunConfig:
    """Build a RunConfig: file values, then a named preset, then flags (``None`` = not given)."""
    values: dict[str, Any] = load_config_file(config_path) if config_path else {}
    flags = {_normalize_key(k): v for k, v in overrides.items() if v is not None}
    preset = flags.get("preset", values.get("preset"))
    if preset in PRESETS:
        values.update(PRESETS[preset])
    values.update(flags)
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"invalid configuration: {problems}", {"errors": e.errors()}) from e
