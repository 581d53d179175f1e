"""Experiment configuration schema (YAML or JSON), validated before any work is done."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from .errors import ConfigInvalid, InvalidParameters
from .profiles import profile_from_spec

__all__ = ["EXPERIMENTS", "ExperimentConfig", "load_config", "parse_config"]

EXPERIMENTS = (
    "weak-check",
    "fubini",
    "holder",
    "energy",
    "w1p-growth",
    "besov",
    "spectral-selftest",
    "kh2d",
    "kh3d",
    "sheet",
    "example1",
    "example2",
)

ExperimentName = Literal[
    "weak-check",
    "fubini",
    "holder",
    "energy",
    "w1p-growth",
    "besov",
    "spectral-selftest",
    "kh2d",
    "kh3d",
    "sheet",
    "example1",
    "example2",
]


class ExperimentConfig(BaseModel):
    """All keys are optional except ``experiment``; unset numeric keys take per-experiment defaults."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    experiment: ExperimentName
    seed: int = 0
    output_dir: Optional[str] = None
    u1: Optional[dict[str, Any]] = None
    u3: Optional[dict[str, Any]] = None
    n: Optional[int] = None
    ns: Optional[list[int]] = None
    q: Optional[int] = None
    m: Optional[int] = None
    times: Optional[list[float]] = None
    ks: Optional[list[int]] = None
    alphas: Optional[list[float]] = None
    omega0: Optional[list[float]] = None
    p: Optional[float] = None
    s: Optional[float] = None
    count: Optional[int] = None
    max_mode: Optional[int] = None
    j_max: Optional[int] = None
    deltas: Optional[list[float]] = None
    example1: Optional[dict[str, float]] = None
    tolerances: dict[str, float] = {}

    @field_validator("u1", "u3")
    @classmethod
    def _profile(cls, v):
        if v is not None:
            try:
                profile_from_spec(v)
            except InvalidParameters as exc:
                raise ValueError(str(exc)) from None
        return v

    @field_validator("n", "q", "m", "count", "max_mode", "j_max")
    @classmethod
    def _positive(cls, v):
        if v is not None and v < 0:
            raise ValueError("must be non-negative")
        return v

    @field_validator("example1")
    @classmethod
    def _example1_keys(cls, v):
        if v is not None:
            extra = set(v) - {"alpha1", "beta1", "alpha3", "beta3", "xi1", "xi2"}
            if extra:
                raise ValueError(f"unknown example1 keys {sorted(extra)}")
        return v


def parse_config(data: Any) -> ExperimentConfig:
    if not isinstance(data, dict):
        raise ConfigInvalid("config must be a mapping")
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigInvalid(str(exc)) from None


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigInvalid(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text) if path.suffix == ".json" else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigInvalid(f"cannot parse {path}: {exc}") from None
    return parse_config(data)
