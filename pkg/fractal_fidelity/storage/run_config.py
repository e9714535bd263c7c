"""Serializable run configuration shared by every subcommand"""

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from fractal_fidelity.analysis.fidelity import MIN_TRANSIENT_LENGTH
from fractal_fidelity.dynamics.sawtooth import MAX_QUBITS
from fractal_fidelity.dynamics.states import (
    BasisStateSpec,
    GaussianPacketSpec,
    InitialCondition,
)
from fractal_fidelity.utils.config import config
from fractal_fidelity.utils.errors import InvalidConfigError

RUN_CONFIG_FILE = "run_config.json"
# Commands that run transient detection on a generated F(t)
ANALYSED_COMMANDS = ("fracdim", "sweep", "tomography")


class InitialSpec(BaseModel):
    """Initial condition: Gaussian packet (default) or momentum eigenstate"""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["gaussian", "basis"] = "gaussian"
    theta0: float = Field(default=math.pi / 2, ge=0.0, lt=2.0 * math.pi)
    n0: float = 0.0
    sigma_n: Optional[float] = Field(default=None, gt=0.0)

    def to_condition(self) -> InitialCondition:
        if self.kind == "basis":
            if not float(self.n0).is_integer():
                raise InvalidConfigError(f"Basis initial state needs an integer n0, got {self.n0}")
            return BasisStateSpec(int(self.n0))
        return GaussianPacketSpec(self.theta0, self.n0, self.sigma_n)


class RunConfig(BaseModel):
    """
    Everything needed to re-execute a run

    Persisted next to the outputs as run_config.json; loading that file and running it
    again reproduces the numeric payloads byte for byte.
    """

    model_config = ConfigDict(extra="forbid")

    command: Literal["fidelity", "fracdim", "sweep", "tomography", "husimi", "synth", "circuit"]

    # Map
    n_q: int = Field(default=8, ge=1, le=MAX_QUBITS)
    K: float = math.sqrt(2.0)
    n_q_list: Optional[List[int]] = None
    K_list: Optional[List[float]] = None

    # Imperfections
    epsilon: float = Field(default=1e-4, ge=0.0)
    epsilon_list: Optional[List[float]] = None
    level_spacing: float = 0.0
    seed: int = Field(default_factory=lambda: config.master_seed, ge=0)
    realizations: int = Field(default=4, ge=1)

    # Evolution
    initial: InitialSpec = Field(default_factory=InitialSpec)
    t_max: int = Field(default=2**12, ge=1)

    # Fractal analysis
    t_star: Optional[int] = Field(default=None, ge=0)
    l_min: Optional[float] = Field(default=None, ge=1.0)
    l_max: Optional[float] = Field(default=None, ge=1.0)
    detrend: bool = False
    histogram: bool = False
    histogram_bins: int = Field(default=50, ge=2)
    input_csv: Optional[str] = None
    column: Optional[str] = None

    # Phase space
    G: int = Field(default=8, ge=2, le=64)
    husimi_grid: int = Field(default=32, ge=2)
    husimi_steps: int = Field(default=0, ge=0)
    seed_policy: Literal["shared", "per_cell"] = "shared"
    retain_series: bool = False

    # Synthetic signals
    signal: Literal["line", "sinusoid", "weierstrass"] = "weierstrass"
    length: int = Field(default=2**16, ge=1024)
    slope: float = 1.0
    period: float = Field(default=10.0, gt=0.0)
    amplitude: float = 1.0
    a: float = Field(default=0.5, gt=0.0, lt=1.0)
    b: float = Field(default=3.0, gt=1.0)

    # Circuit dump
    include_global_phase: bool = False

    # Output
    output_dir: str = Field(default_factory=lambda: config.output_dir)
    workers: int = Field(default_factory=lambda: config.workers, ge=1)

    @field_validator("K", "epsilon", "level_spacing", "slope", "amplitude")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be finite")
        return value

    @field_validator("K_list", "epsilon_list")
    @classmethod
    def _finite_list(cls, values: Optional[List[float]]) -> Optional[List[float]]:
        if values is not None:
            if not values:
                raise ValueError("must not be empty")
            if not all(math.isfinite(v) for v in values):
                raise ValueError("must contain finite values only")
        return values

    @field_validator("n_q_list")
    @classmethod
    def _qubit_range(cls, values: Optional[List[int]]) -> Optional[List[int]]:
        if values is not None and not all(1 <= v <= MAX_QUBITS for v in values):
            raise ValueError(f"qubit counts must lie in [1, {MAX_QUBITS}]")
        return values

    @model_validator(mode="after")
    def _check_window(self) -> "RunConfig":
        if (self.l_min is None) != (self.l_max is None):
            raise ValueError("l_min and l_max must be given together")
        if self.l_min is not None and self.l_min >= self.l_max:
            raise ValueError("l_min must be smaller than l_max")
        if self.epsilon_list is not None and any(e < 0 for e in self.epsilon_list):
            raise ValueError("epsilon_list values must be non-negative")
        if (
            self.command in ANALYSED_COMMANDS
            and self.input_csv is None
            and self.t_max + 1 < MIN_TRANSIENT_LENGTH
        ):
            raise ValueError(
                f"{self.command} needs t_max >= {MIN_TRANSIENT_LENGTH - 1} to locate the transient"
            )
        return self

    @property
    def window(self) -> Optional[Tuple[float, float]]:
        if self.l_min is None:
            return None
        return float(self.l_min), float(self.l_max)

    @property
    def qubit_counts(self) -> List[int]:
        return list(self.n_q_list) if self.n_q_list else [self.n_q]

    @property
    def K_values(self) -> List[float]:
        return list(self.K_list) if self.K_list else [self.K]

    @property
    def epsilon_values(self) -> List[float]:
        return list(self.epsilon_list) if self.epsilon_list else [self.epsilon]

    def save(self, directory: Union[str, Path]) -> Path:
        path = Path(directory) / RUN_CONFIG_FILE
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")
        return path


def build_run_config(
    command: str, file_values: Optional[Dict[str, Any]] = None, overrides: Optional[Dict[str, Any]] = None
) -> RunConfig:
    """
    Merge config-file values and command-line overrides into a validated RunConfig

    Precedence: overrides > file values > environment defaults.
    """
    values: Dict[str, Any] = dict(file_values or {})
    values.pop("command", None)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key == "initial" and isinstance(value, dict):
            values["initial"] = {**values.get("initial", {}), **value}
        else:
            values[key] = value
    try:
        return RunConfig(command=command, **values)
    except ValidationError as e:
        raise InvalidConfigError(f"Invalid run configuration: {e}") from e


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a JSON config file (for example a persisted run_config.json)"""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidConfigError(f"Cannot read config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise InvalidConfigError(f"Config file {path} must hold a JSON object")
    return data
