"""Experiment Orchestrator - dispatches a RunConfig to its experiment"""

from typing import Any, Dict, Type

from fractal_fidelity import __version__
from fractal_fidelity.experiments.base_experiment import BaseExperiment
from fractal_fidelity.experiments.circuit_experiment import CircuitExperiment
from fractal_fidelity.experiments.fidelity_experiment import FidelityExperiment
from fractal_fidelity.experiments.fracdim_experiment import FracdimExperiment
from fractal_fidelity.experiments.husimi_experiment import HusimiExperiment
from fractal_fidelity.experiments.sweep_experiment import SweepExperiment
from fractal_fidelity.experiments.synth_experiment import SynthExperiment
from fractal_fidelity.experiments.tomography_experiment import TomographyExperiment
from fractal_fidelity.storage.run_config import RunConfig
from fractal_fidelity.utils.errors import InvalidConfigError, JobFailedError
from fractal_fidelity.utils.logger import setup_logger

logger = setup_logger(__name__)

EXPERIMENTS: Dict[str, Type[BaseExperiment]] = {
    "fidelity": FidelityExperiment,
    "fracdim": FracdimExperiment,
    "sweep": SweepExperiment,
    "tomography": TomographyExperiment,
    "husimi": HusimiExperiment,
    "synth": SynthExperiment,
    "circuit": CircuitExperiment,
}


class ExperimentOrchestrator(BaseExperiment):
    """Persists the run configuration, then runs the matching experiment"""

    def __init__(self, conf: Any = None):
        super().__init__("ExperimentOrchestrator", conf)
        self.experiments = {name: cls(conf) for name, cls in EXPERIMENTS.items()}

    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        experiment = self.experiments.get(run_config.command)
        if experiment is None:
            raise InvalidConfigError(f"Unknown command: {run_config.command}")

        path = run_config.save(self.output_dir(run_config))
        self.log_step(f"Running {run_config.command} (run config at {path})")

        result = experiment.run(run_config)
        result.setdefault("metadata", {})["version"] = __version__
        result["run_config"] = str(path)

        if not result["success"]:
            logger.error(f"{run_config.command} failed: {result.get('error')}")
            raise JobFailedError(result.get("error") or f"{run_config.command} failed", result)

        self.log_step(f"{run_config.command} complete", result.get("data"))
        return result
