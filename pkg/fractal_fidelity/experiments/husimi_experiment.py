"""Husimi distribution of an evolved packet"""

from typing import Any, Dict

from fractal_fidelity.analysis.phase_space import husimi
from fractal_fidelity.circuits.floquet_circuit import build_floquet_circuit
from fractal_fidelity.circuits.imperfections import sample_imperfections
from fractal_fidelity.circuits.noisy import NoisyPropagator
from fractal_fidelity.dynamics.floquet import evolve
from fractal_fidelity.dynamics.sawtooth import MapParams, build_params
from fractal_fidelity.dynamics.states import MOMENTUM, StateVector, prepare_initial_state
from fractal_fidelity.experiments.base_experiment import BaseExperiment
from fractal_fidelity.storage.run_config import RunConfig
from fractal_fidelity.storage.writers import write_matrix
from fractal_fidelity.utils.errors import FractalFidelityError
from fractal_fidelity.utils.logger import setup_logger

logger = setup_logger(__name__)


def evolved_state(run_config: RunConfig, params: MapParams) -> StateVector:
    """Initial state after husimi_steps periods; noisy circuit when epsilon > 0"""
    state = prepare_initial_state(params, run_config.initial.to_condition())
    steps = run_config.husimi_steps
    if steps == 0:
        return state
    if run_config.epsilon == 0:
        return evolve(state, params, steps)
    seed = BaseExperiment.realization_seed(run_config, params.n_q)
    config = sample_imperfections(params.n_q, run_config.epsilon, seed, run_config.level_spacing)
    propagator = NoisyPropagator(build_floquet_circuit(params), config, state)
    for _ in range(steps):
        propagator.step()
    return StateVector(propagator.amplitudes.copy(), MOMENTUM)


class HusimiExperiment(BaseExperiment):
    """Writes husimi.csv, a G x G grid (rows theta, columns n)"""

    def __init__(self, conf: Any = None):
        super().__init__("HusimiExperiment", conf)

    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        try:
            params = build_params(run_config.n_q, run_config.K)
            G = run_config.husimi_grid
            self.log_step(f"Husimi {G}x{G} after {run_config.husimi_steps} step(s)")
            density = husimi(evolved_state(run_config, params), params, G, G)
            metadata = {
                **density.metadata(),
                "params": params.to_dict(),
                "steps": run_config.husimi_steps,
                "epsilon": run_config.epsilon,
                "initial": run_config.initial.model_dump(),
            }
            path = write_matrix(
                density.values, self.output_dir(run_config) / "husimi.csv", density.n, metadata
            )
            peak = density.peak()
            return self.create_result(
                True,
                data={
                    "peak": {"theta": float(density.theta[peak[0]]), "n": float(density.n[peak[1]])},
                    "raw_total": float(density.raw.sum()),
                },
                metadata=metadata,
                files=[path],
            )
        except FractalFidelityError:
            raise
        except Exception as e:
            logger.error(f"Husimi experiment failed: {e}")
            return self.create_result(False, error=str(e))
