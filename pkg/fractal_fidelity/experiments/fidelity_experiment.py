"""Fidelity decay F(t) for one configuration"""

from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from fractal_fidelity.analysis.fidelity import (
    MIN_TRANSIENT_LENGTH,
    FidelitySeries,
    compute_fidelity_series,
    detect_transient,
    fluctuation_histogram,
    fluctuation_segment,
)
from fractal_fidelity.circuits.floquet_circuit import build_floquet_circuit
from fractal_fidelity.circuits.imperfections import sample_imperfections
from fractal_fidelity.dynamics.sawtooth import build_params
from fractal_fidelity.experiments.base_experiment import BaseExperiment
from fractal_fidelity.storage.run_config import RunConfig
from fractal_fidelity.storage.writers import write_series, write_table
from fractal_fidelity.utils.errors import FractalFidelityError
from fractal_fidelity.utils.logger import setup_logger
from fractal_fidelity.utils.seeding import SEED_HASH

logger = setup_logger(__name__)


def fidelity_for(
    run_config: RunConfig, n_q: int, K: float, epsilon: float, seed: int
) -> FidelitySeries:
    """F(t) for one (n_q, K, epsilon, seed) point of a run configuration"""
    params = build_params(n_q, K)
    imperfections = sample_imperfections(n_q, epsilon, seed, run_config.level_spacing)
    series = compute_fidelity_series(
        params,
        imperfections,
        run_config.initial.to_condition(),
        run_config.t_max,
        circuit=build_floquet_circuit(params),
    )
    if len(series.values) >= MIN_TRANSIENT_LENGTH:
        series = series.with_transient(detect_transient(series, override=run_config.t_star))
    return series


class FidelityExperiment(BaseExperiment):
    """Writes the series (t, F) and, on request, the one-step fluctuation histogram"""

    def __init__(self, conf: Any = None):
        super().__init__("FidelityExperiment", conf)

    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        try:
            seed = self.realization_seed(run_config, run_config.n_q)
            self.log_step(
                f"Computing F(t) for n_q={run_config.n_q} K={run_config.K} "
                f"eps={run_config.epsilon} t_max={run_config.t_max}"
            )
            series = fidelity_for(run_config, run_config.n_q, run_config.K, run_config.epsilon, seed)

            out = self.output_dir(run_config)
            metadata = {**series.metadata(), "seed_hash": SEED_HASH, "master_seed": run_config.seed}
            files = [write_series(series.values, out / "series.csv", metadata)]

            histogram: Optional[Dict[str, Any]] = None
            if run_config.histogram:
                histogram = self._write_histogram(series, run_config, out, files)

            self.log_step("Fidelity series written", {"F(t_max)": float(series.values[-1])})
            return self.create_result(
                True,
                data={
                    "t_max": series.t_max,
                    "final_fidelity": float(series.values[-1]),
                    "t_star": series.t_star,
                    "saturated": series.saturated,
                    "gate_count": series.gate_count,
                    "histogram": histogram,
                },
                metadata=metadata,
                files=files,
            )
        except FractalFidelityError:
            raise
        except Exception as e:
            logger.error(f"Fidelity experiment failed: {e}")
            return self.create_result(False, error=str(e))

    def _write_histogram(self, series: FidelitySeries, run_config: RunConfig, out, files):
        if series.saturated is None:
            segment = series.values
        else:
            segment = fluctuation_segment(series.values, detect_transient(series, override=run_config.t_star))
        edges, density = fluctuation_histogram(segment, bins=run_config.histogram_bins)
        frame = pd.DataFrame({"bin_left": edges[:-1], "bin_right": edges[1:], "density": density})
        files.append(
            write_table(
                frame,
                out / "histogram.csv",
                {
                    "quantity": "dF = F(t+1) - F(t) over the post-t* segment",
                    "bins": run_config.histogram_bins,
                    "segment_length": int(len(segment)),
                    "density_integral": float(np.sum(density * np.diff(edges))),
                },
            )
        )
        return {"bins": run_config.histogram_bins, "segment_length": int(len(segment))}
