"""Phase-space tomography: D on a G x G grid of initial conditions, plus a Husimi map"""

from typing import Any, Dict

import numpy as np
import pandas as pd

from fractal_fidelity.analysis.phase_space import (
    TomographyGrid,
    husimi,
    n_centers,
    theta_centers,
    tomography_scan,
)
from fractal_fidelity.dynamics.sawtooth import build_params
from fractal_fidelity.experiments.base_experiment import BaseExperiment
from fractal_fidelity.experiments.husimi_experiment import evolved_state
from fractal_fidelity.experiments.jobs import pool_map
from fractal_fidelity.storage.run_config import RunConfig
from fractal_fidelity.storage.writers import write_matrix, write_series, write_table
from fractal_fidelity.utils.errors import FractalFidelityError
from fractal_fidelity.utils.logger import setup_logger
from fractal_fidelity.utils.seeding import SEED_HASH

logger = setup_logger(__name__)


class TomographyExperiment(BaseExperiment):
    """Writes d_grid.csv (rows theta, columns n), cells.csv and husimi.csv"""

    def __init__(self, conf: Any = None):
        super().__init__("TomographyExperiment", conf)

    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        try:
            params = build_params(run_config.n_q, run_config.K)
            G = run_config.G
            self.log_step(
                f"Tomography {G}x{G} n_q={params.n_q} K={params.K} eps={run_config.epsilon} "
                f"t_max={run_config.t_max} seeds={run_config.seed_policy}"
            )
            grid = tomography_scan(
                params,
                run_config.epsilon,
                run_config.t_max,
                G,
                seed_policy=run_config.seed_policy,
                master_seed=run_config.seed,
                window=run_config.window,
                level_spacing=run_config.level_spacing,
                keep_series=run_config.retain_series,
                map_fn=pool_map(run_config.workers),
            )
            out = self.output_dir(run_config)
            metadata = {**grid.metadata(), "seed_hash": SEED_HASH, "window_override": run_config.window}
            files = [
                write_matrix(
                    grid.D,
                    out / "d_grid.csv",
                    n_centers(G, params.N),
                    {**metadata, "rows": "theta centres", "columns": "n centres"},
                ),
                write_table(
                    pd.DataFrame([cell.to_record() for cell in grid.cells]),
                    out / "cells.csv",
                    metadata,
                ),
            ]
            if run_config.retain_series:
                files.extend(self._write_series(grid, out))

            state = evolved_state(run_config, params)
            density = husimi(state, params, run_config.husimi_grid, run_config.husimi_grid)
            files.append(
                write_matrix(
                    density.values,
                    out / "husimi.csv",
                    density.n,
                    {**density.metadata(), "steps": run_config.husimi_steps, "initial": run_config.initial.model_dump()},
                )
            )

            failed = grid.failed
            data = {
                "G": G,
                "cells": len(grid.cells),
                "failed": len(failed),
                "D_mean": float(np.nanmean(grid.D)) if np.isfinite(grid.D).any() else None,
            }
            self.log_step(f"Tomography done: {len(failed)} failed cell(s)")
            if failed:
                return self.create_result(
                    False, data=data, error=f"{len(failed)} cell(s) failed", files=files
                )
            return self.create_result(True, data=data, metadata=metadata, files=files)
        except FractalFidelityError:
            raise
        except Exception as e:
            logger.error(f"Tomography failed: {e}")
            return self.create_result(False, error=str(e))

    def _write_series(self, grid: TomographyGrid, out):
        files = []
        thetas = theta_centers(grid.G)
        for cell in grid.cells:
            if cell.series is None:
                continue
            files.append(
                write_series(
                    np.asarray(cell.series),
                    out / "series" / f"cell_{cell.i}_{cell.j}.csv",
                    {"cell": cell.to_record(), "theta_row": float(thetas[cell.i])},
                )
            )
        return files
