"""Fractal dimension of a fidelity series or of an external signal"""

from typing import Any, Dict

import pandas as pd

from fractal_fidelity.analysis.dimension import FractalAnalysis, analyze_series
from fractal_fidelity.experiments.base_experiment import BaseExperiment
from fractal_fidelity.experiments.fidelity_experiment import fidelity_for
from fractal_fidelity.storage.run_config import RunConfig
from fractal_fidelity.storage.writers import read_signal, write_json, write_series, write_table
from fractal_fidelity.utils.errors import FractalFidelityError
from fractal_fidelity.utils.logger import setup_logger
from fractal_fidelity.utils.seeding import SEED_HASH

logger = setup_logger(__name__)


def box_count_frame(analysis: FractalAnalysis) -> pd.DataFrame:
    table = analysis.table
    window = analysis.window.bounds()
    return pd.DataFrame(
        {"L": table.L, "M": table.M, "in_window": table.in_window(window).astype(int)}
    )


class FracdimExperiment(BaseExperiment):
    """(L, M) table, fitted D and its sensitivity band"""

    def __init__(self, conf: Any = None):
        super().__init__("FracdimExperiment", conf)

    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        try:
            out = self.output_dir(run_config)
            files = []

            if run_config.input_csv:
                self.log_step(f"Analysing external signal {run_config.input_csv}")
                values = read_signal(run_config.input_csv, run_config.column)
                # Third-party signals are analysed from t_star (default 0), no transient search
                analysis = analyze_series(
                    values,
                    window=run_config.window,
                    t_star=run_config.t_star,
                    detrend=run_config.detrend,
                    transient=False,
                )
                source: Dict[str, Any] = {"input_csv": run_config.input_csv, "column": run_config.column}
            else:
                seed = self.realization_seed(run_config, run_config.n_q)
                self.log_step(
                    f"Computing F(t) for n_q={run_config.n_q} K={run_config.K} "
                    f"eps={run_config.epsilon}"
                )
                series = fidelity_for(
                    run_config, run_config.n_q, run_config.K, run_config.epsilon, seed
                )
                source = {**series.metadata(), "seed_hash": SEED_HASH, "master_seed": run_config.seed}
                files.append(write_series(series.values, out / "series.csv", source))
                analysis = analyze_series(
                    series.values,
                    window=run_config.window,
                    t_star=run_config.t_star,
                    detrend=run_config.detrend,
                    epsilon=run_config.epsilon,
                    n_q=run_config.n_q,
                )

            summary = analysis.to_dict()
            files.append(
                write_table(box_count_frame(analysis), out / "boxcount.csv", {"source": source, **summary})
            )
            files.append(write_json(out / "fit.json", {"source": source, **summary}))

            self.log_step(f"D = {analysis.D:.4f}", {"flags": analysis.flags})
            return self.create_result(
                True, data=summary, metadata={"source": source}, files=files
            )
        except FractalFidelityError:
            raise
        except Exception as e:
            logger.error(f"Fractal dimension experiment failed: {e}")
            return self.create_result(False, error=str(e))
