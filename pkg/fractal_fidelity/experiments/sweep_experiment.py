"""
Sweep over (n_q, K, epsilon, realization)

Every job computes one fidelity series and its fractal dimension. The jobs table is
aggregated into mean D per (n_q, epsilon, K), per (n_q, regime, epsilon), and into the
crossover strength epsilon_c(n_q): the first swept epsilon at which the integrable
regime's mean D exceeds 1.1.
"""

import math
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from fractal_fidelity.analysis.dimension import analyze_series
from fractal_fidelity.dynamics.sawtooth import Regime, classify_regime
from fractal_fidelity.experiments.base_experiment import BaseExperiment
from fractal_fidelity.experiments.fidelity_experiment import fidelity_for
from fractal_fidelity.experiments.jobs import run_jobs
from fractal_fidelity.storage.run_config import RunConfig
from fractal_fidelity.storage.writers import write_table
from fractal_fidelity.utils.errors import FractalFidelityError
from fractal_fidelity.utils.logger import setup_logger
from fractal_fidelity.utils.seeding import SEED_HASH, derive_seed

logger = setup_logger(__name__)

CROSSOVER_D = 1.1
JOB_COLUMNS = [
    "n_q", "K", "regime", "epsilon", "realization", "seed",
    "D", "stderr", "r2", "l_min", "l_max", "t_star", "saturated", "flags", "success", "error",
]


def sweep_job(job: Dict[str, Any]) -> Dict[str, Any]:
    """One (n_q, K, epsilon, realization) point; failures come back as records"""
    run_config: RunConfig = job["run_config"]
    record = {
        "n_q": job["n_q"],
        "K": job["K"],
        "regime": classify_regime(job["K"]).value,
        "epsilon": job["epsilon"],
        "realization": job["realization"],
        "seed": job["seed"],
        "D": math.nan,
        "stderr": math.nan,
        "r2": math.nan,
        "l_min": math.nan,
        "l_max": math.nan,
        "t_star": None,
        "saturated": None,
        "flags": "",
        "success": False,
        "error": "",
    }
    try:
        series = fidelity_for(run_config, job["n_q"], job["K"], job["epsilon"], job["seed"])
        analysis = analyze_series(
            series.values,
            window=run_config.window,
            t_star=run_config.t_star,
            detrend=run_config.detrend,
            epsilon=job["epsilon"],
            n_q=job["n_q"],
        )
    except (FractalFidelityError, ValueError) as e:
        logger.error(f"Sweep job n_q={job['n_q']} K={job['K']} eps={job['epsilon']} failed: {e}")
        record["error"] = str(e)
        return record

    fit = analysis.fit
    record.update(
        {
            "D": analysis.D,
            "stderr": fit.stderr if fit else math.nan,
            "r2": fit.r2 if fit else math.nan,
            "l_min": analysis.window.l_min,
            "l_max": analysis.window.l_max,
            "t_star": analysis.transient.t_star if analysis.transient else None,
            "saturated": analysis.transient.saturated if analysis.transient else None,
            "flags": ";".join(analysis.flags),
            "success": True,
        }
    )
    return record


def aggregate(jobs: pd.DataFrame, keys: List[str]) -> pd.DataFrame:
    """Mean, spread and count of D over successful jobs"""
    ok = jobs[jobs["success"] & jobs["D"].notna()]
    if ok.empty:
        return pd.DataFrame(columns=keys + ["D_mean", "D_std", "count"])
    grouped = ok.groupby(keys, sort=True)["D"]
    return grouped.agg(D_mean="mean", D_std=lambda d: float(np.std(d)), count="count").reset_index()


def crossover_epsilon(d_vs_epsilon: pd.DataFrame, threshold: float = CROSSOVER_D) -> pd.DataFrame:
    """First epsilon per n_q at which the integrable mean D exceeds the threshold (NaN if never)"""
    integrable = d_vs_epsilon[d_vs_epsilon["regime"] == Regime.INTEGRABLE.value]
    rows = []
    for n_q, group in integrable.groupby("n_q", sort=True):
        group = group.sort_values("epsilon")
        above = group[group["D_mean"] > threshold]
        rows.append(
            {
                "n_q": int(n_q),
                "epsilon_c": float(above["epsilon"].iloc[0]) if not above.empty else math.nan,
                "threshold": threshold,
            }
        )
    return pd.DataFrame(rows, columns=["n_q", "epsilon_c", "threshold"])


class SweepExperiment(BaseExperiment):
    """Fan-out over K, epsilon and disorder realizations, then aggregate"""

    def __init__(self, conf: Any = None):
        super().__init__("SweepExperiment", conf)

    def build_jobs(self, run_config: RunConfig) -> List[Dict[str, Any]]:
        return [
            {
                "run_config": run_config,
                "n_q": n_q,
                "K": K,
                "epsilon": epsilon,
                "realization": r,
                "seed": derive_seed(run_config.seed, "realization", n_q, r),
            }
            for n_q in run_config.qubit_counts
            for K in run_config.K_values
            for epsilon in run_config.epsilon_values
            for r in range(run_config.realizations)
        ]

    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        try:
            jobs = self.build_jobs(run_config)
            self.log_step(f"Sweeping {len(jobs)} jobs on {run_config.workers} worker(s)")
            records = run_jobs(sweep_job, jobs, run_config.workers)

            frame = pd.DataFrame(records, columns=JOB_COLUMNS)
            d_vs_k = aggregate(frame, ["n_q", "epsilon", "K", "regime"])
            d_vs_epsilon = aggregate(frame, ["n_q", "regime", "epsilon"])
            epsilon_c = crossover_epsilon(d_vs_epsilon)

            out = self.output_dir(run_config)
            provenance = {
                "master_seed": run_config.seed,
                "seed_hash": SEED_HASH,
                "realizations": run_config.realizations,
                "t_max": run_config.t_max,
                "initial": run_config.initial.model_dump(),
            }
            files = [
                write_table(frame, out / "jobs.csv", provenance),
                write_table(d_vs_k, out / "d_vs_k.csv", provenance),
                write_table(d_vs_epsilon, out / "d_vs_epsilon.csv", provenance),
                write_table(
                    epsilon_c,
                    out / "epsilon_c.csv",
                    {**provenance, "rule": f"first epsilon with integrable mean D > {CROSSOVER_D}"},
                ),
            ]

            failed = [r for r in records if not r["success"]]
            self.log_step(f"Sweep done: {len(records) - len(failed)} ok, {len(failed)} failed")
            data = {
                "jobs": len(records),
                "failed": len(failed),
                "epsilon_c": epsilon_c.to_dict(orient="records"),
            }
            if failed:
                return self.create_result(
                    False, data=data, error=f"{len(failed)} job(s) failed", files=files
                )
            return self.create_result(True, data=data, metadata=provenance, files=files)
        except FractalFidelityError:
            raise
        except Exception as e:
            logger.error(f"Sweep failed: {e}")
            return self.create_result(False, error=str(e))
