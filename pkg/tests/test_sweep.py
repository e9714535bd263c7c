"""Sweep aggregation and the crossover strength"""

import math

import numpy as np
import pandas as pd
import pytest

from fractal_fidelity.experiments.jobs import pool_map, run_jobs
from fractal_fidelity.experiments.sweep_experiment import (
    JOB_COLUMNS,
    SweepExperiment,
    aggregate,
    crossover_epsilon,
    sweep_job,
)
from fractal_fidelity.storage.run_config import build_run_config
from fractal_fidelity.utils.seeding import derive_seed


def job_frame(rows):
    base = {column: None for column in JOB_COLUMNS}
    return pd.DataFrame([{**base, "success": True, **row} for row in rows], columns=JOB_COLUMNS)


def test_aggregate_skips_failed_and_undefined_jobs():
    frame = job_frame(
        [
            {"n_q": 4, "K": -1.0, "regime": "integrable", "epsilon": 1e-3, "D": 1.0},
            {"n_q": 4, "K": -1.0, "regime": "integrable", "epsilon": 1e-3, "D": 1.2},
            {"n_q": 4, "K": -1.0, "regime": "integrable", "epsilon": 1e-3, "D": math.nan},
            {"n_q": 4, "K": -1.0, "regime": "integrable", "epsilon": 1e-3, "D": 9.0, "success": False},
        ]
    )
    table = aggregate(frame, ["n_q", "regime", "epsilon"])
    assert len(table) == 1
    row = table.iloc[0]
    assert row["D_mean"] == pytest.approx(1.1)
    assert row["D_std"] == pytest.approx(0.1)
    assert row["count"] == 2


def test_aggregate_of_nothing_has_columns():
    table = aggregate(job_frame([{"D": math.nan}]), ["n_q", "epsilon"])
    assert table.empty
    assert list(table.columns) == ["n_q", "epsilon", "D_mean", "D_std", "count"]


def test_crossover_is_first_epsilon_above_threshold():
    d_vs_epsilon = pd.DataFrame(
        {
            "n_q": [4, 4, 4, 6, 6, 6, 4],
            "regime": ["integrable"] * 6 + ["chaotic"],
            "epsilon": [1e-4, 1e-3, 1e-2, 1e-4, 1e-3, 1e-2, 1e-4],
            "D_mean": [1.05, 1.2, 1.5, 1.0, 1.02, 1.04, 1.4],
        }
    )
    table = crossover_epsilon(d_vs_epsilon)
    assert table["n_q"].tolist() == [4, 6]
    assert table["epsilon_c"].iloc[0] == 1e-3
    assert np.isnan(table["epsilon_c"].iloc[1])


def test_realization_seeds_are_shared_across_K_and_epsilon():
    run_config = build_run_config(
        "sweep",
        overrides={"K_list": [-1.0, 1.0], "epsilon_list": [1e-3, 1e-2], "realizations": 2, "seed": 5},
    )
    jobs = SweepExperiment().build_jobs(run_config)
    assert len(jobs) == 8
    assert {job["seed"] for job in jobs} == {derive_seed(5, "realization", 8, r) for r in range(2)}


def test_failed_job_comes_back_as_record():
    run_config = build_run_config("sweep", overrides={"t_max": 200, "initial": {"sigma_n": 0.05}})
    record = sweep_job(
        {"run_config": run_config, "n_q": 3, "K": 1.0, "epsilon": 1e-3, "realization": 0, "seed": 1}
    )
    assert record["success"] is False
    assert "grid point" in record["error"]
    assert math.isnan(record["D"])


def test_run_jobs_preserves_order():
    assert run_jobs(abs, [-3, 1, -2]) == [3, 1, 2]
    assert pool_map(2)(abs, [-3, 1, -2, 5]) == [3, 1, 2, 5]
