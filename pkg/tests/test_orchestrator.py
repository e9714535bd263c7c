"""Experiment dispatch and result envelopes"""

from typing import get_args

import pytest

from fractal_fidelity import __version__
from fractal_fidelity.experiments.orchestrator import EXPERIMENTS, ExperimentOrchestrator
from fractal_fidelity.experiments.synth_experiment import SynthExperiment
from fractal_fidelity.storage.run_config import RunConfig, build_run_config
from fractal_fidelity.utils.errors import JobFailedError


def synth_config(tmp_path):
    return build_run_config(
        "synth", overrides={"signal": "sinusoid", "length": 1024, "output_dir": str(tmp_path)}
    )


def test_every_command_has_an_experiment():
    assert set(EXPERIMENTS) == set(get_args(RunConfig.model_fields["command"].annotation))


def test_result_envelope(tmp_path):
    result = ExperimentOrchestrator().run(synth_config(tmp_path))
    assert result["success"] is True
    assert result["experiment"] == "SynthExperiment"
    assert result["metadata"]["version"] == __version__
    assert result["run_config"].endswith("run_config.json")
    assert result["data"]["expected_D"] == 2.0
    assert "timestamp" in result
    assert (tmp_path / "signal.csv").exists()


def test_run_config_is_saved_even_when_the_experiment_writes_nothing(tmp_path, mocker):
    run = mocker.patch.object(
        SynthExperiment, "run", return_value={"success": True, "experiment": "SynthExperiment"}
    )
    run_config = synth_config(tmp_path)
    ExperimentOrchestrator().run(run_config)
    run.assert_called_once_with(run_config)
    assert (tmp_path / "run_config.json").exists()
    assert not (tmp_path / "signal.csv").exists()


def test_failed_result_raises_with_the_result_attached(tmp_path, mocker):
    mocker.patch.object(
        SynthExperiment,
        "run",
        return_value={"success": False, "experiment": "SynthExperiment", "error": "2 job(s) failed"},
    )
    with pytest.raises(JobFailedError) as excinfo:
        ExperimentOrchestrator().run(synth_config(tmp_path))
    assert str(excinfo.value) == "2 job(s) failed"
    assert excinfo.value.result["success"] is False
