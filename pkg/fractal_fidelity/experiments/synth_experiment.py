"""Synthetic validation signals"""

from typing import Any, Dict

import numpy as np
import pandas as pd

from fractal_fidelity.analysis.signals import synth_signal, weierstrass_dimension, weierstrass_step
from fractal_fidelity.experiments.base_experiment import BaseExperiment
from fractal_fidelity.storage.run_config import RunConfig
from fractal_fidelity.storage.writers import write_table
from fractal_fidelity.utils.errors import FractalFidelityError
from fractal_fidelity.utils.logger import setup_logger

logger = setup_logger(__name__)


class SynthExperiment(BaseExperiment):
    """Writes signal.csv (t, value) with the expected dimension in the sidecar"""

    def __init__(self, conf: Any = None):
        super().__init__("SynthExperiment", conf)

    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        try:
            kind = run_config.signal
            self.log_step(f"Generating {kind} signal of {run_config.length} samples")
            values = synth_signal(
                kind,
                run_config.length,
                slope=run_config.slope,
                period=run_config.period,
                amplitude=run_config.amplitude,
                a=run_config.a,
                b=run_config.b,
            )
            if kind == "weierstrass":
                parameters = {"a": run_config.a, "b": run_config.b, "dt": weierstrass_step(run_config.length, run_config.b)}
                expected = weierstrass_dimension(run_config.a, run_config.b)
            elif kind == "sinusoid":
                parameters = {"period": run_config.period, "amplitude": run_config.amplitude}
                expected = 2.0
            else:
                parameters = {"slope": run_config.slope}
                expected = 1.0

            metadata = {"kind": kind, "length": run_config.length, "parameters": parameters, "expected_D": expected}
            frame = pd.DataFrame({"t": np.arange(len(values), dtype=np.int64), "value": values})
            path = write_table(frame, self.output_dir(run_config) / "signal.csv", metadata)
            return self.create_result(True, data=metadata, files=[path])
        except FractalFidelityError:
            raise
        except Exception as e:
            logger.error(f"Synthetic signal failed: {e}")
            return self.create_result(False, error=str(e))
