"""Gate-list dump of one Floquet period"""

from typing import Any, Dict

from fractal_fidelity.circuits.floquet_circuit import (
    build_floquet_circuit,
    describe_circuit,
    expected_gate_count,
)
from fractal_fidelity.dynamics.sawtooth import build_params
from fractal_fidelity.experiments.base_experiment import BaseExperiment
from fractal_fidelity.storage.run_config import RunConfig
from fractal_fidelity.storage.writers import write_json


class CircuitExperiment(BaseExperiment):
    def __init__(self, conf: Any = None):
        super().__init__("CircuitExperiment", conf)

    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        params = build_params(run_config.n_q, run_config.K)
        circuit = build_floquet_circuit(params, run_config.include_global_phase)
        text = describe_circuit(circuit)
        expected = expected_gate_count(params.n_q, run_config.include_global_phase)
        if circuit.gate_count != expected:
            return self.create_result(
                False, error=f"Gate count {circuit.gate_count} differs from closed form {expected}"
            )

        out = self.output_dir(run_config)
        path = out / "circuit.txt"
        path.write_text(text, encoding="utf-8")
        meta = write_json(out / "circuit.meta.json", {"params": params.to_dict(), **circuit.metadata()})
        self.log_step(f"Circuit with {circuit.gate_count} gates written")
        return self.create_result(
            True, data={"text": text, **circuit.metadata()}, files=[path, meta]
        )
