"""Base experiment class for the fractal fidelity subcommands"""

from abc import ABC, abstractmethod
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from fractal_fidelity.storage.run_config import RunConfig
from fractal_fidelity.utils.config import config
from fractal_fidelity.utils.logger import setup_logger
from fractal_fidelity.utils.seeding import derive_seed

logger = setup_logger(__name__)


class BaseExperiment(ABC):
    """Base class for all experiments"""

    def __init__(self, experiment_name: str, conf: Any = None):
        self.experiment_name = experiment_name
        self.config = conf or config

    @abstractmethod
    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        """Run the experiment and return a standardized result"""
        pass

    def log_step(self, step: str, data: Any = None):
        """Log experiment step"""
        logger.info(f"[{self.experiment_name}] {step}")
        if data and self.config.debug:
            logger.debug(f"[{self.experiment_name}] Data: {data}")

    def output_dir(self, run_config: RunConfig) -> Path:
        path = Path(run_config.output_dir)
        path.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def realization_seed(run_config: RunConfig, n_q: int, realization: int = 0) -> int:
        """Disorder seed of one realization; shared by every K and epsilon at this n_q"""
        return derive_seed(run_config.seed, "realization", n_q, realization)

    def create_result(
        self,
        success: bool,
        data: Optional[Dict[str, Any]] = None,
        error: Optional[str] = None,
        metadata: Optional[Dict[str, Any]] = None,
        files: Optional[List[Path]] = None,
    ) -> Dict[str, Any]:
        """Create standardized result format"""
        result: Dict[str, Any] = {
            "success": success,
            "experiment": self.experiment_name,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }

        if data:
            result["data"] = data
        if error:
            result["error"] = error
        if metadata:
            result["metadata"] = metadata
        if files:
            result["files"] = [str(f) for f in files]

        return result
