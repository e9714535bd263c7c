"""Configuration management for the fractal fidelity toolkit"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

from fractal_fidelity.utils.errors import InvalidConfigError

load_dotenv()


@dataclass
class Config:
    """Application configuration"""

    # Output
    output_dir: str = "./results"

    # Logging
    log_level: str = "INFO"

    # Orchestration
    workers: int = 1
    master_seed: int = 12345

    # Environment
    environment: str = "development"
    debug: bool = False

    @classmethod
    def from_env(cls) -> "Config":
        """Create config from environment variables"""
        return cls(
            output_dir=os.getenv("FRACFID_OUTPUT_DIR", "./results"),
            log_level=os.getenv("FRACFID_LOG_LEVEL", "INFO"),
            workers=int(os.getenv("FRACFID_WORKERS", "1")),
            master_seed=int(os.getenv("FRACFID_SEED", "12345")),
            environment=os.getenv("ENVIRONMENT", "development"),
            debug=os.getenv("DEBUG", "false").lower() == "true",
        )

    def validate(self) -> bool:
        """Validate configuration values"""
        if self.workers < 1:
            raise InvalidConfigError("FRACFID_WORKERS must be at least 1")
        if not self.output_dir:
            raise InvalidConfigError("FRACFID_OUTPUT_DIR must not be empty")

        return True


# Global config instance
config = Config.from_env()
