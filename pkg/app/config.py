import os
from pydantic import BaseModel
from dotenv import load_dotenv
import logging


# Load .env file if present
load_dotenv()


def _env_flag(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in {"1", "true", "yes"}


class Settings(BaseModel):
    project_name: str = "GCD Pattern Analyzer"
    version: str = "0.1.0"

    # Logging
    log_level: str = os.getenv("LOG_LEVEL", "WARNING")

    # Factorization of the resultant
    trial_division_bound: int = int(os.getenv("TRIAL_DIVISION_BOUND", str(10**7)))

    # Guards for exhaustive scans (roots mod p, G(n) windows)
    max_scan_prime: int = int(os.getenv("MAX_SCAN_PRIME", str(10**6)))
    scan_cap: int = int(os.getenv("SCAN_CAP", str(10**6)))

    # Concurrency and self-verification
    concurrency_limit: int = int(os.getenv("CONCURRENCY_LIMIT", "1"))
    self_check: bool = _env_flag("SELF_CHECK", "1")

    # Property suite defaults
    verify_radius: int = int(os.getenv("VERIFY_RADIUS", "200"))
    verify_samples: int = int(os.getenv("VERIFY_SAMPLES", "20"))
    verify_seed: int = int(os.getenv("VERIFY_SEED", "0"))
    exercise_window: int = int(os.getenv("EXERCISE_WINDOW", "64"))

settings = Settings()



def setup_logging(name: str = "") -> logging.Logger:
    level = getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
    )
    return logging.getLogger(f"gcd-patterns.{name}" if name else "gcd-patterns")
