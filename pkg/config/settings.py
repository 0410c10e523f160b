"""Configuration settings for BranchLab."""

import os
from pathlib import Path
from dotenv import load_dotenv


load_dotenv()


BASE_DIR = Path(__file__).parent.parent
LOGS_DIR = Path(os.getenv("BRANCHLAB_LOGS_DIR", BASE_DIR / "logs"))


LOGS_DIR.mkdir(parents=True, exist_ok=True)


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, default))


def _env_bool(name: str, default: bool) -> bool:
    return os.getenv(name, str(default)).lower() in ("1", "true", "yes")


DEFAULT_SEED = int(os.getenv("BRANCHLAB_SEED", "0"))
ENUMERATION_CAP = int(os.getenv("BRANCHLAB_ENUMERATION_CAP", "4096"))
MAX_WITNESSES = int(os.getenv("BRANCHLAB_MAX_WITNESSES", "25"))


TOL_EXACT = _env_float("BRANCHLAB_TOL_EXACT", 1e-10)
TOL_CONSISTENCY = _env_float("BRANCHLAB_TOL_CONSISTENCY", 1e-8)
TOL_RANK = _env_float("BRANCHLAB_TOL_RANK", 1e-12)
TOL_NEAR_ORTH = _env_float("BRANCHLAB_TOL_NEAR_ORTH", 1e-3)


# Macrostate Indifference is unnecessary for the representation result, so
# suites skip it unless asked.
INCLUDE_MACROSTATE_INDIFFERENCE = _env_bool("BRANCHLAB_INCLUDE_MACROSTATE_INDIFFERENCE", False)


AUDIT_ENABLED = _env_bool("BRANCHLAB_AUDIT", True)
AUDIT_LOG_PATH = Path(os.getenv("BRANCHLAB_AUDIT_LOG_PATH", LOGS_DIR / "audit.jsonl"))


AUDIT_LOG_PATH.parent.mkdir(parents=True, exist_ok=True)
