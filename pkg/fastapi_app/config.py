import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from icl.enumeration import SearchBound

load_dotenv()

# Get the directory where this config file is located (fastapi_app directory)
BASE_DIR = Path(__file__).parent

# Output directory - where tables, diagrams and countermodels can be written
OUTPUT_DIR = BASE_DIR / "output"


def _height(value: str) -> Optional[int]:
    """Parse a height bound; 0 or 'none' means unbounded."""
    if value.strip().lower() in ("", "0", "none"):
        return None
    return int(value)


# Countermodel search bound used by verification, /valid and the poset's constant edges
DEFAULT_MAX_WORLDS = int(os.getenv("ICL_MAX_WORLDS", "4"))
DEFAULT_MAX_HEIGHT = _height(os.getenv("ICL_MAX_HEIGHT", "3"))
# Enumeration grows too fast past this many worlds to serve a request
MAX_SEARCH_WORLDS = 6

# Word lengths swept by verify and by table/census when no length is given
VERIFY_MAX_LEN = int(os.getenv("ICL_VERIFY_MAX_LEN", "6"))
TABLE_MAX_LEN = int(os.getenv("ICL_TABLE_MAX_LEN", "5"))

# Sampled (model, formula) pairs for the monotonicity and locality suites
FORMULA_SAMPLES = int(os.getenv("ICL_FORMULA_SAMPLES", "1000"))
SAMPLE_SEED = int(os.getenv("ICL_SAMPLE_SEED", "20240601"))

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

# Dashboard only
API_BASE_URL = os.getenv("API_BASE_URL", "http://localhost:8000")


def default_bound() -> SearchBound:
    """The configured countermodel search bound."""
    return SearchBound(DEFAULT_MAX_WORLDS, DEFAULT_MAX_HEIGHT)


def bound_from(max_worlds: Optional[int] = None, max_height: Optional[int] = None) -> SearchBound:
    """Override the configured bound where values are given; a height of 0 means unbounded."""
    worlds = DEFAULT_MAX_WORLDS if max_worlds is None else max_worlds
    if worlds > MAX_SEARCH_WORLDS:
        raise ValueError(f"max_worlds must be at most {MAX_SEARCH_WORLDS}, got {worlds}")
    if max_height is None:
        height = DEFAULT_MAX_HEIGHT
    else:
        height = max_height or None
    return SearchBound(worlds, height)


def get_output_path(filename: str) -> Path:
    """Get the full path for an output file, creating the output directory."""
    OUTPUT_DIR.mkdir(exist_ok=True)
    return OUTPUT_DIR / filename


# Print configuration for debugging
if __name__ == "__main__":
    print(f"BASE_DIR: {BASE_DIR}")
    print(f"OUTPUT_DIR: {OUTPUT_DIR}")
    print(f"DEFAULT_MAX_WORLDS: {DEFAULT_MAX_WORLDS}")
    print(f"DEFAULT_MAX_HEIGHT: {DEFAULT_MAX_HEIGHT}")
    print(f"VERIFY_MAX_LEN: {VERIFY_MAX_LEN}")
    print(f"TABLE_MAX_LEN: {TABLE_MAX_LEN}")
    print(f"FORMULA_SAMPLES: {FORMULA_SAMPLES}")
    print(f"SAMPLE_SEED: {SAMPLE_SEED}")
    print(f"LOG_LEVEL: {LOG_LEVEL}")
