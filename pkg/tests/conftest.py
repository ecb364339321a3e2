import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "fastapi_app"))

from icl.enumeration import canonical_suite  # noqa: E402


@pytest.fixture(scope="session")
def suite():
    """The nine evaluation contexts keyed by id."""
    return {ctx.id: ctx.model for ctx in canonical_suite()}


@pytest.fixture
def model_file(tmp_path):
    """Write a model description to a JSON file and return its path."""
    import json

    def write(spec, name="model.json"):
        path = tmp_path / name
        path.write_text(json.dumps(spec), encoding="utf-8")
        return str(path)

    return write
