import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def root():
    return ROOT


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("QSHIFT_CLI") or shutil.which("qshift")
    if not path:
        candidate = ROOT / "build" / "qshift"
        path = str(candidate) if candidate.exists() else None
    if not path:
        pytest.skip("qshift executable not found")
    return path
