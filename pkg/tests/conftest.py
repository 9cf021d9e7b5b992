import pathlib

import pytest

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def programs_dir() -> pathlib.Path:
    return REPO_ROOT / "programs"


@pytest.fixture(scope="session")
def bug_program(programs_dir) -> str:
    return (programs_dir / "bug.lp").read_text()


@pytest.fixture(scope="session")
def bug_space(programs_dir) -> str:
    return (programs_dir / "bug.space").read_text()
