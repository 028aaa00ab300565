# tests/conftest.py
import os

# the ledger must never touch a file database during tests
os.environ["DATABASE_URL"] = "sqlite://"

import pytest  # noqa: E402


POWERSET3 = """\
# every subset of {0, 1, 2}
domain: 0 1 2
-
0
1
0 1
2
0 2
1 2
0 1 2
"""

SINGLES4 = """\
domain: 0 1 2 3
0
1
2
3
"""

WITH_TARGET = """\
domain: 0 1 2 3
target: 1
0 1
0
1 2 3
"""

COVER = """\
universe: 1 2 3 4
1 2
3 4
1 3
2 4
1 2 3
"""

MALFORMED = """\
domain: 0 1
0 5
"""


def _write(tmp_path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture
def powerset3_file(tmp_path):
    return _write(tmp_path, "powerset3.cls", POWERSET3)


@pytest.fixture
def singles4_file(tmp_path):
    return _write(tmp_path, "singles4.cls", SINGLES4)


@pytest.fixture
def target_file(tmp_path):
    return _write(tmp_path, "target.cls", WITH_TARGET)


@pytest.fixture
def cover_file(tmp_path):
    return _write(tmp_path, "cover1.scv", COVER)


@pytest.fixture
def malformed_file(tmp_path):
    return _write(tmp_path, "bad.cls", MALFORMED)
