import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from profilegen import corpus_path  # noqa: E402
from profilegen.spec_io import load  # noqa: E402

CORPUS = Path(str(corpus_path()))


@pytest.fixture(scope="session")
def corpus():
    def get(name):
        spec, _ = load(CORPUS / f"{name}.gen")
        return spec

    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
