from pathlib import Path

import pytest

from cwjgen.classfile import build_universe, load_fixture_models

FIXTURES = Path(__file__).parent / "fixtures"
SCRIPTS = Path(__file__).parent / "scripts"


@pytest.fixture(scope="session")
def bar_universe_text():
    return (FIXTURES / "bar_universe.fixture").read_text()


@pytest.fixture(scope="session")
def bar_universe(bar_universe_text):
    return build_universe(load_fixture_models(bar_universe_text))
