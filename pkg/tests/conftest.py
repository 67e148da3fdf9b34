import sys
from pathlib import Path

import pytest

from freelinks import parse_diagram

sys.path.insert(0, str(Path(__file__).resolve().parent))

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


@pytest.fixture(scope="session")
def sample_tangle():
    """3-3 tangle with six mixed crossings, two per component pair."""
    return parse_diagram((DATA / "three_strand.tangle").read_text())


@pytest.fixture(scope="session")
def sample_closure():
    """The link closing every strand of the sample tangle into a circle."""
    tangle = (DATA / "three_strand.tangle").read_text()
    return parse_diagram(tangle.replace("tangle", "link").replace("open", "closed"))


@pytest.fixture(scope="session")
def trivial_tangle():
    return parse_diagram((DATA / "trivial_3_3.tangle").read_text())


@pytest.fixture(scope="session")
def triangle():
    return parse_diagram((DATA / "triangle.tangle").read_text())


@pytest.fixture(scope="session")
def four_component_link():
    return parse_diagram((DATA / "four_component.link").read_text())
