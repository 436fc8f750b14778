import pytest

from app.models.schemas import Poset
from app.utils.helpers import parse_poset

TWO_CHAIN_TEXT = """\
# A below B
elements: A B
cover: A B
"""

W_POSET_TEXT = """\
elements: a b c d e
cover: a b
cover: c b
cover: c d
cover: e d
"""


@pytest.fixture
def two_chain() -> Poset:
    return parse_poset(TWO_CHAIN_TEXT)


@pytest.fixture
def w_poset() -> Poset:
    return parse_poset(W_POSET_TEXT)


@pytest.fixture
def four_chain() -> Poset:
    return Poset(elements=("p", "q", "r", "s"), covers=(("p", "q"), ("q", "r"), ("r", "s")))


@pytest.fixture
def two_chain_file(tmp_path):
    path = tmp_path / "two_chain.txt"
    path.write_text(TWO_CHAIN_TEXT, encoding="utf-8")
    return str(path)
