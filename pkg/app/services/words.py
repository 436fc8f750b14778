"""Word and letter primitives shared by the cycle services.

Words compare positionally; cyclic equivalence is only ever tested by the
verifier through window sets.
"""
from collections import Counter
from typing import Sequence

from app.models.schemas import Cycle, Word
from app.services.exceptions import ParameterError


def weight(w: Word) -> int:
    """h(w), the sum of the letters"""
    return sum(w.letters)


def window(c: Cycle, start: int) -> Word:
    """The length-n word read cyclically from position `start`"""
    if not 0 <= start < c.length:
        raise ParameterError(f"window start {start} is outside 0..{c.length - 1}")
    letters = tuple(c.letters[(start + i) % c.length] for i in range(c.window_length))
    return Word(letters=letters, alphabet_size=c.alphabet_size)


def windows(c: Cycle) -> Sequence[Word]:
    return [window(c, start) for start in range(c.length)]


def word_to_multiset(w: Word) -> Counter:
    """Element i of [n] with multiplicity w_i (1-based elements)"""
    return Counter({i: letter for i, letter in enumerate(w.letters, start=1) if letter})


def rotate(w: Word) -> Word:
    return Word(letters=w.letters[1:] + w.letters[:1], alphabet_size=w.alphabet_size)
