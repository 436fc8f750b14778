from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic_core import PydanticCustomError


Letters = Tuple[int, ...]


class TextFormat(str, Enum):
    AUTO = "auto"
    DIGITS = "digits"
    CSV = "csv"


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class Word(BaseModel):
    """A finite word over the alphabet {0, ..., alphabet_size - 1}"""

    model_config = ConfigDict(frozen=True)

    letters: Letters
    alphabet_size: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_letters(self) -> "Word":
        if not self.letters:
            raise PydanticCustomError("empty_word", "a word has at least one letter")
        bad = [letter for letter in self.letters if not 0 <= letter < self.alphabet_size]
        if bad:
            raise PydanticCustomError(
                "letter_range",
                "letter {letter} is outside 0..{top}",
                {"letter": bad[0], "top": self.alphabet_size - 1},
            )
        return self

    def __len__(self) -> int:
        return len(self.letters)


class Cycle(BaseModel):
    """A cyclic letter sequence whose length-`window_length` windows encode objects"""

    model_config = ConfigDict(frozen=True)

    letters: Letters
    alphabet_size: int = Field(ge=1)
    window_length: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_letters(self) -> "Cycle":
        if not self.letters:
            raise PydanticCustomError("empty_cycle", "a cycle has at least one letter")
        bad = [letter for letter in self.letters if not 0 <= letter < self.alphabet_size]
        if bad:
            raise PydanticCustomError(
                "letter_range",
                "letter {letter} is outside 0..{top}",
                {"letter": bad[0], "top": self.alphabet_size - 1},
            )
        return self

    @property
    def length(self) -> int:
        return len(self.letters)


class WeightRangeParams(BaseModel):
    """The tuple (n, k, s, t): words of length n over k letters with weight in [s, t]"""

    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    s: int
    t: int

    @model_validator(mode="after")
    def _check_hypothesis(self) -> "WeightRangeParams":
        n, k, s, t = self.n, self.k, self.s, self.t
        if n < 2:
            raise PydanticCustomError("hypothesis", "requires n >= 2 (got n={n})", {"n": n})
        if k < 2:
            raise PydanticCustomError("hypothesis", "requires k >= 2 (got k={k})", {"k": k})
        if s < 0:
            raise PydanticCustomError("hypothesis", "requires 0 <= s (got s={s})", {"s": s})
        if s + k - 1 > t:
            raise PydanticCustomError(
                "hypothesis",
                "requires s+k-1 <= t (got s={s}, k={k}, t={t})",
                {"s": s, "k": k, "t": t},
            )
        if t > n * (k - 1):
            raise PydanticCustomError(
                "hypothesis",
                "requires t <= n(k-1) (got t={t}, n={n}, k={k})",
                {"t": t, "n": n, "k": k},
            )
        return self

    @property
    def vertex_length(self) -> int:
        return self.n - 1

    @property
    def vertex_floor(self) -> int:
        """Lowest legal vertex weight, max(0, s - (k - 1))"""
        return max(0, self.s - (self.k - 1))


class SinkSpec(BaseModel):
    """The sink vertex is `a` copies of x followed by `b` copies of x + 1"""

    model_config = ConfigDict(frozen=True)

    x: int = Field(ge=0)
    a: int = Field(ge=1)
    b: int = Field(ge=0)


class Walk(BaseModel):
    """A start vertex and the letters appended by each traversed edge"""

    model_config = ConfigDict(frozen=True)

    start: Letters
    steps: Letters = ()

    def vertices(self) -> List[Letters]:
        current = tuple(self.start)
        path = [current]
        for letter in self.steps:
            current = current[1:] + (letter,)
            path.append(current)
        return path

    @property
    def end(self) -> Letters:
        return self.vertices()[-1]


class CountTable(BaseModel):
    """A(n, k, j) for j = 0..n(k-1)"""

    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


class WalkRow(BaseModel):
    vertex: Letters
    vertex_weight: int
    edge_weight: Optional[int] = None
    legal: bool = True
    danger: bool = False


class WalkReport(BaseModel):
    verdict: Verdict
    rows: List[WalkRow]
    failed_step: Optional[int] = None
    reason: Optional[str] = None


class CycleReport(BaseModel):
    verdict: Verdict
    length: int
    expected_length: int
    windows_checked: int
    distinct_windows: int
    counterexample: Optional[Letters] = None
    counterexample_index: Optional[int] = None
    reason: Optional[str] = None


class Poset(BaseModel):
    """A finite poset given by its Hasse diagram; covers are (lower, upper) pairs"""

    model_config = ConfigDict(frozen=True)

    elements: Tuple[str, ...] = ()
    covers: Tuple[Tuple[str, str], ...] = ()

    @model_validator(mode="after")
    def _check_references(self) -> "Poset":
        if len(set(self.elements)) != len(self.elements):
            raise PydanticCustomError("poset", "duplicate element names")
        known = set(self.elements)
        seen = set()
        for lower, upper in self.covers:
            if lower not in known or upper not in known:
                raise PydanticCustomError(
                    "poset", "cover {lower} {upper} names an unknown element",
                    {"lower": lower, "upper": upper},
                )
            if lower == upper:
                raise PydanticCustomError("poset", "cover {lower} {lower} is a loop", {"lower": lower})
            if (lower, upper) in seen:
                raise PydanticCustomError(
                    "poset", "cover {lower} {upper} is listed twice",
                    {"lower": lower, "upper": upper},
                )
            seen.add((lower, upper))
        return self

    def index(self, element: str) -> int:
        return self.elements.index(element)


class UpClosedColoring(BaseModel):
    """A {0,1}-coloring of poset elements; up-closure is checked against a poset"""

    model_config = ConfigDict(frozen=True)

    color: Dict[str, int]

    @model_validator(mode="after")
    def _check_values(self) -> "UpClosedColoring":
        for element, value in self.color.items():
            if value not in (0, 1):
                raise PydanticCustomError(
                    "coloring", "color of {element} must be 0 or 1", {"element": element}
                )
        return self

    def ones(self) -> List[str]:
        return [element for element, value in self.color.items() if value == 1]


class Assignment(BaseModel):
    """For each poset element, the subset of ground elements {1..n} it receives"""

    sets: Dict[str, Tuple[int, ...]]


class PosetCycleReport(BaseModel):
    verdict: Verdict
    alphabet_size: int
    length: int
    expected_length: int
    distinct_windows: int
    counterexample_index: Optional[int] = None
    reason: Optional[str] = None


class CycleResponse(BaseModel):
    """Generated cycle as returned by the HTTP API"""

    cycle: str
    length: int
    alphabet_size: int
    window_length: int


class PosetCycleResponse(CycleResponse):
    legend: Dict[int, List[str]]


class CountRow(BaseModel):
    j: int
    count: int


class CountResponse(BaseModel):
    n: int
    k: int
    rows: List[CountRow]
    total: int


class VerifyWeightRangeRequest(BaseModel):
    n: int
    k: int
    s: int
    t: int
    cycle: str
