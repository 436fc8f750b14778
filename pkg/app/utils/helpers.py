"""Text codecs for words, cycles, poset files, traces and decoded assignments"""
from typing import Dict, List, Sequence

import networkx as nx
from pydantic import ValidationError

from app.models.schemas import Assignment, Poset, TextFormat, WalkReport
from app.services.exceptions import ParameterError, PosetError
from app.services.poset_cycles import hasse_graph


def render_letters(letters: Sequence[int], k: int, fmt: TextFormat = TextFormat.AUTO) -> str:
    """Digit string when the alphabet fits in 0..9 (or asked for), else comma-separated"""
    fmt = TextFormat(fmt)
    if fmt == TextFormat.AUTO:
        fmt = TextFormat.DIGITS if k <= 10 else TextFormat.CSV
    if fmt == TextFormat.DIGITS:
        if k > 10:
            raise ParameterError(f"digit format needs an alphabet of at most 10 letters, got {k}")
        return "".join(str(letter) for letter in letters)
    return ",".join(str(letter) for letter in letters)


def parse_letters(text: str, k: int) -> List[int]:
    """Accept "0,0,2,5" always, and "0025" when k <= 10"""
    text = text.strip()
    if not text:
        raise ParameterError("empty letter string")
    try:
        if "," in text or k > 10:
            letters = [int(token) for token in text.split(",")]
        else:
            letters = [int(char) for char in text]
    except ValueError:
        raise ParameterError(f"cannot read letters from {text!r}")
    bad = [letter for letter in letters if not 0 <= letter < k]
    if bad:
        raise ParameterError(f"letter {bad[0]} is outside 0..{k - 1}")
    return letters


def parse_poset(text: str) -> Poset:
    """
    Read the line format

        elements: A B C D E
        cover: A B

    one `cover: lower upper` line per Hasse edge; blank lines and # comments are skipped.
    """
    elements: List[str] = []
    covers = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(":")
        keyword = keyword.strip().lower()
        tokens = rest.split()
        if keyword == "elements":
            elements.extend(tokens)
        elif keyword == "cover":
            if len(tokens) != 2:
                raise PosetError(f"line {number}: a cover line names exactly two elements")
            covers.append((tokens[0], tokens[1]))
        else:
            raise PosetError(f"line {number}: unknown keyword {keyword!r}")
    try:
        return Poset(elements=tuple(elements), covers=tuple(covers))
    except ValidationError as exc:
        raise PosetError(error_message(exc)) from exc


def error_message(exc: Exception) -> str:
    """One-line diagnostic; for validation errors, the first error's message"""
    if isinstance(exc, ValidationError):
        return exc.errors()[0]["msg"]
    return str(exc)


def render_set(members: Sequence) -> str:
    if not members:
        return "∅"
    return "{" + ",".join(str(member) for member in members) + "}"


def render_legend(antichain_list: Sequence[Sequence[str]]) -> List[str]:
    """One `letter<TAB>antichain` line per letter"""
    return [f"{letter}\t{render_set(members)}" for letter, members in enumerate(antichain_list)]


def element_heights(P: Poset) -> Dict[str, int]:
    """Length of the longest chain of covers ending at each element"""
    graph = hasse_graph(P)
    heights = {element: 0 for element in P.elements}
    for element in nx.lexicographical_topological_sort(graph, key=P.index):
        for upper in graph.successors(element):
            heights[upper] = max(heights[upper], heights[element] + 1)
    return heights


def render_assignment(P: Poset, assignment: Assignment) -> List[str]:
    """Stacked view: maximal elements on top, one `element  set` line each"""
    heights = element_heights(P)
    ordered = sorted(P.elements, key=lambda element: (-heights[element], P.index(element)))
    width = max((len(element) for element in ordered), default=0)
    return [f"{element.ljust(width)}  {render_set(assignment.sets[element])}" for element in ordered]


def render_trace(report: WalkReport) -> List[str]:
    """Vertex rows with their weight, separated by `↓ <edge weight>` rows"""
    lines = []
    for row in report.rows:
        vertex = "{" + ",".join(str(letter) for letter in row.vertex) + "}"
        mark = ", D" if row.danger else ""
        lines.append(f"{vertex} {row.vertex_weight}{mark}")
        if row.edge_weight is not None:
            flag = "" if row.legal else "  ILLEGAL"
            lines.append(f"↓ {row.edge_weight}{flag}")
    return lines
