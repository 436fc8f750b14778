"""de Bruijn cycles of assignments of [n] to the elements of a poset.

Which poset elements a ground element j belongs to is an up-closed
{0,1}-coloring, and those colorings correspond one-to-one with antichains (via
their minimal 1-colored elements). Coding the alpha antichains as letters turns
any de Bruijn cycle of n-letter words over alpha letters into a cycle of the
alpha^n assignments.
"""
import logging
from itertools import islice
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from app.config import Settings
from app.models.schemas import Assignment, Cycle, Poset, UpClosedColoring
from app.services.exceptions import CapExceededError, ParameterError, PosetError
from app.services.weight_range import CycleGenerator

logger = logging.getLogger(__name__)

Antichain = Tuple[str, ...]
Closure = FrozenSet[Tuple[str, str]]


def hasse_graph(P: Poset) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(P.elements)
    graph.add_edges_from(P.covers)
    return graph


def order_closure(P: Poset) -> Closure:
    """The full <= relation as (lower, upper) pairs, reflexive pairs included"""
    graph = hasse_graph(P)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise PosetError(f"cover relation has a cycle through {cycle[0][0]}")
    reduction = nx.transitive_reduction(graph)
    redundant = sorted(set(graph.edges()) - set(reduction.edges()),
                       key=lambda pair: (P.index(pair[0]), P.index(pair[1])))
    if redundant:
        lower, upper = redundant[0]
        raise PosetError(f"cover {lower} {upper} is implied by a longer chain")
    pairs = {(element, element) for element in P.elements}
    for element in P.elements:
        pairs.update((element, above) for above in nx.descendants(graph, element))
    return frozenset(pairs)


def _canonical(P: Poset, members) -> Antichain:
    return tuple(sorted(members, key=P.index))


def antichains(P: Poset, max_alphabet: Optional[int] = None) -> List[Antichain]:
    """
    All antichains, the empty one included, ordered by size then by element index

    Enumeration extends antichains depth-first along a topological order and
    stops as soon as the count passes `max_alphabet`.
    """
    order_closure(P)
    graph = hasse_graph(P)
    topo_order = list(nx.lexicographical_topological_sort(graph, key=P.index))
    stream = nx.antichains(graph, topo_order=topo_order)
    if max_alphabet is not None:
        found = list(islice(stream, max_alphabet + 1))
        if len(found) > max_alphabet:
            logger.warning("poset with %d elements has more than %d antichains",
                           len(P.elements), max_alphabet)
            raise CapExceededError("antichain count", len(found), max_alphabet)
    else:
        found = list(stream)
    ordered = sorted(
        (_canonical(P, members) for members in found),
        key=lambda antichain: (len(antichain), [P.index(e) for e in antichain]),
    )
    logger.debug("poset with %d elements has %d antichains", len(P.elements), len(ordered))
    return ordered


def coloring_from_antichain(P: Poset, A: Antichain, closure: Optional[Closure] = None) -> UpClosedColoring:
    """c_A(e) = 1 iff some member of A lies below e"""
    closure = closure if closure is not None else order_closure(P)
    unknown = [member for member in A if member not in P.elements]
    if unknown:
        raise PosetError(f"{unknown[0]} is not an element of the poset")
    for lower in A:
        for upper in A:
            if lower != upper and (lower, upper) in closure:
                raise PosetError(f"{lower} and {upper} are comparable, not an antichain")
    color = {
        element: int(any((member, element) in closure for member in A))
        for element in P.elements
    }
    return UpClosedColoring(color=color)


def antichain_from_coloring(P: Poset, c: UpClosedColoring, closure: Optional[Closure] = None) -> Antichain:
    """M_c, the elements minimal among those colored 1"""
    closure = closure if closure is not None else order_closure(P)
    if set(c.color) != set(P.elements):
        raise PosetError("coloring must assign a color to every poset element")
    for lower, upper in closure:
        if c.color[lower] == 1 and c.color[upper] == 0:
            raise PosetError(f"coloring is not up-closed: {lower} is 1 but {upper} above it is 0")
    ones = c.ones()
    minimal = [
        element for element in ones
        if not any(other != element and (other, element) in closure for other in ones)
    ]
    return _canonical(P, minimal)


class PosetCycles:
    """Letter coding of antichains plus cycle generation and decoding"""

    def __init__(self, settings: Optional[Settings] = None, generator: Optional[CycleGenerator] = None):
        settings = settings or Settings()
        self.max_alphabet = settings.max_alphabet
        self.max_cycle_length = settings.max_cycle_length
        self.generator = generator or CycleGenerator(settings)

    def antichains(self, P: Poset) -> List[Antichain]:
        return antichains(P, self.max_alphabet)

    def letter_colorings(self, P: Poset) -> List[UpClosedColoring]:
        """Coloring coded by each letter, letter i being the i-th canonical antichain"""
        closure = order_closure(P)
        return [coloring_from_antichain(P, A, closure) for A in self.antichains(P)]

    def count_assignments(self, P: Poset, n: int) -> int:
        if n < 0:
            raise ParameterError(f"requires n >= 0 (got n={n})")
        return len(self.antichains(P)) ** n

    def poset_cycle(self, P: Poset, n: int) -> Cycle:
        if n < 1:
            raise ParameterError(f"requires n >= 1 (got n={n})")
        alpha = len(self.antichains(P))
        if alpha ** n > self.max_cycle_length:
            raise CapExceededError("cycle length", alpha ** n, self.max_cycle_length)
        logger.debug("building poset cycle: alpha=%d n=%d", alpha, n)
        if alpha == 1:
            return Cycle(letters=(0,), alphabet_size=1, window_length=n)
        return self.generator.generate_full(alpha, n)

    def decode_assignment(self, P: Poset, c: Cycle, start: int) -> Assignment:
        """The assignment whose ground element j is coded by the letter at start+j-1"""
        if not 0 <= start < c.length:
            raise ParameterError(f"start {start} is outside 0..{c.length - 1}")
        colorings = self.letter_colorings(P)
        sets: Dict[str, List[int]] = {element: [] for element in P.elements}
        for j in range(1, c.window_length + 1):
            letter = c.letters[(start + j - 1) % c.length]
            if letter >= len(colorings):
                raise ParameterError(f"letter {letter} is outside the {len(colorings)}-letter alphabet")
            for element in colorings[letter].ones():
                sets[element].append(j)
        return Assignment(sets={element: tuple(members) for element, members in sets.items()})
