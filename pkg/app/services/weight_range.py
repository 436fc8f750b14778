"""de Bruijn cycles of k-ary words whose weight lies in [s, t].

The overlap digraph D has the (n-1)-letter words of weight in
[max(0, s-(k-1)), t] as vertices; appending a letter l to v is an edge when the
n-letter word (v, l) has weight in [s, t]. Every vertex has equal in- and
outdegree and D is weakly connected, so an Eulerian circuit exists and its edge
labels form the cycle.

Connectivity is shown constructively: every vertex has a walk to the sink
vertex SV = (x, ..., x, x+1, ..., x+1) of weight s, built in four stages
(reduce weight, increase weight, normalize letters, sort to SV).
"""
import logging
from collections import deque
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from app.config import Settings
from app.models.schemas import Cycle, SinkSpec, Walk, WeightRangeParams
from app.services.counting import cycle_length, vertex_count
from app.services.exceptions import (
    CapExceededError,
    ConstructionError,
    ParameterError,
    StepCapExceededError,
)

logger = logging.getLogger(__name__)

Vertex = Tuple[int, ...]


class _WalkBuilder:
    """Accumulates a walk one edge at a time, checking every edge and the step cap"""

    def __init__(self, graph: "OverlapDigraph", start: Sequence[int], routine: str):
        self.graph = graph
        self.routine = routine
        self.start: Vertex = tuple(start)
        self.vertex: Vertex = tuple(start)
        self.weight = sum(start)
        self.steps: List[int] = []

    def append(self, letter: int) -> None:
        if len(self.steps) >= self.graph.step_cap:
            raise StepCapExceededError(
                f"{self.routine} exceeded {self.graph.step_cap} steps from {self.start}"
            )
        if not self.graph.is_legal_edge(self.vertex, letter):
            raise ConstructionError(
                f"{self.routine} tried illegal edge {self.vertex} + {letter}"
            )
        self.weight += letter - self.vertex[0]
        self.vertex = self.vertex[1:] + (letter,)
        self.steps.append(letter)

    def rotate(self) -> None:
        self.append(self.vertex[0])

    def walk(self) -> Walk:
        return Walk(start=self.start, steps=tuple(self.steps))


class OverlapDigraph:
    """Implicit overlap digraph for one parameter tuple; nothing is materialized"""

    def __init__(self, params: WeightRangeParams):
        self.params = params
        self.n, self.k, self.s, self.t = params.n, params.k, params.s, params.t
        self.m = params.vertex_length
        self.floor = params.vertex_floor
        self.step_cap = 4 * self.n * self.k * (self.t - self.s + self.k)
        x, b = divmod(self.s, self.m)
        self._sink = SinkSpec(x=x, a=self.m - b, b=b)

    # -- vertices and edges ---------------------------------------------------

    def is_vertex(self, v: Sequence[int]) -> bool:
        return (
            len(v) == self.m
            and all(0 <= letter < self.k for letter in v)
            and self.floor <= sum(v) <= self.t
        )

    def _require_vertex(self, v: Sequence[int]) -> Vertex:
        v = tuple(v)
        if not self.is_vertex(v):
            raise ParameterError(f"{v} is not a vertex of D for {self.params}")
        return v

    def letter_bounds(self, v: Sequence[int]) -> Tuple[int, int]:
        """Smallest and largest letter that can be appended to v"""
        h = sum(v)
        return max(0, self.s - h), min(self.k - 1, self.t - h)

    def is_legal_edge(self, v: Sequence[int], letter: int) -> bool:
        if not 0 <= letter < self.k:
            return False
        h = sum(v)
        successor_weight = h - v[0] + letter
        return self.s <= h + letter <= self.t and self.floor <= successor_weight <= self.t

    def successors(self, v: Sequence[int]) -> Iterator[Tuple[int, Vertex]]:
        v = tuple(v)
        for letter in range(self.k):
            if self.is_legal_edge(v, letter):
                yield letter, v[1:] + (letter,)

    def predecessors(self, v: Sequence[int]) -> Iterator[Tuple[int, Vertex]]:
        v = tuple(v)
        h = sum(v)
        for first in range(self.k):
            previous = (first,) + v[:-1]
            if self.s <= first + h <= self.t and self.is_vertex(previous):
                yield first, previous

    def degrees(self, v: Sequence[int]) -> Tuple[int, int]:
        """(indegree, outdegree) of a vertex"""
        v = self._require_vertex(v)
        indegree = sum(1 for _ in self.predecessors(v))
        outdegree = sum(1 for _ in self.successors(v))
        return indegree, outdegree

    def vertices(self) -> Iterator[Vertex]:
        """All legal vertices in lexicographic order, pruning on partial weight"""
        top = self.k - 1

        def extend(prefix: Vertex, total: int, remaining: int) -> Iterator[Vertex]:
            if remaining == 0:
                yield prefix
                return
            for letter in range(self.k):
                reached = total + letter
                if reached > self.t:
                    break
                if reached + (remaining - 1) * top < self.floor:
                    continue
                yield from extend(prefix + (letter,), reached, remaining - 1)

        yield from extend((), 0, self.m)

    def edge_count(self) -> int:
        return sum(self.degrees(v)[1] for v in self.vertices())

    # -- the sink vertex --------------------------------------------------------

    def sink_spec(self) -> SinkSpec:
        return self._sink

    def sink_vertex(self) -> Vertex:
        spec = self.sink_spec()
        return (spec.x,) * spec.a + (spec.x + 1,) * spec.b

    def letter_type(self, letter: int) -> str:
        """Type A letters are 0..x, type B letters are x+1..k-1"""
        return "A" if letter <= self.sink_spec().x else "B"

    def is_normalized(self, v: Sequence[int]) -> bool:
        """Weight s and every letter x or x+1, which forces a x's and b (x+1)'s"""
        x = self.sink_spec().x
        return sum(v) == self.s and all(letter in (x, x + 1) for letter in v)

    # -- walks to the sink --------------------------------------------------------

    def path_reduce_weight(self, v: Sequence[int]) -> Walk:
        """Walk from a vertex of weight in [s+1, t] down to weight exactly s

        Leading zeros are rotated to the back. Otherwise, at weight t - r with
        first letter f >= 1, append min(f-1, r): the weight drops by one or
        lands on t - f >= s.
        """
        v = self._require_vertex(v)
        if not self.s < sum(v) <= self.t:
            raise ParameterError(f"reduce needs weight in [s+1, t], got {sum(v)}")
        builder = _WalkBuilder(self, v, "path_reduce_weight")
        while builder.weight > self.s:
            first = builder.vertex[0]
            if first == 0:
                builder.append(0)
            else:
                builder.append(min(first - 1, self.t - builder.weight))
        logger.debug("reduced %s to weight %d in %d steps", v, self.s, len(builder.steps))
        return builder.walk()

    def path_increase_weight(self, v: Sequence[int]) -> Walk:
        """Walk from a vertex of weight in [max(0, s-(k-1)), s-1] up to weight s

        Leading letters k-1 are rotated to the back; then, at weight s - r
        with first letter f < k-1, append max(r, f+1).
        """
        v = self._require_vertex(v)
        if not sum(v) < self.s:
            raise ParameterError(f"increase needs weight below s={self.s}, got {sum(v)}")
        top = self.k - 1
        builder = _WalkBuilder(self, v, "path_increase_weight")
        while builder.weight < self.s:
            first = builder.vertex[0]
            if first == top:
                builder.append(top)
            else:
                builder.append(max(self.s - builder.weight, first + 1))
        logger.debug("raised %s to weight %d in %d steps", v, self.s, len(builder.steps))
        return builder.walk()

    # -- the replacement guard ----------------------------------------------------

    def replacement_allowed(self, v: Sequence[int], letter: int) -> bool:
        """
        Whether the first letter of v may be replaced by `letter` right now

        The edge must be legal. A replacement that raises the weight must leave
        at least x between the new vertex weight and t; one that lowers it must
        leave at least x above max(0, s-(k-1)). Keeping the first letter only
        needs a legal edge.
        """
        if not self.is_legal_edge(v, letter):
            return False
        first = v[0]
        if letter == first:
            return True
        x = self.sink_spec().x
        new_weight = sum(v) - first + letter
        if letter > first:
            return self.t - new_weight >= x
        return new_weight - self.floor >= x

    def is_dangerous(self, v: Sequence[int]) -> bool:
        """True when the guard blocks every change of the first letter to x or x+1"""
        x = self.sink_spec().x
        options = [c for c in (x, x + 1) if c != v[0] and c < self.k]
        return bool(options) and not any(self.replacement_allowed(v, c) for c in options)

    def _replacement_order(self, first: int) -> Tuple[int, int]:
        x = self.sink_spec().x
        if first == x:
            return x, x + 1
        if first == x + 1:
            return x + 1, x
        if self.letter_type(first) == "A":
            return x + 1, x
        return x, x + 1

    def _deferral_letter(self, v: Vertex) -> int:
        """Rotate the first letter, or the nearest legal letter of its type when that is illegal"""
        first = v[0]
        if self.is_legal_edge(v, first):
            return first
        low, high = self.letter_bounds(v)
        x = self.sink_spec().x
        own_type = range(0, x + 1) if self.letter_type(first) == "A" else range(x + 1, self.k)
        choices = [letter for letter in own_type if low <= letter <= high] or list(range(low, high + 1))
        return min(choices, key=lambda letter: (abs(letter - first), letter))

    def path_normalize_letters(self, v: Sequence[int]) -> Walk:
        """
        Walk from a weight-s vertex to one made only of a x's and b (x+1)'s

        The first letter is replaced by x or x+1 while those are still owed:
        a letter already equal to x or x+1 is kept, other type A letters
        prefer x+1 and other type B letters prefer x. Replacements the guard
        blocks are deferred by rotating the letter to the back. A letter that
        has been written stays as it is, unless rotating it would be an
        illegal edge. After a full revolution without writing anything the
        guard is waived and only edge legality is required.
        """
        v = self._require_vertex(v)
        if sum(v) != self.s:
            raise ParameterError(f"normalize needs weight s={self.s}, got {sum(v)}")
        spec = self.sink_spec()
        owed = {spec.x: spec.a, spec.x + 1: spec.b}
        written = deque([False] * self.m)
        builder = _WalkBuilder(self, v, "path_normalize_letters")
        idle = 0

        def advance(letter: int, done: bool) -> None:
            builder.append(letter)
            written.popleft()
            written.append(done)

        while not self.is_normalized(builder.vertex):
            vertex = builder.vertex
            first = vertex[0]
            if written[0]:
                if self.is_legal_edge(vertex, first):
                    advance(first, True)
                    idle += 1
                    continue
                owed[first] += 1
            relaxed = idle >= self.m
            letter = next(
                (c for c in self._replacement_order(first)
                 if owed.get(c, 0) > 0 and (
                     self.replacement_allowed(vertex, c)
                     or (relaxed and self.is_legal_edge(vertex, c)))),
                None,
            )
            if letter is None:
                advance(self._deferral_letter(vertex), False)
                idle += 1
            else:
                owed[letter] -= 1
                advance(letter, True)
                idle = 0
        logger.debug("normalized %s in %d steps", v, len(builder.steps))
        return builder.walk()

    def path_sort_to_sink(self, v: Sequence[int]) -> Walk:
        """
        Walk from a normalized vertex to SV

        Letters are matched against the rotation of SV they disagree with
        least, and that alignment travels with them. Going round, an
        out-of-place x+1 in the x block is lowered to x and an out-of-place x
        in the x+1 block is raised, so decreases and increases alternate
        block by block; a change whose edge is illegal waits for the next
        round. A rotation of SV needs rotations only.
        """
        v = self._require_vertex(v)
        if not self.is_normalized(v):
            raise ParameterError(f"sort needs weight s and letters x, x+1 only, got {v}")
        target = self.sink_vertex()
        x = self.sink_spec().x
        builder = _WalkBuilder(self, v, "path_sort_to_sink")
        phase = _best_alignment(v, target)
        while builder.vertex != target:
            vertex = builder.vertex
            first, wanted = vertex[0], target[phase]
            if first != wanted and self.is_legal_edge(vertex, wanted):
                builder.append(wanted)
            elif self.is_legal_edge(vertex, first):
                builder.rotate()
            else:
                # weight is at an extreme, only the other letter fits
                builder.append(x if first == x + 1 else x + 1)
            phase = (phase + 1) % self.m
        logger.debug("sorted %s to the sink in %d steps", v, len(builder.steps))
        return builder.walk()

    def path_to_sink(self, v: Sequence[int]) -> Walk:
        """Compose the four stages into one walk from v to SV"""
        v = self._require_vertex(v)
        parts: List[Walk] = []
        if sum(v) > self.s:
            parts.append(self.path_reduce_weight(v))
        elif sum(v) < self.s:
            parts.append(self.path_increase_weight(v))
        current = parts[-1].end if parts else v
        if not self.is_normalized(current):
            parts.append(self.path_normalize_letters(current))
            current = parts[-1].end
        parts.append(self.path_sort_to_sink(current))
        steps = tuple(letter for part in parts for letter in part.steps)
        logger.debug("walk from %s to the sink has %d steps", v, len(steps))
        return Walk(start=v, steps=steps)


def _best_alignment(v: Vertex, target: Vertex) -> int:
    """Offset r minimizing positions where v[j] != target[(r + j) % m]; smallest r on ties"""
    m = len(v)
    return min(
        range(m),
        key=lambda r: (sum(1 for j in range(m) if v[j] != target[(r + j) % m]), r),
    )


class CycleGenerator:
    """Builds cycles by Hierholzer's algorithm over the implicit digraph"""

    def __init__(self, settings: Optional[Settings] = None):
        settings = settings or Settings()
        self.max_vertices = settings.max_vertices
        self.max_cycle_length = settings.max_cycle_length

    def _check_caps(self, p: WeightRangeParams) -> int:
        vertices = vertex_count(p)
        if vertices > self.max_vertices:
            logger.warning("refusing %s: %d vertices", p, vertices)
            raise CapExceededError("vertex count", vertices, self.max_vertices)
        length = cycle_length(p)
        if length > self.max_cycle_length:
            logger.warning("refusing %s: cycle length %d", p, length)
            raise CapExceededError("cycle length", length, self.max_cycle_length)
        return length

    def weakly_connected(self, p: WeightRangeParams, max_vertices: Optional[int] = None) -> bool:
        """Graph-search oracle over explicitly enumerated vertices"""
        cap = max_vertices if max_vertices is not None else self.max_vertices
        size = vertex_count(p)
        if size > cap:
            raise CapExceededError("vertex count", size, cap)
        graph = OverlapDigraph(p)
        explicit = nx.DiGraph()
        for vertex in graph.vertices():
            explicit.add_node(vertex)
            for _, successor in graph.successors(vertex):
                explicit.add_edge(vertex, successor)
        logger.debug("explicit digraph for %s: %d vertices, %d edges",
                     p, explicit.number_of_nodes(), explicit.number_of_edges())
        return nx.is_weakly_connected(explicit)

    def eulerian_cycle(self, p: WeightRangeParams) -> Cycle:
        """
        Hierholzer's algorithm from SV over the implicit digraph

        Edge-usage state is one entry per visited vertex: the next letter to
        try, in increasing order, so the output is deterministic.
        """
        length = self._check_caps(p)
        graph = OverlapDigraph(p)
        next_letter: Dict[Vertex, int] = {}

        def take(vertex: Vertex) -> Optional[int]:
            low, high = graph.letter_bounds(vertex)
            letter = next_letter.get(vertex, low)
            if letter > high:
                return None
            next_letter[vertex] = letter + 1
            return letter

        stack: List[Tuple[Vertex, Optional[int]]] = [(graph.sink_vertex(), None)]
        circuit: List[int] = []
        while stack:
            vertex, arrived_by = stack[-1]
            letter = take(vertex)
            if letter is None:
                stack.pop()
                if arrived_by is not None:
                    circuit.append(arrived_by)
            else:
                stack.append((vertex[1:] + (letter,), letter))
        circuit.reverse()

        if len(circuit) != length:
            raise ConstructionError(
                f"circuit for {p} has {len(circuit)} edges, expected {length}"
            )
        logger.debug("eulerian circuit for %s: %d edges, %d vertices visited",
                     p, len(circuit), len(next_letter))
        return Cycle(letters=tuple(circuit), alphabet_size=p.k, window_length=p.n)

    def generate_full(self, k: int, n: int) -> Cycle:
        """Classic de Bruijn cycle of all k^n words"""
        if k < 2 or n < 1:
            raise ParameterError(f"requires k >= 2 and n >= 1 (got k={k}, n={n})")
        if n == 1:
            if k > self.max_cycle_length:
                raise CapExceededError("cycle length", k, self.max_cycle_length)
            return Cycle(letters=tuple(range(k)), alphabet_size=k, window_length=1)
        return self.eulerian_cycle(WeightRangeParams(n=n, k=k, s=0, t=n * (k - 1)))
