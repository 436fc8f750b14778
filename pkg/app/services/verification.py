"""Exhaustive oracles for generated cycles and walks.

Nothing in here calls the generators: windows are read straight off the cycle,
edge legality is recomputed from (n, k, s, t), and the word family comes from
brute-force enumeration. Walk rows borrow only the danger flag from
`OverlapDigraph.is_dangerous`, the guard the normalization routine defers on.
"""
import logging
from itertools import product
from typing import List, Optional, Set

from app.config import Settings
from app.models.schemas import (
    Cycle,
    CycleReport,
    Letters,
    Poset,
    PosetCycleReport,
    UpClosedColoring,
    Verdict,
    Walk,
    WalkReport,
    WalkRow,
    WeightRangeParams,
)
from app.services.counting import cycle_length
from app.services.exceptions import CapExceededError, ParameterError
from app.services.poset_cycles import antichains, coloring_from_antichain, order_closure
from app.services.weight_range import OverlapDigraph

logger = logging.getLogger(__name__)


def _cyclic_windows(c: Cycle, n: int) -> List[Letters]:
    length = c.length
    unrolled = c.letters * (n // length + 2)
    return [tuple(unrolled[i:i + n]) for i in range(length)]


class CycleVerifier:
    """Ground truth for every generator"""

    def __init__(self, settings: Optional[Settings] = None):
        settings = settings or Settings()
        self.max_brute_force = settings.max_brute_force
        self.max_alphabet = settings.max_alphabet

    def verify_universal_cycle(self, c: Cycle, p: WeightRangeParams) -> CycleReport:
        """
        PASS iff the cycle has |W| letters, every window has weight in [s, t]
        and no window repeats; together these make every word of W appear once
        """
        expected = cycle_length(p)
        if c.alphabet_size != p.k:
            return CycleReport(
                verdict=Verdict.FAIL, length=c.length, expected_length=expected,
                windows_checked=0, distinct_windows=0,
                reason=f"cycle alphabet has {c.alphabet_size} letters, expected {p.k}",
            )

        seen: Set[Letters] = set()
        counterexample = counterexample_index = reason = None
        for index, word in enumerate(_cyclic_windows(c, p.n)):
            problem = None
            if not p.s <= sum(word) <= p.t:
                problem = f"window weight {sum(word)} is outside [{p.s}, {p.t}]"
            elif word in seen:
                problem = "window repeats"
            seen.add(word)
            if problem and counterexample is None:
                counterexample, counterexample_index, reason = word, index, problem

        if reason is None and c.length != expected:
            reason = f"cycle has {c.length} letters, expected {expected}"
        verdict = Verdict.PASS if reason is None else Verdict.FAIL
        logger.debug("cycle of length %d for %s: %s", c.length, p, verdict.value)
        return CycleReport(
            verdict=verdict,
            length=c.length,
            expected_length=expected,
            windows_checked=c.length,
            distinct_windows=len(seen),
            counterexample=counterexample,
            counterexample_index=counterexample_index,
            reason=reason,
        )

    def verify_walk(self, w: Walk, p: WeightRangeParams) -> WalkReport:
        """Recompute vertex and edge weights step by step and check each edge"""
        floor, top = p.vertex_floor, p.k - 1
        graph = OverlapDigraph(p)
        vertex = tuple(w.start)
        rows: List[WalkRow] = []
        failed_step = reason = None

        if len(vertex) != p.vertex_length or any(not 0 <= letter <= top for letter in vertex) \
                or not floor <= sum(vertex) <= p.t:
            reason = f"start {vertex} is not a legal vertex"
            return WalkReport(
                verdict=Verdict.FAIL,
                rows=[WalkRow(vertex=vertex, vertex_weight=sum(vertex), legal=False)],
                failed_step=0,
                reason=reason,
            )

        for index, letter in enumerate(w.steps):
            h = sum(vertex)
            edge_weight = h + letter
            successor = vertex[1:] + (letter,)
            legal = (
                0 <= letter <= top
                and p.s <= edge_weight <= p.t
                and floor <= sum(successor) <= p.t
            )
            rows.append(WalkRow(
                vertex=vertex, vertex_weight=h, edge_weight=edge_weight,
                legal=legal, danger=graph.is_dangerous(vertex),
            ))
            if not legal and failed_step is None:
                failed_step = index
                reason = f"step {index} appends {letter} to {vertex}: edge weight {edge_weight}"
            vertex = successor
        rows.append(WalkRow(vertex=vertex, vertex_weight=sum(vertex), danger=graph.is_dangerous(vertex)))

        verdict = Verdict.PASS if failed_step is None else Verdict.FAIL
        return WalkReport(verdict=verdict, rows=rows, failed_step=failed_step, reason=reason)

    def enumerate_objects(self, p: WeightRangeParams) -> Set[Letters]:
        """Every n-letter word with weight in [s, t], by brute force"""
        size = p.k ** p.n
        if size > self.max_brute_force:
            raise CapExceededError("brute-force word count", size, self.max_brute_force)
        return {word for word in product(range(p.k), repeat=p.n) if p.s <= sum(word) <= p.t}

    def enumerate_up_closed_colorings(self, P: Poset) -> List[UpClosedColoring]:
        """All up-closed colorings, by brute force over 2^|P| colorings"""
        size = 2 ** len(P.elements)
        if size > self.max_brute_force:
            raise CapExceededError("brute-force coloring count", size, self.max_brute_force)
        closure = order_closure(P)
        found = []
        for values in product((0, 1), repeat=len(P.elements)):
            color = dict(zip(P.elements, values))
            if all(not (color[lower] == 1 and color[upper] == 0) for lower, upper in closure):
                found.append(UpClosedColoring(color=color))
        return found

    def verify_poset_cycle(self, c: Cycle, P: Poset, n: int) -> PosetCycleReport:
        """PASS iff the cycle has alpha^n letters, distinct windows, and every
        window decodes to an inclusion-monotone assignment"""
        closure = order_closure(P)
        letters = antichains(P, self.max_alphabet)
        alpha = len(letters)
        if c.alphabet_size != alpha:
            raise ParameterError(f"cycle alphabet has {c.alphabet_size} letters, poset has {alpha} antichains")
        colorings = [coloring_from_antichain(P, A, closure) for A in letters]
        expected = alpha ** n

        seen: Set[Letters] = set()
        counterexample_index = reason = None
        for index, word in enumerate(_cyclic_windows(c, n)):
            problem = None
            if word in seen:
                problem = "window repeats"
            else:
                sets = {element: {j for j, letter in enumerate(word, start=1)
                                  if colorings[letter].color[element] == 1}
                        for element in P.elements}
                bad = next(((lower, upper) for lower, upper in closure
                            if not sets[lower] <= sets[upper]), None)
                if bad is not None:
                    problem = f"set of {bad[0]} is not contained in set of {bad[1]}"
            seen.add(word)
            if problem and reason is None:
                counterexample_index, reason = index, problem

        if reason is None and c.length != expected:
            reason = f"cycle has {c.length} letters, expected {expected}"
        return PosetCycleReport(
            verdict=Verdict.PASS if reason is None else Verdict.FAIL,
            alphabet_size=alpha,
            length=c.length,
            expected_length=expected,
            distinct_windows=len(seen),
            counterexample_index=counterexample_index,
            reason=reason,
        )
