import pytest

from app.config import Settings
from app.models.schemas import Cycle, Poset, UpClosedColoring, Verdict
from app.services.exceptions import CapExceededError, ParameterError, PosetError
from app.services.poset_cycles import (
    PosetCycles,
    antichain_from_coloring,
    antichains,
    coloring_from_antichain,
    order_closure,
)
from app.services.verification import CycleVerifier

# ccaabbcba with a -> empty antichain, b -> {B}, c -> {A}
TWO_CHAIN_CYCLE = Cycle(letters=(1, 1, 0, 0, 2, 2, 1, 2, 0), alphabet_size=3, window_length=2)

# (A's set, B's set) for each window of TWO_CHAIN_CYCLE, in order
TWO_CHAIN_WINDOWS = [
    ((1, 2), (1, 2)),
    ((1,), (1,)),
    ((), ()),
    ((), (2,)),
    ((), (1, 2)),
    ((2,), (1, 2)),
    ((1,), (1, 2)),
    ((), (1,)),
    ((2,), (2,)),
]


@pytest.fixture
def poset_cycles():
    return PosetCycles()


@pytest.fixture
def verifier():
    return CycleVerifier()


def test_order_closure(two_chain, w_poset):
    assert order_closure(two_chain) == {("A", "A"), ("A", "B"), ("B", "B")}

    closure = order_closure(w_poset)
    assert len(closure) == 9
    assert ("a", "d") not in closure


def test_order_closure_rejects_implied_cover():
    poset = Poset(elements=("A", "B", "C"), covers=(("A", "C"), ("C", "B"), ("A", "B")))
    with pytest.raises(PosetError, match="implied by a longer chain"):
        order_closure(poset)


def test_order_closure_rejects_cycles():
    poset = Poset(elements=("A", "B"), covers=(("A", "B"), ("B", "A")))
    with pytest.raises(PosetError, match="cycle"):
        order_closure(poset)


def test_antichains(two_chain, w_poset):
    assert antichains(two_chain) == [(), ("A",), ("B",)]
    assert len(antichains(w_poset)) == 13
    assert antichains(Poset()) == [()]


def test_antichains_cap(w_poset):
    with pytest.raises(CapExceededError):
        antichains(w_poset, max_alphabet=12)


def test_coloring_from_antichain(two_chain):
    assert coloring_from_antichain(two_chain, ("A",)).color == {"A": 1, "B": 1}
    assert coloring_from_antichain(two_chain, ("B",)).color == {"A": 0, "B": 1}
    assert coloring_from_antichain(two_chain, ()).color == {"A": 0, "B": 0}


def test_coloring_from_comparable_set_is_rejected(two_chain):
    with pytest.raises(PosetError):
        coloring_from_antichain(two_chain, ("A", "B"))


def test_antichain_from_coloring(two_chain):
    assert antichain_from_coloring(two_chain, UpClosedColoring(color={"A": 0, "B": 0})) == ()
    assert antichain_from_coloring(two_chain, UpClosedColoring(color={"A": 1, "B": 1})) == ("A",)
    with pytest.raises(PosetError):
        antichain_from_coloring(two_chain, UpClosedColoring(color={"A": 1, "B": 0}))


@pytest.mark.parametrize("name", ["two_chain", "w_poset", "four_chain"])
def test_bijection_round_trips(name, request, verifier):
    poset = request.getfixturevalue(name)
    letters = antichains(poset)
    colorings = verifier.enumerate_up_closed_colorings(poset)

    assert len(colorings) == len(letters)
    for antichain in letters:
        assert antichain_from_coloring(poset, coloring_from_antichain(poset, antichain)) == antichain
    for coloring in colorings:
        assert coloring_from_antichain(poset, antichain_from_coloring(poset, coloring)) == coloring


def test_count_assignments(poset_cycles, two_chain, w_poset):
    assert poset_cycles.count_assignments(two_chain, 2) == 9
    assert poset_cycles.count_assignments(w_poset, 1) == 13
    assert poset_cycles.count_assignments(w_poset, 0) == 1
    with pytest.raises(ParameterError):
        poset_cycles.count_assignments(w_poset, -1)


@pytest.mark.parametrize("name,max_n", [("two_chain", 7), ("w_poset", 3), ("four_chain", 4)])
def test_poset_cycle_passes_verification(name, max_n, request, poset_cycles, verifier):
    poset = request.getfixturevalue(name)
    for n in range(1, max_n + 1):
        cycle = poset_cycles.poset_cycle(poset, n)
        assert cycle.length == poset_cycles.count_assignments(poset, n)
        assert verifier.verify_poset_cycle(cycle, poset, n).verdict == Verdict.PASS


def test_single_element_poset_gives_binary_cycle(poset_cycles, verifier):
    poset = Poset(elements=("A",))
    cycle = poset_cycles.poset_cycle(poset, 4)
    assert cycle.alphabet_size == 2
    assert cycle.length == 16
    assert verifier.verify_poset_cycle(cycle, poset, 4).verdict == Verdict.PASS


def test_empty_poset_cycle(poset_cycles):
    cycle = poset_cycles.poset_cycle(Poset(), 3)
    assert cycle.letters == (0,)
    assert cycle.alphabet_size == 1


def test_poset_cycle_cap(w_poset):
    builder = PosetCycles(Settings(max_cycle_length=168))
    with pytest.raises(CapExceededError):
        builder.poset_cycle(w_poset, 2)


def test_decode_assignment_reproduces_every_window(poset_cycles, two_chain):
    for start, (a_set, b_set) in enumerate(TWO_CHAIN_WINDOWS):
        assignment = poset_cycles.decode_assignment(two_chain, TWO_CHAIN_CYCLE, start)
        assert assignment.sets == {"A": a_set, "B": b_set}


def test_decode_all_empty_window(poset_cycles, w_poset):
    cycle = Cycle(letters=(0, 0, 5), alphabet_size=13, window_length=2)
    assignment = poset_cycles.decode_assignment(w_poset, cycle, 0)
    assert all(members == () for members in assignment.sets.values())


def test_decode_start_out_of_range(poset_cycles, two_chain):
    with pytest.raises(ParameterError):
        poset_cycles.decode_assignment(two_chain, TWO_CHAIN_CYCLE, 9)
