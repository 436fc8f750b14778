import pytest

from app.config import Settings
from app.models.schemas import Verdict, WeightRangeParams
from app.services.counting import cycle_length, vertex_count
from app.services.exceptions import CapExceededError, ParameterError
from app.services.verification import CycleVerifier
from app.services.weight_range import CycleGenerator, OverlapDigraph


def valid_params(max_words):
    """Every (n, k, s, t) with k in {2, 3, 4} and k^n <= max_words that satisfies the hypothesis"""
    for k in (2, 3, 4):
        n = 2
        while k ** n <= max_words:
            for s in range(0, n * (k - 1) + 1):
                for t in range(s + k - 1, n * (k - 1) + 1):
                    yield WeightRangeParams(n=n, k=k, s=s, t=t)
            n += 1


GENERATION_SWEEP = list(valid_params(70000))
GRAPH_SWEEP = list(valid_params(4096))
WALK_SWEEP = list(valid_params(1024))

EXAMPLE = WeightRangeParams(n=11, k=6, s=25, t=30)
SMALL = WeightRangeParams(n=4, k=2, s=2, t=3)


@pytest.fixture
def generator():
    return CycleGenerator()


@pytest.fixture
def verifier():
    return CycleVerifier()


def test_is_legal_edge():
    graph = OverlapDigraph(EXAMPLE)
    assert graph.is_legal_edge((0, 0, 0, 2, 2, 5, 5, 5, 3, 3), 3)

    small = OverlapDigraph(SMALL)
    assert small.is_legal_edge((1, 1, 1), 0)
    assert not small.is_legal_edge((1, 1, 1), 1)
    assert not small.is_legal_edge((1, 1, 1), 2)


def test_letter_bounds_are_never_empty():
    for params in GRAPH_SWEEP:
        graph = OverlapDigraph(params)
        for vertex in graph.vertices():
            low, high = graph.letter_bounds(vertex)
            assert low <= high
            assert [letter for letter, _ in graph.successors(vertex)] == list(range(low, high + 1))


def test_extreme_weight_vertices_have_degree_one():
    graph = OverlapDigraph(SMALL)
    assert graph.degrees((1, 1, 1)) == (1, 1)
    assert graph.degrees((0, 0, 1)) == (1, 1)


def test_full_range_degrees():
    params = WeightRangeParams(n=3, k=2, s=0, t=3)
    graph = OverlapDigraph(params)
    assert all(graph.degrees(vertex) == (2, 2) for vertex in graph.vertices())


def test_degrees_rejects_non_vertex():
    with pytest.raises(ParameterError):
        OverlapDigraph(SMALL).degrees((0, 0, 0))


@pytest.mark.parametrize("params", GRAPH_SWEEP, ids=str)
def test_degree_balance(params):
    graph = OverlapDigraph(params)
    for vertex in graph.vertices():
        indegree, outdegree = graph.degrees(vertex)
        assert indegree == outdegree >= 1


@pytest.mark.parametrize("params", GRAPH_SWEEP, ids=str)
def test_vertices_and_edges_match_counts(params):
    graph = OverlapDigraph(params)
    listed = list(graph.vertices())

    assert len(listed) == vertex_count(params)
    assert listed == sorted(listed)
    assert graph.edge_count() == cycle_length(params)


def test_sink_vertex():
    assert OverlapDigraph(EXAMPLE).sink_vertex() == (2, 2, 2, 2, 2, 3, 3, 3, 3, 3)
    assert OverlapDigraph(SMALL).sink_vertex() == (0, 1, 1)
    assert OverlapDigraph(WeightRangeParams(n=5, k=3, s=0, t=4)).sink_vertex() == (0, 0, 0, 0)

    spec = OverlapDigraph(EXAMPLE).sink_spec()
    assert (spec.x, spec.a, spec.b) == (2, 5, 5)


def test_letter_type():
    graph = OverlapDigraph(EXAMPLE)
    assert [graph.letter_type(letter) for letter in range(6)] == ["A", "A", "A", "B", "B", "B"]


def test_path_reduce_weight():
    walk = OverlapDigraph(SMALL).path_reduce_weight((1, 1, 1))
    assert walk.steps == (0,)
    assert walk.end == (1, 1, 0)


def test_path_reduce_weight_needs_heavy_vertex():
    with pytest.raises(ParameterError):
        OverlapDigraph(SMALL).path_reduce_weight((0, 1, 1))


def test_path_increase_weight():
    walk = OverlapDigraph(SMALL).path_increase_weight((0, 0, 1))
    assert walk.steps == (1,)
    assert walk.end == (0, 1, 1)


def test_path_normalize_letters(verifier):
    graph = OverlapDigraph(EXAMPLE)
    walk = graph.path_normalize_letters((0, 0, 0, 2, 2, 5, 5, 5, 3, 3))

    # 0s become 3s and 5s become 2s; the guard makes the routine rotate at weights 22 and 28
    assert walk.steps == (3, 0, 0, 2, 2, 2, 2, 5, 3, 3, 3, 3, 3, 2, 2, 2, 2, 2)
    assert walk.end == (3, 3, 3, 3, 3, 2, 2, 2, 2, 2)
    assert verifier.verify_walk(walk, EXAMPLE).verdict == Verdict.PASS
    assert graph.path_normalize_letters((3, 2, 3, 2, 3, 2, 3, 2, 3, 2)).steps == ()


def test_path_normalize_letters_substitutes_when_rotation_is_illegal():
    graph = OverlapDigraph(WeightRangeParams(n=4, k=3, s=2, t=4))
    # (0, 0, 0) after the first step: rotating 0 is illegal, so 0 becomes 2 and is kept for later
    walk = graph.path_normalize_letters((2, 0, 0))

    assert walk.steps[:2] == (0, 2)
    assert graph.is_normalized(walk.end)


def test_replacement_allowed():
    graph = OverlapDigraph(EXAMPLE)
    assert graph.replacement_allowed((0, 0, 0, 2, 2, 5, 5, 5, 3, 3), 3)
    # 0 -> 2 at weight 28 would leave the weight at t
    assert not graph.replacement_allowed((0, 0, 2, 2, 5, 5, 5, 3, 3, 3), 2)
    # 5 -> 3 at weight 22 would leave the weight at max(0, s-(k-1))
    assert not graph.replacement_allowed((5, 3, 3, 3, 0, 0, 2, 2, 2, 2), 3)
    assert graph.replacement_allowed((5, 5, 3, 3, 3, 0, 0, 2, 2, 2), 2)
    # keeping the first letter needs only a legal edge
    assert graph.replacement_allowed((2, 2, 5, 5, 5, 3, 3, 3, 0, 0), 2)


def test_is_dangerous():
    graph = OverlapDigraph(EXAMPLE)
    assert not graph.is_dangerous((0, 0, 0, 2, 2, 5, 5, 5, 3, 3))
    assert graph.is_dangerous((0, 0, 2, 2, 5, 5, 5, 3, 3, 3))
    assert graph.is_dangerous((3, 3, 3, 0, 0, 2, 2, 2, 2, 5))
    assert not graph.is_dangerous(graph.sink_vertex())


def test_path_sort_to_sink_rotates():
    walk = OverlapDigraph(EXAMPLE).path_sort_to_sink((3, 3, 3, 3, 3, 2, 2, 2, 2, 2))
    assert walk.steps == (3, 3, 3, 3, 3)
    assert walk.end == (2, 2, 2, 2, 2, 3, 3, 3, 3, 3)


def test_path_sort_to_sink_swaps_out_of_place_letters():
    graph = OverlapDigraph(WeightRangeParams(n=5, k=4, s=6, t=9))
    # lower the leading 2, keep 1 and 2, raise the 1 that sits in the 2 block
    walk = graph.path_sort_to_sink((2, 1, 2, 1))
    assert walk.steps == (1, 1, 2, 2)
    assert walk.end == (1, 1, 2, 2)


def test_path_sort_to_sink_at_the_weight_floor():
    graph = OverlapDigraph(WeightRangeParams(n=5, k=2, s=2, t=3))
    # after lowering the first 1 the weight is s-1, so the next 0 cannot be rotated
    walk = graph.path_sort_to_sink((1, 0, 1, 0))
    assert walk.steps == (0, 1, 1)
    assert walk.end == (0, 0, 1, 1)


def test_path_sort_to_sink_needs_normalized_vertex():
    with pytest.raises(ParameterError):
        OverlapDigraph(EXAMPLE).path_sort_to_sink((0, 0, 0, 2, 2, 5, 5, 5, 3, 3))


def test_path_to_sink_from_example_vertex(verifier):
    graph = OverlapDigraph(EXAMPLE)
    walk = graph.path_to_sink((0, 0, 0, 2, 2, 5, 5, 5, 3, 3))

    assert walk.steps == (3, 0, 0, 2, 2, 2, 2, 5, 3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3)
    assert walk.end == graph.sink_vertex()
    assert verifier.verify_walk(walk, EXAMPLE).verdict == Verdict.PASS


def test_step_cap():
    assert OverlapDigraph(EXAMPLE).step_cap == 4 * 11 * 6 * (30 - 25 + 6)
    assert OverlapDigraph(SMALL).step_cap == 4 * 4 * 2 * (3 - 2 + 2)


def test_path_to_sink_narrow_binary_range_stays_under_cap(verifier):
    params = WeightRangeParams(n=16, k=2, s=8, t=9)
    graph = OverlapDigraph(params)
    start = (1, 0) * 7 + (1,)
    walk = graph.path_to_sink(start)

    assert walk.end == graph.sink_vertex()
    assert len(walk.steps) <= graph.step_cap
    assert verifier.verify_walk(walk, params).verdict == Verdict.PASS


def test_path_to_sink_from_sink_is_empty():
    graph = OverlapDigraph(EXAMPLE)
    assert graph.path_to_sink(graph.sink_vertex()).steps == ()


@pytest.mark.parametrize("params", WALK_SWEEP, ids=str)
def test_path_to_sink_from_every_vertex(params, verifier):
    graph = OverlapDigraph(params)
    sink = graph.sink_vertex()
    for vertex in graph.vertices():
        walk = graph.path_to_sink(vertex)
        assert walk.end == sink
        assert len(walk.steps) <= graph.step_cap
        assert verifier.verify_walk(walk, params).verdict == Verdict.PASS


@pytest.mark.parametrize("params", GRAPH_SWEEP, ids=str)
def test_weakly_connected(params, generator):
    assert generator.weakly_connected(params)


@pytest.mark.parametrize("params", GENERATION_SWEEP, ids=str)
def test_eulerian_cycle_passes_verification(params, generator, verifier):
    cycle = generator.eulerian_cycle(params)

    assert cycle.length == cycle_length(params)
    assert verifier.verify_universal_cycle(cycle, params).verdict == Verdict.PASS


def test_eulerian_cycle_is_deterministic(generator):
    assert generator.eulerian_cycle(SMALL) == generator.eulerian_cycle(SMALL)
    # smallest letter first at every vertex, starting from the sink (0,1,1)
    assert generator.eulerian_cycle(SMALL).letters == (0, 0, 1, 1, 1, 0, 1, 0, 1, 1)


def test_generate_full(generator, verifier):
    cycle = generator.generate_full(2, 3)
    assert cycle.length == 8
    assert verifier.verify_universal_cycle(cycle, WeightRangeParams(n=3, k=2, s=0, t=3)).verdict == Verdict.PASS

    assert generator.generate_full(5, 1).letters == (0, 1, 2, 3, 4)

    big = generator.generate_full(13, 2)
    assert big.length == 169
    assert verifier.verify_universal_cycle(big, WeightRangeParams(n=2, k=13, s=0, t=24)).verdict == Verdict.PASS


def test_generate_full_rejects_unary_alphabet(generator):
    with pytest.raises(ParameterError):
        generator.generate_full(1, 3)


def test_caps():
    with pytest.raises(CapExceededError):
        CycleGenerator().eulerian_cycle(EXAMPLE)
    with pytest.raises(CapExceededError):
        CycleGenerator(Settings(max_cycle_length=9)).eulerian_cycle(SMALL)
    with pytest.raises(CapExceededError):
        CycleGenerator().weakly_connected(SMALL, max_vertices=6)
