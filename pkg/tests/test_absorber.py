import numpy as np
import pytest

from fasclique.absorber import (
    Absorber,
    absorption_counts,
    absorption_degree,
    build_absorber,
    resample_a_star,
    select_a_star,
)
from fasclique.analysis import friendly_clique_mask, friendly_vertices
from fasclique.constants import make_constants
from fasclique.errors import StageFailure
from fasclique.order import VertexOrder, left_graph, left_graph_from_adjacency
from fasclique.tournament import sample_random


def _setup(k, n, seed):
    t = sample_random(n, k, seed)
    L = left_graph(t, VertexOrder.random(t.num_vertices, seed + 1))
    c = make_constants(k, n, "practical")
    return L, c


def test_select_a_star_is_lowest_friendly():
    L, c = _setup(3, 60, 0)
    a = select_a_star(L, c)
    fr = friendly_vertices(L, c.thresholds["friendly_vertex"])
    for part, chosen in enumerate(a):
        assert len(chosen) == 58
        assert list(chosen) == list(fr[part][:58])


def test_select_a_star_fails_on_empty_graph():
    L = left_graph_from_adjacency(np.zeros((9, 9), dtype=np.uint8), (3, 3, 3))
    c = make_constants(3, 3, "practical")
    with pytest.raises(StageFailure) as exc:
        select_a_star(L, c)
    assert exc.value.stage == "a_star"


def test_resample_a_star_subset_of_friendly():
    L, c = _setup(3, 60, 1)
    fr = friendly_vertices(L, c.thresholds["friendly_vertex"])
    a = resample_a_star(L, c, np.random.default_rng(0))
    for part, chosen in enumerate(a):
        assert len(chosen) == 58 and set(chosen) <= set(fr[part].tolist())


def test_k2_absorber_empty():
    L, c = _setup(2, 50, 2)
    ab = build_absorber(L, select_a_star(L, c), c, rng=0)
    assert ab.levels == {} and ab.vertices() == []


@pytest.mark.parametrize("k,n", [(3, 120), (4, 150)])
def test_absorber_postconditions(k, n):
    L, c = _setup(k, n, 3)
    a_star = select_a_star(L, c)
    ab = build_absorber(L, a_star, c, rng=5)
    verts = ab.vertices()
    assert len(verts) == len(set(verts))
    assert sorted(ab.levels) == list(range(2, k))
    for r, qs in ab.levels.items():
        assert len(qs) == c.m
        for q in qs:
            assert [L.vertex_part[v] for v in q] == list(range(r))
            assert all(q[i] in set(map(int, a_star[i])) for i in range(r))
            assert L.is_clique(q)
        assert friendly_clique_mask(L, qs, c).all()
        counts = absorption_counts(L, qs, a_star[r])
        assert counts.min() >= c.thresholds["absorber_extension"]
        v = int(a_star[r][0])
        assert absorption_degree(L, ab, v, r) == counts[0]
    with pytest.raises(ValueError):
        absorption_degree(L, ab, 0, 99)


def test_absorber_reproducible():
    L, c = _setup(3, 120, 4)
    a_star = select_a_star(L, c)
    assert build_absorber(L, a_star, c, rng=7).levels == build_absorber(L, a_star, c, rng=7).levels


def test_absorber_failure_reports_level():
    L, c = _setup(3, 120, 4)
    a_star = select_a_star(L, c)
    # demand more extensions than there are tuples
    c.thresholds["absorber_extension"] = c.m + 1
    with pytest.raises(StageFailure) as exc:
        build_absorber(L, a_star, c, rng=0, max_retries=3)
    assert exc.value.stage == "absorber"
    assert exc.value.diagnostic["level"] == 2 and "vertex" in exc.value.diagnostic


def test_rejection_sampling_path():
    L, c = _setup(3, 120, 6)
    a_star = select_a_star(L, c)
    ab = build_absorber(L, a_star, c, rng=1, budget=10)
    assert len(ab.levels[2]) == c.m and L.is_clique(ab.levels[2][0])


def test_json_round_trip():
    L, c = _setup(3, 120, 8)
    ab = build_absorber(L, select_a_star(L, c), c, rng=2)
    back = Absorber.from_json(ab.to_json())
    assert back.levels == ab.levels
    assert back.a_star == [list(map(int, a)) for a in ab.a_star]
