from dataclasses import dataclass

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from minorsep.graph import Graph, VertexMask, build_graph
from minorsep.instances import InstanceSpec, generate
from minorsep.minor_model import MinorModel
from minorsep.verify import check_invariants, verify_balanced, verify_witness

from helpers import brute_balanced


def gen(family, *params, seed=0):
    return generate(InstanceSpec(family, params, seed))


def model_from(branches, n):
    return MinorModel(n, tuple(np.asarray(b, dtype=np.int64) for b in branches))


# -- balance -------------------------------------------------------------------

def test_balance_examples():
    p3 = gen("path", 3)
    r = verify_balanced(p3, VertexMask.from_ids(3, [1]))
    assert r.ok and r.worst_component == 1 and r.separator_size == 1

    k4 = gen("complete", 4)
    r = verify_balanced(k4, VertexMask.empty(4))
    assert not r.ok and r.worst_component == 4
    assert r.failures() and r.failures()[0][0] == "balanced"

    grid = gen("grid", 5, 5)
    mid_col = VertexMask.from_ids(25, [2, 7, 12, 17, 22])
    r = verify_balanced(grid, mid_col)
    assert r.ok and r.worst_component == 10 and r.separator_size == 5


def test_balance_edge_cases():
    one = gen("path", 1)
    assert not verify_balanced(one, VertexMask.empty(1)).ok
    assert verify_balanced(one, VertexMask.full(1)).ok  # nothing remains
    # exactly at the threshold: 3*2 <= 2*3
    p3 = gen("path", 3)
    assert verify_balanced(p3, VertexMask.from_ids(3, [0])).ok


def test_report_to_dict_shape():
    r = verify_balanced(gen("path", 3), VertexMask.from_ids(3, [1]))
    d = r.to_dict()
    assert set(d) == {"ok", "checks", "worst_component", "separator_size"}
    assert d["checks"][0][0] == "balanced" and d["checks"][0][1] is True


@given(st.integers(0, 2**32 - 1), st.integers(1, 16), st.integers(0, 40))
def test_balance_matches_brute_force(seed, n, m):
    rng = np.random.default_rng(seed)
    edges = set()
    for _ in range(m):
        u, v = int(rng.integers(n)), int(rng.integers(n))
        if u != v:
            edges.add((min(u, v), max(u, v)))
    g = build_graph(n, sorted(edges))
    sep_bits = rng.random(n) < 0.3
    r = verify_balanced(g, VertexMask(sep_bits))
    ok, worst = brute_balanced(n, sorted(edges), np.flatnonzero(sep_bits).tolist())
    assert r.ok == ok
    assert r.worst_component == worst


# -- witness -------------------------------------------------------------------

def test_witness_examples():
    k5 = gen("complete", 5)
    singletons = model_from([[v] for v in range(5)], 5)
    assert verify_witness(k5, singletons, 5).ok
    assert not verify_witness(k5, singletons, 6).ok

    c5 = gen("cycle", 5)
    assert not verify_witness(c5, model_from([[v] for v in range(5)], 5), 5).ok


def test_witness_tampered_branch_rejected():
    # remove one vertex from a valid witness: the pair adjacency collapses
    g = gen("subdivided_clique", 5, 1)
    branches = [[0], [1, 5], [2, 6], [3, 7], [4, 8]]  # not a valid model of K5 here
    r = verify_witness(g, model_from(branches, g.n), 5)
    assert not r.ok
    failed = {name for name, ok, _ in r.checks if not ok}
    assert "pairwise_adjacent" in failed


# -- driver invariants -----------------------------------------------------------

@dataclass
class FakeState:
    g: Graph
    n: int
    h: int
    ell: int
    model: MinorModel
    x_set: VertexMask
    live: VertexMask
    branch_budget: int


def healthy_state():
    g = gen("grid", 4, 4)
    model = model_from([[0]], 16)
    live = VertexMask.from_ids(16, [v for v in range(16) if v not in (0,)])
    return FakeState(g=g, n=16, h=4, ell=2, model=model,
                     x_set=VertexMask.empty(16), live=live, branch_budget=8)


def failing(report):
    return {name for name, ok, _ in report.checks if not ok}


def test_invariants_pass_on_healthy_state():
    r = check_invariants(healthy_state())
    assert r.ok, r.failures()
    assert {name for name, _, _ in r.checks} == {
        "model_small_and_valid", "live_disjoint_from_branches",
        "every_branch_touches_live", "branch_size_or_neighborhood",
        "live_boundary_covered", "state_sane",
    }


def test_invariants_catch_model_too_large():
    s = healthy_state()
    s.h = 1  # now |K| = 1 > h-1 = 0
    assert "model_small_and_valid" in failing(check_invariants(s))


def test_invariants_catch_live_overlap():
    s = healthy_state()
    s.live = VertexMask.from_ids(16, list(range(16)))  # includes branch vertex 0
    assert "live_disjoint_from_branches" in failing(check_invariants(s))


def test_invariants_catch_detached_branch():
    s = healthy_state()
    s.live = VertexMask.from_ids(16, [10, 11, 14, 15])  # far corner only
    r = check_invariants(s)
    assert "every_branch_touches_live" in failing(r)
    # and vertices adjacent to that live region are neither X nor branch
    assert "live_boundary_covered" in failing(r)


def test_invariants_catch_oversized_branch():
    s = healthy_state()
    # a long snake branch: bigger than budget, with a big live neighborhood
    snake = [0, 1, 2, 3, 7, 11, 15, 14, 13]
    s.model = model_from([snake], 16)
    s.live = VertexMask.from_ids(16, [v for v in range(16) if v not in snake])
    s.branch_budget = 4
    s.ell = 2
    s.n = 16
    assert "branch_size_or_neighborhood" in failing(check_invariants(s))
    # the second arm forgives a big branch with a tiny live neighborhood
    s.n = 1000
    assert "branch_size_or_neighborhood" not in failing(check_invariants(s))


def test_invariants_catch_uncovered_boundary():
    s = healthy_state()
    s.live = VertexMask.from_ids(16, [5, 6, 9, 10])
    # outside neighbors of the live block (1,2,4,7,8,11,13,14) are uncovered
    assert "live_boundary_covered" in failing(check_invariants(s))
    # covering them with X fixes exactly that check
    s.x_set = VertexMask.from_ids(16, [1, 2, 4, 7, 8, 11, 13, 14])
    r = check_invariants(s)
    assert "live_boundary_covered" not in failing(r)


def test_invariants_catch_x_touching_live_or_disconnected_live():
    s = healthy_state()
    s.x_set = VertexMask.from_ids(16, [5])  # 5 is live
    assert "state_sane" in failing(check_invariants(s))
    s = healthy_state()
    s.live = VertexMask.from_ids(16, [3, 12])  # two components
    assert "state_sane" in failing(check_invariants(s))


def test_invariants_do_not_mutate_inputs():
    s = healthy_state()
    live_before = s.live.bits.copy()
    x_before = s.x_set.bits.copy()
    check_invariants(s)
    assert np.array_equal(s.live.bits, live_before)
    assert np.array_equal(s.x_set.bits, x_before)
