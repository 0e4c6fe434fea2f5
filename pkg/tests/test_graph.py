import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ricker_proof.dynamics import RickerParams, construct_region, ricker_image_arrays
from ricker_proof.errors import ResourceExceeded
from ricker_proof.graph import (
    BoxGraph,
    CellSet,
    GraphLimits,
    box_map,
    basin_inner_enclosure,
    dump_boxes,
    enclose_nonwandering,
    grid_shape,
    max_iterations,
    partition,
    partition_grid,
    read_boxes,
    refine,
    refine_grid,
    removal_step,
    tarjan_scc,
    transitions,
)
from oracles import closure_oracle, random_digraph
from ricker_proof.interval import Box2, Interval

UNIT = Box2.from_bounds(0, 1, 0, 1)


def identity(xl, xh, yl, yh):
    return xl, xh, yl, yh


def ricker_map(alpha: Interval, k: int = 3):
    return lambda xl, xh, yl, yh: ricker_image_arrays(alpha, xl, xh, yl, yh, k)


# -- partitions -----------------------------------------------------------------------

def test_partition_unit_square_sqrt2():
    assert len(partition(UNIT, math.sqrt(2))) == 1


def test_partition_unit_square_half_sqrt2():
    cells = partition(UNIT, math.sqrt(2) / 2)
    assert len(cells) == 4
    assert sorted(c.id for c in cells) == [0, 1, 2, 3]


def test_partition_of_trapping_region_tiles_it():
    s = construct_region(RickerParams(Interval.from_decimals("0.875", "0.876")))
    cs = partition_grid(s, 0.1)
    xl, xh, yl, yh = cs.bounds()
    assert cs.max_diameter() <= 0.1
    assert xl.min() == s.x.lo and xh.max() == s.x.hi
    assert yl.min() == s.y.lo and yh.max() == s.y.hi
    # neighbouring cells share their common edge exactly, so the union is the region
    nx, ny = cs.grid.nx, cs.grid.ny
    assert len(cs) == nx * ny
    edges_x = np.unique(np.concatenate([xl, xh]))
    assert edges_x.size == nx + 1
    assert math.isclose(cs.area(), s.x.width * s.y.width, rel_tol=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 10), st.floats(0.01, 10), st.floats(1e-3, 5))
def test_grid_shape_diameter_bound(w, h, delta):
    region = Box2.from_bounds(0, w, 0, h)
    nx, ny = grid_shape(region, delta)
    assert math.hypot(w / nx, h / ny) <= delta * (1 + 1e-12)


def test_partition_respects_memory_cap():
    with pytest.raises(ResourceExceeded):
        partition_grid(UNIT, 1e-4, GraphLimits(memory_bytes=10**6))


def test_refine_one_cell():
    cs = partition_grid(UNIT, math.sqrt(2))
    fine = refine(cs, math.sqrt(2) / 2)
    assert len(fine) == 4
    assert math.isclose(fine.area(), 1.0)
    assert math.isclose(fine.max_diameter(), cs.max_diameter() / 2)


def test_refine_counts_and_nesting():
    cs = partition_grid(Box2.from_bounds(0, 3, 0, 2), 0.1)
    sub = cs.subset(np.arange(len(cs)) < 242)
    fine = refine_grid(sub)
    assert len(sub) == 242 and len(fine) == 968
    # each child lies inside its parent, bit for bit
    ci, cj = fine.ij
    parent_keys = (ci // 2) * sub.grid.ny + (cj // 2)
    assert np.isin(parent_keys, sub.keys).all()
    pxl, pxh, pyl, pyh = CellSet(sub.grid, parent_keys).bounds()
    xl, xh, yl, yh = fine.bounds()
    assert (pxl <= xl).all() and (xh <= pxh).all() and (pyl <= yl).all() and (yh <= pyh).all()


def test_refine_rejects_wrong_delta():
    with pytest.raises(ValueError):
        refine(partition_grid(UNIT, 1.0), 0.1)


# -- transitions ---------------------------------------------------------------------

def brute_force_edges(cs, image):
    xl, xh, yl, yh = cs.bounds()
    ixl, ixh, iyl, iyh = image(xl, xh, yl, yh)
    edges = set()
    for u in range(len(cs)):
        hit = (ixl[u] <= xh) & (xl <= ixh[u]) & (iyl[u] <= yh) & (yl <= iyh[u])
        edges.update((u, int(v)) for v in np.nonzero(hit)[0])
    return edges


@pytest.mark.parametrize("seed", range(5))
def test_transitions_match_all_pairs_scan(seed):
    rng = np.random.default_rng(seed)
    lo = rng.uniform(0.0, 1.5, 2)
    region = Box2.from_bounds(lo[0], lo[0] + 2.0, lo[1], lo[1] + 2.0)
    cs = partition_grid(region, 2.0 * math.sqrt(2) / 10)
    assert len(cs) == 100
    # drop some cells so the key array has holes
    cs = cs.subset(rng.random(100) < 0.8)
    image = ricker_map(Interval(0.9, 0.9001))
    g = transitions(cs, image)
    assert g.edge_set() == brute_force_edges(cs, image)


def test_single_cell_self_loop():
    cs = partition_grid(UNIT, 2.0)
    g = transitions(cs, identity)
    assert g.edge_set() == {(0, 0)}


def test_image_outside_gives_no_edges():
    cs = partition_grid(UNIT, 0.2)
    away = lambda xl, xh, yl, yh: (xl + 5, xh + 5, yl, yh)
    assert transitions(cs, away).edge_count == 0


def test_touching_boundary_counts_as_edge():
    cs = partition_grid(UNIT, math.sqrt(2) / 2)
    # every box maps onto the single point (0.5, 0.5), the common corner of all four cells
    point = lambda xl, xh, yl, yh: tuple(np.full_like(xl, 0.5) for _ in range(4))
    g = transitions(cs, point)
    assert g.edge_count == 16


def test_transitions_edge_cap():
    cs = partition_grid(UNIT, 0.05)
    with pytest.raises(ResourceExceeded):
        transitions(cs, identity, GraphLimits(max_edges=10))


def test_over_approximation_misses_no_sampled_transition():
    alpha = Interval.from_decimals("0.875", "0.876")
    s = construct_region(RickerParams(alpha))
    cs = partition_grid(s, 0.1)
    g = transitions(cs, ricker_map(alpha))
    rng = np.random.default_rng(0)
    xl, xh, yl, yh = cs.bounds()
    mpmath.mp.dps = 30
    hits = 0
    for u in rng.integers(0, len(cs), 1000):
        x, y = rng.uniform(xl[u], xh[u]), rng.uniform(yl[u], yh[u])
        a = rng.uniform(alpha.lo, alpha.hi)
        px, py = mpmath.mpf(x), mpmath.mpf(y)
        for _ in range(3):
            px, py = py, py * mpmath.exp(a - px)
        p = (float(px), float(py))
        succ = set(g.successors(int(u)).tolist())
        targets = cs.locate(p)
        # the region is not forward invariant, so some orbits leave it
        hits += bool(targets)
        assert set(targets) <= succ
    assert hits > 500


def test_transitions_deterministic():
    s = construct_region(RickerParams.point(0.9))
    cs = partition_grid(s, 0.1)
    image = ricker_map(Interval(0.9, 0.9))
    a, b = transitions(cs, image), transitions(cs, image)
    assert np.array_equal(a.indptr, b.indptr) and np.array_equal(a.indices, b.indices)


def test_box_map_adapter():
    f = box_map(lambda b: Box2(b.y, b.x))
    xl, xh, yl, yh = f(np.array([0.0]), np.array([1.0]), np.array([2.0]), np.array([3.0]))
    assert (xl[0], xh[0], yl[0], yh[0]) == (2.0, 3.0, 0.0, 1.0)


# -- Tarjan ---------------------------------------------------------------------------

def test_tarjan_two_cycle_and_isolated():
    g = BoxGraph.from_adjacency([[1], [0], []])
    lab = tarjan_scc(g)
    assert lab.component_id[0] == lab.component_id[1] != lab.component_id[2]
    assert lab.in_cycle.tolist() == [True, True, False]


def test_tarjan_chain():
    lab = tarjan_scc(BoxGraph.from_adjacency([[1], [2], []]))
    assert lab.component_count == 3 and not lab.in_cycle.any()


def test_tarjan_self_loop_is_cycle():
    lab = tarjan_scc(BoxGraph.from_adjacency([[0], [0]]))
    assert lab.in_cycle.tolist() == [True, False]


def tarjan_matches_oracle(rng) -> bool:
    n = int(rng.integers(1, 51))
    adj, g = random_digraph(rng, n)
    lab = tarjan_scc(g)
    same, in_cycle = closure_oracle(adj)
    cid = lab.component_id
    return bool(np.array_equal(cid[:, None] == cid[None, :], same) and np.array_equal(lab.in_cycle, in_cycle))


def test_tarjan_against_closure_oracle_small():
    rng = np.random.default_rng(42)
    assert all(tarjan_matches_oracle(rng) for _ in range(200))


def test_tarjan_against_scipy():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 400))
        adj, g = random_digraph(rng, n, p=2.0 / n)
        _, labels = connected_components(csr_matrix(adj), directed=True, connection="strong")
        cid = tarjan_scc(g).component_id
        # two labelings of the same partition
        pairs = set(zip(cid.tolist(), labels.tolist()))
        assert len(pairs) == len(set(cid.tolist())) == len(set(labels.tolist()))


def test_tarjan_deep_graph_without_recursion():
    n = 300_000
    g = BoxGraph.from_adjacency([[(v + 1) % n] for v in range(n)])
    lab = tarjan_scc(g)
    assert lab.component_count == 1 and lab.in_cycle.all()
    chain = BoxGraph.from_adjacency([[v + 1] for v in range(n - 1)] + [[]])
    lab = tarjan_scc(chain)
    assert lab.component_count == n and not lab.in_cycle.any()


def test_tarjan_empty_graph():
    lab = tarjan_scc(BoxGraph.from_adjacency([]))
    assert lab.component_count == 0


# -- non-wandering enclosure -----------------------------------------------------------

def test_translation_has_no_recurrence():
    shift = lambda xl, xh, yl, yh: (xl + 0.3, xh + 0.3, yl, yh)
    res = enclose_nonwandering(UNIT, shift, 0.2, max_iterations(10))
    assert res.is_empty and len(res.iterations) <= 3


def test_identity_removes_nothing():
    res = enclose_nonwandering(UNIT, identity, 0.5, max_iterations(3))
    assert not res.is_empty
    assert all(s.removed_not_in_cycle == 0 and s.removed_absorbed == 0 for s in res.iterations)
    assert math.isclose(res.survivors.area(), 1.0)


def halve_x(xl, xh, yl, yh):
    return np.nextafter(xl / 2, -np.inf), np.nextafter(xh / 2, np.inf), yl, yh


def test_contraction_keeps_the_origin_cell():
    domain = Box2.from_bounds(-1, 1, -0.01, 0.01)
    seen = []
    res = enclose_nonwandering(
        domain, halve_x, 0.25, max_iterations(6), keep_history=True,
        on_iteration=lambda k, cells, st: seen.append(cells.locate((0.0, 0.0))),
    )
    assert not res.is_empty
    assert all(ids for ids in seen)
    for cells in res.history:
        xl, xh, _, _ = cells.bounds()
        assert xh.max() - xl.min() <= 2.0
    # survivors shrink onto x = 0
    xl, xh, _, _ = res.survivors.bounds()
    assert xl.min() >= -0.1 and xh.max() <= 0.1


def two_cycle_map(xl, xh, yl, yh):
    """x -> -1 + (x - 1)/2 for x >= 0, 1 + (x + 1)/2 for x < 0; y -> y/2.

    The points (1, 0) and (-1, 0) form an attracting 2-cycle.
    """
    lo = np.full_like(xl, np.inf)
    hi = np.full_like(xl, -np.inf)
    neg = xl < 0
    a, b = xl[neg], np.minimum(xh[neg], 0.0)
    lo[neg] = np.minimum(lo[neg], 1 + (a + 1) / 2)
    hi[neg] = np.maximum(hi[neg], 1 + (b + 1) / 2)
    pos = xh >= 0
    a, b = np.maximum(xl[pos], 0.0), xh[pos]
    lo[pos] = np.minimum(lo[pos], -1 + (a - 1) / 2)
    hi[pos] = np.maximum(hi[pos], -1 + (b - 1) / 2)
    d = lambda v: np.nextafter(v, -np.inf)
    u = lambda v: np.nextafter(v, np.inf)
    return d(lo), u(hi), d(yl / 2), u(yh / 2)


def test_periodic_orbit_survives_every_iteration():
    domain = Box2.from_bounds(-2, 2, -1, 1)
    res = enclose_nonwandering(domain, two_cycle_map, 0.5, max_iterations(7), keep_history=True)
    for cells in res.history:
        assert cells.locate((1.0, 0.0)) and cells.locate((-1.0, 0.0))
    assert res.survivors.area() < 0.05


def test_survivor_sets_are_nested():
    alpha = Interval(0.9, 0.9001)
    s = construct_region(RickerParams(alpha))
    res = enclose_nonwandering(s, ricker_map(alpha), 0.1, max_iterations(5), keep_history=True)
    for prev, cur in zip(res.history, res.history[1:]):
        ci, cj = cur.ij
        parents = (ci // 2) * prev.grid.ny + (cj // 2)
        assert np.isin(parents, prev.keys).all()


def test_removal_step_counts_absorption_first():
    cs = partition_grid(UNIT, 0.25)
    kept, st_ = removal_step(cs, identity, 0.25, absorb=UNIT)
    assert len(kept) == 0
    assert st_.removed_absorbed == len(cs) and st_.removed_not_in_cycle == 0
    assert st_.survivors == 0


# -- basin inner enclosure --------------------------------------------------------------

def contract_to_centre(xl, xh, yl, yh):
    d = lambda v: np.nextafter(v, -np.inf)
    u = lambda v: np.nextafter(v, np.inf)
    return d(0.5 + (xl - 0.5) / 2), u(0.5 + (xh - 0.5) / 2), d(0.5 + (yl - 0.5) / 2), u(0.5 + (yh - 0.5) / 2)


def test_basin_grows_under_contraction():
    u = Box2.from_bounds(0.45, 0.55, 0.45, 0.55)
    areas = []
    res = basin_inner_enclosure(
        UNIT, contract_to_centre, 0.2, u,
        stop=lambda k, cells, r: areas.append(r.area()) or k >= 4,
    )
    assert all(b >= a for a, b in zip(areas, areas[1:]))
    assert res.area() > 0.0
    # the whole square contracts onto the centre, so it is eventually absorbed
    assert math.isclose(res.area(), 1.0) and len(res.remaining) == 0


def test_basin_whole_domain_absorbed_at_once():
    res = basin_inner_enclosure(UNIT, identity, 0.25, UNIT, stop=lambda k, c, r: True)
    assert len(res.absorbed) == 1 and len(res.remaining) == 0
    assert math.isclose(res.area(), 1.0)


def test_basin_nothing_absorbed_when_map_leaves():
    away = lambda xl, xh, yl, yh: (xl + 5, xh + 5, yl, yh)
    u = Box2.from_bounds(0.45, 0.55, 0.45, 0.55)
    res = basin_inner_enclosure(UNIT, away, 0.5, u, stop=lambda k, c, r: k >= 2)
    assert len(res) == 0


# -- box dumps -----------------------------------------------------------------------

def test_dump_roundtrip(tmp_path):
    cs = partition_grid(Box2.from_bounds(0.1, 0.7, 0.2, 0.9), 0.1)
    path = tmp_path / "boxes.csv"
    dump_boxes(path, [(1, cs), (2, cs.subset(np.arange(len(cs)) % 2 == 0))])
    back = read_boxes(path)
    xl, xh, yl, yh = cs.bounds()
    assert np.array_equal(back[1], np.stack([xl, xh, yl, yh], axis=1))
    assert len(back[2]) == (len(cs) + 1) // 2
    assert path.read_text().splitlines()[0] == "iter,x_lo,x_hi,y_lo,y_hi"
