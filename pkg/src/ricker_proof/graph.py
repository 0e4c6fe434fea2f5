"""Box partitions, transition graphs and the graph-based enclosure algorithms.

A partition is a uniform grid over a region.  Refinement bisects every cell
in place, so a cell at level ``k + 1`` never straddles a level-``k`` boundary.
Cells are addressed by integer coordinates ``(i, j)`` at their level and
stored as sorted keys ``i * NY + j``; dense ids are positions in that array.

Grid nodes are ``x_i = fl(X_lo + fl(i * step))`` with ``step`` the level-0
step scaled by ``2**-level``.  Scaling by a power of two is exact, so node
``2 i`` at level ``k + 1`` equals node ``i`` at level ``k`` bit for bit.

An image map takes four float arrays ``(x_lo, x_hi, y_lo, y_hi)`` and returns
four arrays enclosing the image of each box.  :func:`box_map` adapts a scalar
``Box2 -> Box2`` function.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import ResourceExceeded
from .interval import Box2, Interval

ImageMap = Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray],
                    tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]

# rough per-item costs used for memory accounting
CELL_BYTES = 96
EDGE_BYTES = 16
_KEY_LIMIT = 2**62
_CHUNK = 1 << 16


@dataclass(frozen=True)
class GraphLimits:
    """Caps enforced by counting cells and edges before they are allocated."""

    memory_bytes: int = 8 * 1024**3
    max_cells: int | None = None
    max_edges: int | None = None

    def check(self, cells: int, edges: int = 0) -> None:
        if self.max_cells is not None and cells > self.max_cells:
            raise ResourceExceeded(f"{cells} cells exceed the cap {self.max_cells}")
        if self.max_edges is not None and edges > self.max_edges:
            raise ResourceExceeded(f"{edges} edges exceed the cap {self.max_edges}")
        need = cells * CELL_BYTES + edges * EDGE_BYTES
        if need > self.memory_bytes:
            raise ResourceExceeded(
                f"{cells} cells and {edges} edges need ~{need} bytes, cap {self.memory_bytes}"
            )


UNLIMITED = GraphLimits(memory_bytes=2**62)


@dataclass(frozen=True)
class Cell:
    box: Box2
    id: int


@dataclass(frozen=True)
class Grid:
    """Uniform grid over ``region`` with ``nx0 x ny0`` cells at level 0."""

    region: Box2
    nx0: int
    ny0: int
    level: int = 0

    @property
    def nx(self) -> int:
        return self.nx0 << self.level

    @property
    def ny(self) -> int:
        return self.ny0 << self.level

    @property
    def step_x(self) -> float:
        return math.ldexp((self.region.x.hi - self.region.x.lo) / self.nx0, -self.level)

    @property
    def step_y(self) -> float:
        return math.ldexp((self.region.y.hi - self.region.y.lo) / self.ny0, -self.level)

    def finer(self) -> "Grid":
        return Grid(self.region, self.nx0, self.ny0, self.level + 1)

    def nodes_x(self, i: np.ndarray) -> np.ndarray:
        return _nodes(self.region.x, self.step_x, self.nx, i)

    def nodes_y(self, j: np.ndarray) -> np.ndarray:
        return _nodes(self.region.y, self.step_y, self.ny, j)

    def cell_box(self, i: int, j: int) -> Box2:
        xs = self.nodes_x(np.array([i, i + 1]))
        ys = self.nodes_y(np.array([j, j + 1]))
        return Box2(Interval(float(xs[0]), float(xs[1])), Interval(float(ys[0]), float(ys[1])))

    def first_touching(self, a: np.ndarray, axis: int) -> np.ndarray:
        """Smallest index whose closed cell reaches ``a`` (``node(i + 1) >= a``)."""
        node, lo, step, n = self._axis(axis)
        i = np.clip(np.floor((a - lo) / step), 0, n - 1).astype(np.int64)
        while True:
            fwd = (i < n - 1) & (node(i + 1) < a)
            back = (i > 0) & (node(i) >= a)
            if not (fwd.any() or back.any()):
                return i
            i = i + fwd - back

    def last_touching(self, b: np.ndarray, axis: int) -> np.ndarray:
        """Largest index whose closed cell reaches ``b`` (``node(i) <= b``)."""
        node, lo, step, n = self._axis(axis)
        i = np.clip(np.floor((b - lo) / step), 0, n - 1).astype(np.int64)
        while True:
            fwd = (i < n - 1) & (node(i + 1) <= b)
            back = (i > 0) & (node(i) > b)
            if not (fwd.any() or back.any()):
                return i
            i = i + fwd - back

    def _axis(self, axis: int):
        if axis == 0:
            return self.nodes_x, self.region.x.lo, self.step_x, self.nx
        return self.nodes_y, self.region.y.lo, self.step_y, self.ny


def _nodes(iv: Interval, step: float, n: int, i: np.ndarray) -> np.ndarray:
    i = np.asarray(i, dtype=np.int64)
    x = np.minimum(iv.lo + i.astype(np.float64) * step, iv.hi)
    return np.where(i >= n, iv.hi, x)


def grid_shape(region: Box2, delta: float) -> tuple[int, int]:
    """Per-axis cell counts ``ceil(w * sqrt 2 / delta)`` with the diameter bound checked."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    wx, wy = region.x.width, region.y.width
    nx = max(1, math.ceil(wx * math.sqrt(2.0) / delta))
    ny = max(1, math.ceil(wy * math.sqrt(2.0) / delta))
    while math.hypot(wx / nx, wy / ny) > delta:
        nx, ny = nx + 1, ny + 1
    return nx, ny


@dataclass(frozen=True)
class CellSet:
    """Cells of one grid level, as sorted unique keys ``i * ny + j``."""

    grid: Grid
    keys: np.ndarray

    def __len__(self) -> int:
        return int(self.keys.size)

    @property
    def ij(self) -> tuple[np.ndarray, np.ndarray]:
        return np.divmod(self.keys, self.grid.ny)

    def bounds(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        i, j = self.ij
        g = self.grid
        return g.nodes_x(i), g.nodes_x(i + 1), g.nodes_y(j), g.nodes_y(j + 1)

    def cells(self) -> list[Cell]:
        xl, xh, yl, yh = self.bounds()
        return [
            Cell(Box2(Interval(float(a), float(b)), Interval(float(c), float(d))), k)
            for k, (a, b, c, d) in enumerate(zip(xl, xh, yl, yh))
        ]

    def subset(self, mask: np.ndarray) -> "CellSet":
        return CellSet(self.grid, self.keys[mask])

    def max_diameter(self) -> float:
        if not len(self):
            return 0.0
        xl, xh, yl, yh = self.bounds()
        return float(np.max(np.hypot(xh - xl, yh - yl)))

    def area(self) -> float:
        xl, xh, yl, yh = self.bounds()
        return float(np.sum((xh - xl) * (yh - yl)))

    def locate(self, p: tuple[float, float]) -> list[int]:
        """Dense ids of every cell whose closed box contains ``p``."""
        g = self.grid
        x, y = np.array([p[0]]), np.array([p[1]])
        out = []
        for i in range(int(g.first_touching(x, 0)[0]), int(g.last_touching(x, 0)[0]) + 1):
            for j in range(int(g.first_touching(y, 1)[0]), int(g.last_touching(y, 1)[0]) + 1):
                key = i * g.ny + j
                pos = int(np.searchsorted(self.keys, key))
                if pos < len(self) and self.keys[pos] == key:
                    box = g.cell_box(i, j)
                    if box.contains_point(p):
                        out.append(pos)
        return out


def partition_grid(region: Box2, delta: float, limits: GraphLimits = UNLIMITED) -> CellSet:
    """All cells of a uniform grid on ``region`` with diameters at most ``delta``."""
    nx, ny = grid_shape(region, delta)
    limits.check(nx * ny)
    grid = Grid(region, nx, ny)
    return CellSet(grid, np.arange(nx * ny, dtype=np.int64))


def partition(region: Box2, delta: float, limits: GraphLimits = UNLIMITED) -> list[Cell]:
    return partition_grid(region, delta, limits).cells()


def refine_grid(cells: CellSet, limits: GraphLimits = UNLIMITED) -> CellSet:
    """Split every cell into its four quadtree children."""
    fine = cells.grid.finer()
    if fine.nx * fine.ny >= _KEY_LIMIT:
        raise ResourceExceeded(f"grid level {fine.level} exceeds integer key range")
    limits.check(4 * len(cells))
    i, j = cells.ij
    ci = (2 * i)[:, None] + np.array([0, 0, 1, 1])
    cj = (2 * j)[:, None] + np.array([0, 1, 0, 1])
    keys = (ci * fine.ny + cj).ravel()
    keys.sort()
    return CellSet(fine, keys)


def refine(cells: CellSet, new_delta: float | None = None, limits: GraphLimits = UNLIMITED) -> CellSet:
    """Quadtree refinement; ``new_delta`` if given must be at least the new diameter."""
    out = refine_grid(cells, limits)
    if new_delta is not None and out.max_diameter() > new_delta * (1 + 1e-12):
        raise ValueError(f"refined cells exceed diameter {new_delta}")
    return out


def box_map(f: Callable[[Box2], Box2]) -> ImageMap:
    """Lift a scalar box enclosure to the array protocol."""

    def image(xl, xh, yl, yh):
        out = np.empty((4, len(xl)))
        for k in range(len(xl)):
            b = f(Box2(Interval(float(xl[k]), float(xh[k])), Interval(float(yl[k]), float(yh[k]))))
            out[:, k] = b.bounds
        return out[0], out[1], out[2], out[3]

    return image


# -- rectangle queries -------------------------------------------------------

def _index_rect(grid: Grid, xl, xh, yl, yh):
    """Index rectangles of grid cells touching each box; ``valid`` is False if none."""
    r = grid.region
    valid = (xh >= r.x.lo) & (xl <= r.x.hi) & (yh >= r.y.lo) & (yl <= r.y.hi)
    valid &= ~(np.isnan(xl) | np.isnan(xh) | np.isnan(yl) | np.isnan(yh))
    xl = np.clip(xl, r.x.lo, r.x.hi)
    xh = np.clip(xh, r.x.lo, r.x.hi)
    yl = np.clip(yl, r.y.lo, r.y.hi)
    yh = np.clip(yh, r.y.lo, r.y.hi)
    return (valid, grid.first_touching(xl, 0), grid.last_touching(xh, 0),
            grid.first_touching(yl, 1), grid.last_touching(yh, 1))


def _rect_rows(keys: np.ndarray, ny: int, i0, i1, j0, j1):
    """Per-row search ranges of ``keys`` inside each index rectangle.

    Returns ``(owner, p0, p1)``: for row pair ``r`` the matching keys are
    ``keys[p0[r]:p1[r]]`` and belong to rectangle ``owner[r]``.
    """
    rows = i1 - i0 + 1
    owner = np.repeat(np.arange(i0.size), rows)
    start = np.cumsum(rows) - rows
    row = np.repeat(i0, rows) + (np.arange(owner.size) - np.repeat(start, rows))
    base = row * ny
    p0 = np.searchsorted(keys, base + j0[owner], side="left")
    p1 = np.searchsorted(keys, base + j1[owner], side="right")
    return owner, p0, p1


def _expand(p0: np.ndarray, counts: np.ndarray) -> np.ndarray:
    total = int(counts.sum())
    offs = np.cumsum(counts) - counts
    return np.repeat(p0 - offs, counts) + np.arange(total)


# -- graphs ------------------------------------------------------------------

@dataclass
class BoxGraph:
    """Transition graph in CSR form: successors of ``v`` are ``indices[indptr[v]:indptr[v+1]]``."""

    cells: CellSet | None
    indptr: np.ndarray
    indices: np.ndarray
    images: tuple[np.ndarray, ...] | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return int(self.indptr.size - 1)

    @property
    def edge_count(self) -> int:
        return int(self.indices.size)

    @property
    def vertices(self) -> list[Cell]:
        return self.cells.cells() if self.cells is not None else []

    @property
    def edges(self) -> list[list[int]]:
        return [self.successors(v).tolist() for v in range(self.n)]

    def successors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edge_set(self) -> set[tuple[int, int]]:
        src = np.repeat(np.arange(self.n), np.diff(self.indptr))
        return set(zip(src.tolist(), self.indices.tolist()))

    @classmethod
    def from_adjacency(cls, adj: Iterable[Iterable[int]]) -> "BoxGraph":
        lists = [sorted(set(int(w) for w in succ)) for succ in adj]
        indptr = np.zeros(len(lists) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(s) for s in lists])
        flat = [w for s in lists for w in s]
        return cls(None, indptr, np.array(flat, dtype=np.int64))


def transitions(
    cells: CellSet,
    image: ImageMap,
    limits: GraphLimits = UNLIMITED,
    images: tuple[np.ndarray, ...] | None = None,
) -> BoxGraph:
    """Edges ``u -> v`` whenever the image enclosure of ``u`` meets the closed cell ``v``."""
    n = len(cells)
    if images is None:
        images = image(*cells.bounds())
    ny = cells.grid.ny
    srcs, dsts = [], []
    total = 0
    for c0 in range(0, n, _CHUNK):
        sl = slice(c0, min(n, c0 + _CHUNK))
        valid, i0, i1, j0, j1 = _index_rect(cells.grid, *(a[sl] for a in images))
        idx = np.nonzero(valid)[0]
        owner, p0, p1 = _rect_rows(cells.keys, ny, i0[idx], i1[idx], j0[idx], j1[idx])
        counts = p1 - p0
        total += int(counts.sum())
        limits.check(n, total)
        dsts.append(_expand(p0, counts))
        srcs.append(np.repeat(idx[owner] + c0, counts))
    src = np.concatenate(srcs) if srcs else np.zeros(0, np.int64)
    dst = np.concatenate(dsts) if dsts else np.zeros(0, np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return BoxGraph(cells, indptr, dst.astype(np.int64), images)


@dataclass(frozen=True)
class SccLabeling:
    component_id: np.ndarray
    in_cycle: np.ndarray

    @property
    def component_count(self) -> int:
        return int(self.component_id.max()) + 1 if self.component_id.size else 0


def tarjan_scc(graph: BoxGraph) -> SccLabeling:
    """Strongly connected components by Tarjan's algorithm with an explicit stack.

    Components are numbered in the order they are completed (reverse
    topological order of the condensation).
    """
    n = graph.n
    indptr = graph.indptr.tolist()
    indices = graph.indices.tolist()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [[root, indptr[root]]]
        while work:
            frame = work[-1]
            v, pos = frame
            end = indptr[v + 1]
            descended = False
            while pos < end:
                w = indices[pos]
                pos += 1
                if index[w] == -1:
                    frame[1] = pos
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append([w, indptr[w]])
                    descended = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    comp_arr = np.array(comp, dtype=np.int64)
    sizes = np.bincount(comp_arr, minlength=ncomp) if n else np.zeros(0, np.int64)
    in_cycle = sizes[comp_arr] >= 2 if n else np.zeros(0, bool)
    src = np.repeat(np.arange(n), np.diff(graph.indptr))
    self_loops = src[graph.indices == src]
    in_cycle = np.asarray(in_cycle, dtype=bool)
    in_cycle[self_loops] = True
    return SccLabeling(comp_arr, in_cycle)


# -- the enclosure algorithms ------------------------------------------------

@dataclass(frozen=True)
class IterationStats:
    delta: float
    vertex_count: int
    edge_count: int
    removed_not_in_cycle: int
    removed_absorbed: int

    @property
    def survivors(self) -> int:
        return self.vertex_count - self.removed_not_in_cycle - self.removed_absorbed

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "removed_not_in_cycle": self.removed_not_in_cycle,
            "removed_absorbed": self.removed_absorbed,
        }


def boxes_inside(xl, xh, yl, yh, u: Box2) -> np.ndarray:
    return (xl >= u.x.lo) & (xh <= u.x.hi) & (yl >= u.y.lo) & (yh <= u.y.hi)


def removal_step(
    cells: CellSet,
    image: ImageMap,
    delta: float,
    absorb: Box2 | None = None,
    limits: GraphLimits = UNLIMITED,
) -> tuple[CellSet, IterationStats]:
    """Build the graph, then drop cells off every cycle and cells absorbed by ``absorb``.

    A cell is absorbed when it, or its image enclosure, lies in ``absorb``.
    Absorption is counted first; the cycle count covers the remaining removals.
    """
    limits.check(len(cells))
    bounds = cells.bounds()
    images = image(*bounds)
    graph = transitions(cells, image, limits, images)
    labels = tarjan_scc(graph)
    if absorb is not None:
        absorbed = boxes_inside(*bounds, absorb) | boxes_inside(*images, absorb)
    else:
        absorbed = np.zeros(len(cells), dtype=bool)
    wandering = ~labels.in_cycle & ~absorbed
    keep = labels.in_cycle & ~absorbed
    stats = IterationStats(
        delta=delta,
        vertex_count=len(cells),
        edge_count=graph.edge_count,
        removed_not_in_cycle=int(wandering.sum()),
        removed_absorbed=int(absorbed.sum()),
    )
    return cells.subset(keep), stats


StopPredicate = Callable[[int, CellSet], bool]


@dataclass
class EnclosureResult:
    """Outcome of the non-wandering enclosure: ``survivors`` is None when empty."""

    survivors: CellSet | None
    iterations: list[IterationStats]
    history: list[CellSet] = field(default_factory=list, repr=False)

    @property
    def is_empty(self) -> bool:
        return self.survivors is None


def max_iterations(n: int) -> StopPredicate:
    return lambda k, cells: k + 1 >= n


def enclose_nonwandering(
    domain: Box2,
    image: ImageMap,
    delta0: float,
    stop: StopPredicate,
    limits: GraphLimits = UNLIMITED,
    absorb: Box2 | None = None,
    keep_history: bool = False,
    on_iteration: Callable[[int, CellSet, IterationStats], None] | None = None,
) -> EnclosureResult:
    """Repeatedly drop cells off every directed cycle and refine the survivors.

    Every iteration's survivors contain all non-wandering points of the map in
    ``domain`` (for a forward-invariant domain).  Returns an empty result once
    no cell survives, else the survivors at the iteration where ``stop`` fires.
    With ``absorb``, cells inside it or mapped into it are removed too.
    """
    cells = partition_grid(domain, delta0, limits)
    delta = delta0
    stats: list[IterationStats] = []
    history: list[CellSet] = []
    k = 0
    while True:
        cells, st = removal_step(cells, image, delta, absorb, limits)
        stats.append(st)
        if keep_history:
            history.append(cells)
        if on_iteration is not None:
            on_iteration(k, cells, st)
        if not len(cells):
            return EnclosureResult(None, stats, history)
        if stop(k, cells):
            return EnclosureResult(cells, stats, history)
        delta /= 2.0
        cells = refine_grid(cells, limits)
        k += 1


@dataclass
class BasinResult:
    """Cells certified in the basin, grouped by the level at which they were absorbed."""

    absorbed: list[CellSet]
    remaining: CellSet

    def cells(self) -> list[Cell]:
        out: list[Cell] = []
        for cs in self.absorbed:
            for c in cs.cells():
                out.append(Cell(c.box, len(out)))
        return out

    def __len__(self) -> int:
        return sum(len(c) for c in self.absorbed)

    def area(self) -> float:
        return sum(c.area() for c in self.absorbed)


def _covered(grid: Grid, w_keys: np.ndarray, boxes) -> np.ndarray:
    """True where every grid cell touching the box is in ``w_keys``."""
    valid, i0, i1, j0, j1 = _index_rect(grid, *boxes)
    r = grid.region
    xl, xh, yl, yh = boxes
    valid &= (xl >= r.x.lo) & (xh <= r.x.hi) & (yl >= r.y.lo) & (yh <= r.y.hi)
    out = np.zeros(valid.size, dtype=bool)
    idx = np.nonzero(valid)[0]
    if not idx.size or not w_keys.size:
        return out
    owner, p0, p1 = _rect_rows(w_keys, grid.ny, i0[idx], i1[idx], j0[idx], j1[idx])
    found = np.bincount(owner, weights=p1 - p0, minlength=idx.size)
    need = (i1[idx] - i0[idx] + 1) * (j1[idx] - j0[idx] + 1)
    out[idx] = found == need
    return out


def basin_inner_enclosure(
    domain: Box2,
    image: ImageMap,
    delta0: float,
    u: Box2,
    stop: Callable[[int, CellSet, BasinResult], bool],
    limits: GraphLimits = UNLIMITED,
) -> BasinResult:
    """Collect cells that lie in, or map into, ``u`` or the cells already collected.

    Coverage by collected cells is tested conservatively: every cell of the
    current grid touching the box must already be collected.
    """
    cells = partition_grid(domain, delta0, limits)
    w_keys = np.zeros(0, dtype=np.int64)
    result = BasinResult([], cells)
    k = 0
    while True:
        bounds = cells.bounds()
        images = image(*bounds)
        moved_any = np.zeros(len(cells), dtype=bool)
        while True:
            rest = ~moved_any
            sub_b = tuple(a[rest] for a in bounds)
            sub_i = tuple(a[rest] for a in images)
            move = (boxes_inside(*sub_b, u) | boxes_inside(*sub_i, u)
                    | _covered(cells.grid, w_keys, sub_i))
            if not move.any():
                break
            pos = np.nonzero(rest)[0][move]
            moved_any[pos] = True
            w_keys = np.union1d(w_keys, cells.keys[pos])
        result.absorbed.append(cells.subset(moved_any))
        cells = cells.subset(~moved_any)
        result.remaining = cells
        if stop(k, cells, result) or not len(cells):
            return result
        cells = refine_grid(cells, limits)
        w_keys = refine_grid(CellSet(result.remaining.grid, w_keys), UNLIMITED).keys
        k += 1


# -- output ------------------------------------------------------------------

def iter_rows(iteration: int, cells: CellSet) -> Iterator[tuple]:
    xl, xh, yl, yh = cells.bounds()
    for row in zip(xl.tolist(), xh.tolist(), yl.tolist(), yh.tolist()):
        yield (iteration, *row)


def dump_boxes(path, history: Iterable[tuple[int, CellSet]]) -> None:
    """Write survivor boxes as CSV ``iter,x_lo,x_hi,y_lo,y_hi``."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iter", "x_lo", "x_hi", "y_lo", "y_hi"])
        for it, cells in history:
            for row in iter_rows(it, cells):
                w.writerow([row[0]] + [repr(v) for v in row[1:]])


def read_boxes(path) -> dict[int, np.ndarray]:
    """Inverse of :func:`dump_boxes`: iteration -> array of rows ``(x_lo, x_hi, y_lo, y_hi)``."""
    out: dict[int, list] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.setdefault(int(row["iter"]), []).append(
                [float(row["x_lo"]), float(row["x_hi"]), float(row["y_lo"]), float(row["y_hi"])]
            )
    return {k: np.array(v) for k, v in out.items()}


__all__ = [
    "BasinResult",
    "BoxGraph",
    "Cell",
    "CellSet",
    "EnclosureResult",
    "Grid",
    "GraphLimits",
    "ImageMap",
    "IterationStats",
    "SccLabeling",
    "UNLIMITED",
    "basin_inner_enclosure",
    "box_map",
    "boxes_inside",
    "dump_boxes",
    "enclose_nonwandering",
    "grid_shape",
    "max_iterations",
    "partition",
    "partition_grid",
    "read_boxes",
    "refine",
    "refine_grid",
    "removal_step",
    "tarjan_scc",
    "transitions",
]
