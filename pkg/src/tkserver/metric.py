"""Metric spaces used by the simulator.

Three families are supported:

* ``GraphSpace``: shortest-path metric of a finite, connected, unweighted graph.
  Points are vertex indices ``0..n-1``; ``names`` gives human readable labels.
* ``LineSpace``: the rational line (optionally a segment), exact ``Fraction`` arithmetic.
* ``CycleSpace``: an even cycle, usable both as a graph and through modular arithmetic.

The layered constructions (deterministic and randomized variants) live in
``LayeredSpace``, which can answer adjacency and distance queries from the
combinatorial rules without materializing its edge set.
"""
from __future__ import annotations

import itertools
import math
import random
import warnings
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InvalidParameter, TooLarge, Unsupported

# all-pairs distances are precomputed up to this many vertices
APSP_LIMIT = 5000
# default cap on the number of vertices a layered generator may create
DEFAULT_VERTEX_CAP = 200_000


class MetricSpace:
    """Common interface: ``d``, ``contains`` and, for finite spaces, ``points``."""

    kind = "abstract"

    def __init__(self, params=None):
        self.params = dict(params or {})

    @property
    def finite(self) -> bool:
        return False

    def d(self, p, q):
        raise NotImplementedError

    def contains(self, p) -> bool:
        raise NotImplementedError

    def points(self):
        raise Unsupported(f"{self.kind} space has no finite point set")

    def name(self, p) -> str:
        return str(p)

    def __repr__(self):
        return f"<{type(self).__name__} {self.kind} {self.params}>"


class GraphSpace(MetricSpace):
    """Shortest-path metric of a connected unweighted graph on vertices ``0..n-1``."""

    kind = "graph"

    def __init__(self, n, edges, names=None, kind=None, params=None):
        super().__init__(params)
        if kind is not None:
            self.kind = kind
        if n < 1:
            raise InvalidParameter("a graph needs at least one vertex")
        self.n = int(n)
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        if len(self.names) != self.n:
            raise InvalidParameter("names must list every vertex exactly once")
        self._index = {nm: i for i, nm in enumerate(self.names)}
        seen = set()
        adj = [[] for _ in range(self.n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"bad edge ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                continue
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.adj = [sorted(a) for a in adj]
        self._edges = sorted(seen)
        self._matrix = None

    @property
    def finite(self) -> bool:
        return True

    @property
    def edges(self):
        return list(self._edges)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def points(self):
        return range(self.n)

    def name(self, p) -> str:
        return self.names[p]

    def index(self, name):
        """Vertex index for a vertex name (or pass an index through unchanged)."""
        if isinstance(name, (int, np.integer)) and not isinstance(name, bool):
            return int(name)
        try:
            return self._index[name]
        except KeyError:
            raise InvalidParameter(f"unknown vertex {name!r}") from None

    def contains(self, p) -> bool:
        return isinstance(p, (int, np.integer)) and not isinstance(p, bool) and 0 <= p < self.n

    @property
    def matrix(self) -> np.ndarray:
        """All-pairs distance matrix (int32), computed on first use."""
        if self._matrix is None:
            if self.n > APSP_LIMIT:
                raise TooLarge(f"{self.n} vertices exceed the all-pairs limit {APSP_LIMIT}")
            self._matrix = _apsp(self.n, self._edges)
        return self._matrix

    def d(self, p, q):
        return int(self.matrix[p, q])


def _apsp(n, edges):
    if n == 1:
        return np.zeros((1, 1), dtype=np.int32)
    rows = [u for u, v in edges] + [v for u, v in edges]
    cols = [v for u, v in edges] + [u for u, v in edges]
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    dist = shortest_path(graph, method="D", directed=False, unweighted=True)
    if np.isinf(dist).any():
        raise InvalidParameter("graph is not connected")
    return dist.astype(np.int32)


def bfs_distances(space: GraphSpace, source: int) -> list:
    """Plain breadth-first search on the stored adjacency lists."""
    dist = [-1] * space.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in space.adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


class CycleSpace(GraphSpace):
    """Even cycle on residues ``0..N-1``; distances by circular arc length."""

    kind = "cycle"

    def __init__(self, n):
        edges = [(i, (i + 1) % n) for i in range(n)]
        super().__init__(n, edges, params={"n": n})

    def norm(self, x) -> int:
        return int(x) % self.n

    def d(self, p, q):
        gap = abs(p - q) % self.n
        return min(gap, self.n - gap)


class LineSpace(MetricSpace):
    """Rational line, or the segment ``[lo, hi]`` when bounds are given.

    ``sample`` declares a finite set of points so that finite-only
    operations (aspect ratio, point enumeration) become available.
    """

    kind = "line"

    def __init__(self, lo=None, hi=None, sample=None):
        lo = None if lo is None else Fraction(lo)
        hi = None if hi is None else Fraction(hi)
        super().__init__({"lo": None if lo is None else str(lo), "hi": None if hi is None else str(hi)})
        self.lo, self.hi = lo, hi
        self.sample = None if sample is None else sorted({Fraction(p) for p in sample})
        if self.sample is not None and any(not self.contains(p) for p in self.sample):
            raise InvalidParameter("declared sample lies outside the segment")

    @property
    def finite(self) -> bool:
        return self.sample is not None

    def points(self):
        if self.sample is None:
            raise Unsupported("line has no declared point sample")
        return list(self.sample)

    def contains(self, p) -> bool:
        if isinstance(p, bool) or not isinstance(p, Rational):
            return False
        if self.lo is not None and p < self.lo:
            return False
        if self.hi is not None and p > self.hi:
            return False
        return True

    def d(self, p, q):
        return abs(Fraction(p) - Fraction(q))


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def build_clique(n: int) -> GraphSpace:
    if n < 2:
        raise InvalidParameter("a clique needs at least 2 vertices")
    edges = itertools.combinations(range(n), 2)
    return GraphSpace(n, edges, kind="clique", params={"n": n})


def build_path(n: int, offset: int = 0) -> GraphSpace:
    """Path on ``n`` vertices; vertex ``i`` is named after the integer ``offset + i``."""
    if n < 1:
        raise InvalidParameter("a path needs at least one vertex")
    names = [str(offset + i) for i in range(n)]
    return GraphSpace(n, [(i, i + 1) for i in range(n - 1)], names=names, kind="path",
                      params={"n": n, "offset": offset})


def build_cycle(n: int) -> CycleSpace:
    if n < 4 or n % 2:
        raise InvalidParameter("cycle length must be even and at least 4")
    return CycleSpace(n)


def build_line_segment(lo, hi, sample=None) -> LineSpace:
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise InvalidParameter("segment needs lo < hi")
    return LineSpace(lo, hi, sample=sample)


def _double_cycle_edges(offset=0):
    # A_i -> offset + i, B_i -> offset + 6 + i  (i = 0..5)
    edges = []
    for i in range(6):
        j = (i + 1) % 6
        for x in (0, 6):
            for y in (0, 6):
                edges.append((offset + x + i, offset + y + j))
    return edges


def build_double_cycle() -> GraphSpace:
    names = [f"A{i + 1}" for i in range(6)] + [f"B{i + 1}" for i in range(6)]
    return GraphSpace(12, _double_cycle_edges(), names=names, kind="double-cycle", params={})


def build_double_cycle_chain(k: int) -> GraphSpace:
    """``k/2`` double cycles; B_1 of gadget i is joined to B_4 of gadget i+1 by a 4-vertex path."""
    if k < 2 or k % 2:
        raise InvalidParameter("double cycle chain needs an even k >= 2")
    gadgets = k // 2
    names, edges = [], []
    for g in range(gadgets):
        names += [f"G{g + 1}.A{i + 1}" for i in range(6)] + [f"G{g + 1}.B{i + 1}" for i in range(6)]
        edges += _double_cycle_edges(12 * g)
    base = 12 * gadgets
    for g in range(gadgets - 1):
        path = [base + 4 * g + t for t in range(4)]
        names += [f"P{g + 1}.{t + 1}" for t in range(4)]
        edges.append((12 * g + 6 + 0, path[0]))          # B_1 of G_g
        edges += [(path[t], path[t + 1]) for t in range(3)]
        edges.append((path[3], 12 * (g + 1) + 6 + 3))    # B_4 of G_{g+1}
    return GraphSpace(len(names), edges, names=names, kind="double-cycle-chain", params={"k": k})


def chain_vertex(g: int, letter: int, i: int) -> int:
    """Index of A_{i+1} (letter 0) or B_{i+1} (letter 1) in gadget ``g`` (all 0-based)."""
    return 12 * g + 6 * letter + i


# ---------------------------------------------------------------------------
# layered constructions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LayeredSpec:
    """Combinatorics of a three-layer construction.

    Every block has one hub group of ``hub_size`` points and ``k`` fringe groups
    of ``fringe_size`` points.  The deterministic graph uses ``hub_size=1`` and
    ``fringe_size=k-1``; the randomized one uses ``N`` for both.

    Internally everything is 0-based: layer ``l`` in 0..2, block ``b`` in 0..B-1,
    group ``g`` in 0..k (0 is the hub group), point ``n`` within the group.
    """

    k: int
    hub_size: int
    fringe_size: int
    randomized: bool = False

    @property
    def blocks(self) -> int:
        return self.k * self.fringe_size ** (self.k - 1)

    @property
    def block_size(self) -> int:
        return self.hub_size + self.k * self.fringe_size

    @property
    def layer_size(self) -> int:
        return self.blocks * self.block_size

    @property
    def vertex_count(self) -> int:
        return 3 * self.layer_size

    @property
    def edge_count(self) -> int:
        h, f, k = self.hub_size, self.fringe_size, self.k
        per_pair = h * h + h * f + (k - 1) * h + (k - 1) * f
        return 3 * self.blocks ** 2 * per_pair

    def group_size(self, g: int) -> int:
        return self.hub_size if g == 0 else self.fringe_size

    def vertex(self, layer, block, group, point=0) -> int:
        offset = 0 if group == 0 else self.hub_size + (group - 1) * self.fringe_size
        return (layer % 3) * self.layer_size + block * self.block_size + offset + point

    def coords(self, v):
        layer, rest = divmod(v, self.layer_size)
        block, off = divmod(rest, self.block_size)
        if off < self.hub_size:
            return layer, block, 0, off
        g, n = divmod(off - self.hub_size, self.fringe_size)
        return layer, block, g + 1, n

    def name(self, v) -> str:
        layer, block, g, n = self.coords(v)
        if g == 0:
            if self.randomized:
                return f"h({layer + 1},{block + 1},{n + 1})"
            return f"h({layer + 1},{block + 1})"
        return f"f({layer + 1},{block + 1},{g},{n + 1})"

    # choice bijection: mixed radix, missing group most significant,
    # the chosen point of the lowest remaining group least significant

    def encode_choice(self, missing: int, chosen: dict) -> int:
        if not 1 <= missing <= self.k:
            raise InvalidParameter(f"missing group {missing} out of range")
        groups = [g for g in range(1, self.k + 1) if g != missing]
        if set(chosen) != set(groups):
            raise InvalidParameter("a choice picks exactly one point from every group but one")
        code = (missing - 1) * self.fringe_size ** (self.k - 1)
        for rank, g in enumerate(groups):
            n = chosen[g]
            if not 0 <= n < self.fringe_size:
                raise InvalidParameter(f"point {n} out of range")
            code += n * self.fringe_size ** rank
        return code

    def decode_choice(self, code: int):
        if not 0 <= code < self.blocks:
            raise InvalidParameter(f"choice {code} out of range")
        top, rest = divmod(code, self.fringe_size ** (self.k - 1))
        missing = top + 1
        chosen = {}
        for g in range(1, self.k + 1):
            if g == missing:
                continue
            rest, n = divmod(rest, self.fringe_size)
            chosen[g] = n
        return missing, chosen


class LayeredSpace(GraphSpace):
    """Three-layer graph from the hub/fringe construction.

    With ``materialize=True`` the edge list is generated (and all-pairs BFS
    distances when small enough); otherwise only the implicit oracle is used.
    """

    def __init__(self, spec: LayeredSpec, materialize: bool, kind: str, params: dict):
        self.spec = spec
        k, B = spec.k, spec.blocks
        self._missing = np.zeros(B, dtype=np.int64)
        self._chosen = np.full((B, k + 1), -1, dtype=np.int64)
        for c in range(B):
            missing, chosen = spec.decode_choice(c)
            self._missing[c] = missing
            for g, n in chosen.items():
                self._chosen[c, g] = n
        # blocks c whose choice contains point n of group g
        self._blocks_with = {}
        for c in range(B):
            for g in range(1, k + 1):
                if self._chosen[c, g] >= 0:
                    self._blocks_with.setdefault((g, int(self._chosen[c, g])), []).append(c)
        names = [spec.name(v) for v in range(spec.vertex_count)]
        edges = self._enumerate_edges() if materialize else []
        self.materialized = materialize
        super().__init__(spec.vertex_count, edges, names=names, kind=kind, params=params)
        if not materialize:
            self.adj = None

    def _enumerate_edges(self):
        sp, k = self.spec, self.spec.k
        out = []
        for layer in range(3):
            nxt = layer + 1
            for b in range(sp.blocks):
                hubs_b = [sp.vertex(layer, b, 0, n) for n in range(sp.hub_size)]
                for c in range(sp.blocks):
                    gc = int(self._missing[c])
                    hubs_c = [sp.vertex(nxt, c, 0, n) for n in range(sp.hub_size)]
                    fr_gc = [sp.vertex(nxt, c, gc, n) for n in range(sp.fringe_size)]
                    out += [(h, h2) for h in hubs_b for h2 in hubs_c]
                    out += [(h, f) for h in hubs_b for f in fr_gc]
                    for g in range(1, k + 1):
                        if g == gc:
                            continue
                        src = sp.vertex(layer, b, g, int(self._chosen[c, g]))
                        out += [(src, h2) for h2 in hubs_c]
                        out += [(src, sp.vertex(nxt, c, g, n)) for n in range(sp.fringe_size)]
        return out

    @property
    def matrix(self):
        if not self.materialized:
            raise TooLarge("space is not materialized; use the distance oracle")
        return super().matrix

    @property
    def edges(self):
        if not self.materialized:
            raise TooLarge("space is not materialized")
        return super().edges

    @property
    def edge_count(self) -> int:
        return self.spec.edge_count if not self.materialized else super().edge_count

    def d(self, p, q):
        if self.materialized and self.n <= APSP_LIMIT:
            return int(self.matrix[p, q])
        return self.oracle_distance(p, q)

    # -- implicit oracle ---------------------------------------------------

    def _forward_adjacent(self, u, v) -> bool:
        """u in layer l, v in layer l+1."""
        _, _, gu, nu = self.spec.coords(u)
        _, c, gv, _ = self.spec.coords(v)
        if gu == 0:
            return gv == 0 or gv == self._missing[c]
        return (self._missing[c] != gu and self._chosen[c, gu] == nu and gv in (0, gu))

    def oracle_adjacent(self, u, v) -> bool:
        lu, lv = u // self.spec.layer_size, v // self.spec.layer_size
        if (lu + 1) % 3 == lv:
            return self._forward_adjacent(u, v)
        if (lv + 1) % 3 == lu:
            return self._forward_adjacent(v, u)
        return False

    def _backward(self, v):
        """Neighbours in the previous layer as (all hubs?, {(group, point)} in every block)."""
        _, b, g, _ = self.spec.coords(v)
        missing = int(self._missing[b])
        if g == 0:
            pairs = {(gg, int(self._chosen[b, gg])) for gg in range(1, self.spec.k + 1) if gg != missing}
            return True, pairs
        if g == missing:
            return True, set()
        return False, {(g, int(self._chosen[b, g]))}

    def _forward_meet(self, u, v) -> bool:
        """Do u and v (same layer) share a neighbour in the next layer?"""
        _, _, g1, n1 = self.spec.coords(u)
        _, _, g2, n2 = self.spec.coords(v)
        if g1 == 0 or g2 == 0:
            return True
        if g1 == g2:
            return n1 == n2
        return self.spec.k >= 3

    def oracle_distance(self, u, v) -> int:
        if u == v:
            return 0
        if self.oracle_adjacent(u, v):
            return 1
        lu, lv = u // self.spec.layer_size, v // self.spec.layer_size
        if lu == lv:
            if self._forward_meet(u, v):
                return 2
            hu, pu = self._backward(u)
            hv, pv = self._backward(v)
            return 2 if (hu and hv) or (pu & pv) else 3
        if (lv + 1) % 3 == lu:
            u, v = v, u
        # u in layer l, v in layer l+1: a common neighbour lies in layer l+2
        hubs, pairs = self._backward(u)
        _, _, gv, _ = self.spec.coords(v)
        if gv == 0 or hubs:
            return 2
        return 2 if any(g == gv for g, _ in pairs) else 3

    def blocks_containing(self, group, point):
        return list(self._blocks_with.get((group, point), []))


def build_layered(k: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> LayeredSpace:
    """Deterministic three-layer graph (hub plus k fringe groups of k-1 points per block)."""
    if k < 2:
        raise InvalidParameter("layered construction needs k >= 2")
    spec = LayeredSpec(k, 1, k - 1)
    if spec.vertex_count > vertex_cap:
        raise TooLarge(f"layered graph for k={k} has {spec.vertex_count} vertices (cap {vertex_cap})")
    materialize = spec.vertex_count <= APSP_LIMIT
    return LayeredSpace(spec, materialize, "layered", {"k": k})


def build_layered_random(k: int, N: int, materialize: bool | None = None,
                         vertex_cap: int = DEFAULT_VERTEX_CAP) -> LayeredSpace:
    """Randomized-bound graph: every group (hub and fringe) has N points."""
    if k < 2:
        raise InvalidParameter("layered construction needs k >= 2")
    if N < k:
        raise InvalidParameter(f"group size N={N} must be at least k={k}")
    if N * N < k * (k - 1):
        warnings.warn(f"N^2 = {N * N} < k(k-1) = {k * (k - 1)}; cost bounds do not apply")
    spec = LayeredSpec(k, N, N, randomized=True)
    if spec.vertex_count > vertex_cap:
        raise TooLarge(f"{spec.vertex_count} vertices exceed cap {vertex_cap}")
    if materialize is None:
        materialize = spec.vertex_count <= APSP_LIMIT
    return LayeredSpace(spec, materialize, "layered-random", {"k": k, "N": N})


# ---------------------------------------------------------------------------
# queries and validators
# ---------------------------------------------------------------------------

def _finite_points(m: MetricSpace):
    if isinstance(m, GraphSpace):
        return None
    if isinstance(m, LineSpace) and m.sample is not None:
        return m.sample
    raise Unsupported(f"{m.kind} space needs a declared finite point set")


def diameter(m: MetricSpace):
    if isinstance(m, LineSpace) and m.lo is not None and m.hi is not None and m.sample is None:
        return m.hi - m.lo
    pts = _finite_points(m)
    if pts is None:
        if isinstance(m, LayeredSpace) and not m.materialized:
            raise TooLarge("diameter of an oracle-only space is not enumerated")
        return int(m.matrix.max())
    return pts[-1] - pts[0] if pts else Fraction(0)


def aspect_ratio(m: MetricSpace) -> Fraction:
    """Diameter divided by the smallest distance between distinct points."""
    pts = _finite_points(m)
    if pts is None:
        if m.n < 2:
            raise Unsupported("aspect ratio needs at least two points")
        mat = m.matrix
        return Fraction(int(mat.max()), int(mat[mat > 0].min()))
    if len(pts) < 2:
        raise Unsupported("aspect ratio needs at least two points")
    gap = min(b - a for a, b in zip(pts, pts[1:]))
    return Fraction(pts[-1] - pts[0]) / gap


def check_metric_axioms(m: MetricSpace, triples: int = 1000, seed: int = 0, points=None) -> list:
    """Sample random triples and report any violated metric axiom."""
    rng = random.Random(seed)
    pts = list(points) if points is not None else list(m.points())
    bad = []
    for _ in range(triples):
        x, y, z = (rng.choice(pts) for _ in range(3))
        dxy, dyx, dxz, dyz = m.d(x, y), m.d(y, x), m.d(x, z), m.d(y, z)
        if m.d(x, x) != 0:
            bad.append(("identity", x))
        if dxy != dyx:
            bad.append(("symmetry", x, y))
        if x != y and dxy <= 0:
            bad.append(("positivity", x, y))
        if dxz > dxy + dyz:
            bad.append(("triangle", x, y, z))
    return bad


def expected_counts(space: GraphSpace):
    """Closed-form (|V|, |E|) for the named generators, or None if unknown."""
    p = space.params
    if space.kind == "clique":
        return p["n"], p["n"] * (p["n"] - 1) // 2
    if space.kind == "cycle":
        return p["n"], p["n"]
    if space.kind == "path":
        return p["n"], p["n"] - 1
    if space.kind == "double-cycle":
        return 12, 24
    if space.kind == "double-cycle-chain":
        k = p["k"]
        return 8 * k - 4, 29 * k // 2 - 5
    if space.kind == "layered":
        k = p["k"]
        return 3 * k * (k - 1) ** (k - 1) * (1 + k * (k - 1)), 3 * k ** 4 * (k - 1) ** (2 * k - 2)
    if space.kind == "layered-random":
        k, N = p["k"], p["N"]
        return 3 * k * (k + 1) * N ** k, LayeredSpec(k, N, N, True).edge_count
    return None


def check_layered_claims(space: GraphSpace, spec: LayeredSpec) -> list:
    """Exhaustively test the three block-adjacency properties on the stored edges.

    For every block b of layer l:
      (i)   a vertex of layer l-1 touches fringe points of at most one group of b;
      (ii)  a fringe point of layer l+1 touches at most one fringe point of b;
      (iii) a hub point of layer l+1 touches exactly one point in each of exactly
            k-1 fringe groups of b (and none of the remaining group).
    Returns a list of violation descriptions (empty when all hold).
    """
    k = spec.k
    coords = [spec.coords(v) for v in range(space.n)]
    layers = [[v for v in range(space.n) if coords[v][0] == layer] for layer in range(3)]
    problems = []
    for layer in range(3):
        prev_layer, next_layer = layers[(layer - 1) % 3], layers[(layer + 1) % 3]
        for b in range(spec.blocks):
            def touches(u):
                counts = [0] * (k + 1)
                for w in space.adj[u]:
                    lw, bw, gw, _ = coords[w]
                    if lw == layer and bw == b and gw > 0:
                        counts[gw] += 1
                return counts[1:]

            for u in prev_layer:
                groups = sum(1 for c in touches(u) if c)
                if groups > 1:
                    problems.append(f"(i) {space.name(u)} touches {groups} groups of block {b + 1} in layer {layer + 1}")
            for u in next_layer:
                counts = touches(u)
                if coords[u][2] > 0:
                    if sum(counts) > 1:
                        problems.append(f"(ii) {space.name(u)} touches {sum(counts)} fringe points of block {b + 1}")
                elif sorted(counts) != [0] + [1] * (k - 1):
                    problems.append(f"(iii) {space.name(u)} has group counts {counts} in block {b + 1}")
    return problems


# ---------------------------------------------------------------------------
# JSON import/export
# ---------------------------------------------------------------------------

def to_json(space: GraphSpace) -> dict:
    """Graph document: kind, params, vertex names and index-pair edges."""
    if not isinstance(space, GraphSpace):
        raise Unsupported("only graph spaces can be exported")
    return {
        "kind": space.kind,
        "params": space.params,
        "vertices": list(space.names),
        "edges": [[u, v] for u, v in space.edges],
    }


def from_json(doc: dict) -> GraphSpace:
    try:
        names = doc["vertices"]
        edges = doc["edges"]
    except (KeyError, TypeError):
        raise InvalidParameter("graph document needs 'vertices' and 'edges'") from None
    kind = doc.get("kind", "graph")
    params = doc.get("params", {})
    if kind == "cycle":
        space = CycleSpace(len(names))
        if sorted(map(tuple, map(sorted, edges))) != space.edges:
            raise InvalidParameter("cycle document has non-cycle edges")
        return space
    index = {nm: i for i, nm in enumerate(names)}
    pairs = [(index.get(u, u), index.get(v, v)) for u, v in edges]
    return GraphSpace(len(names), pairs, names=names, kind=kind, params=params)


GENERATORS = {
    "clique": lambda p: build_clique(int(p["n"])),
    "path": lambda p: build_path(int(p["n"])),
    "cycle": lambda p: build_cycle(int(p["n"])),
    "double-cycle": lambda p: build_double_cycle(),
    "double-cycle-chain": lambda p: build_double_cycle_chain(int(p["k"])),
    "layered": lambda p: build_layered(int(p["k"])),
    "layered-random": lambda p: build_layered_random(int(p["k"]), int(p["N"]), materialize=True),
}


def generate(name: str, params: dict) -> GraphSpace:
    try:
        gen = GENERATORS[name]
    except KeyError:
        raise InvalidParameter(f"unknown space {name!r}; choose from {sorted(GENERATORS)}") from None
    try:
        return gen(params)
    except KeyError as exc:
        raise InvalidParameter(f"space {name!r} needs parameter {exc.args[0]!r}") from None


def spec_for(space: GraphSpace):
    """Rebuild the layered spec from a space's kind and params (None for other kinds)."""
    if space.kind == "layered":
        k = int(space.params["k"])
        return LayeredSpec(k, 1, k - 1)
    if space.kind == "layered-random":
        k, N = int(space.params["k"]), int(space.params["N"])
        return LayeredSpec(k, N, N, randomized=True)
    return None


def is_integral(x) -> bool:
    return Fraction(x).denominator == 1


def isqrt_ceil(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r == x else r + 1
