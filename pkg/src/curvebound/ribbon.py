"""Even ribbon graphs and the curve systems they determine.

A graph is a disjoint union of stars glued along a fixed-point-free
pairing of the star endpoints.  Vertex j carries 2 * n_j endpoints named
a_{i,j} and a'_{i,j} (i = 1..n_j); the switch map mu exchanges the two
ends of each strand, the pairing sigma glues ends of different strands.
Going straight at every vertex, closed curves are the cycles of mu o sigma.

Endpoints are serialized as integers: with offset_j the prefix sum of the
strand counts, a_{i,j} has id 2*(offset_j + i - 1) and a'_{i,j} has id
2*(offset_j + i - 1) + 1.  The counterclockwise order of endpoints around
vertex j is a_{1,j}, ..., a_{n_j,j}, a'_{1,j}, ..., a'_{n_j,j}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DuplicateEndpoint,
    FixedPointInPairing,
    InvalidGluing,
    InvalidParameter,
    InvalidTree,
    UnpairedEndpoint,
)


class EvenRibbonGraph:
    """Union of stars S(n_1), ..., S(n_k) glued by a pairing of endpoints."""

    __slots__ = ("strand_counts", "sigma", "offsets", "_vertex_of",
                 "edges", "edge_of_dart")

    def __init__(self, strand_counts, pairing):
        strand_counts = tuple(int(n) for n in strand_counts)
        if not strand_counts or any(n < 1 for n in strand_counts):
            raise InvalidParameter(
                f"strand counts must be positive integers: {strand_counts}"
            )
        self.strand_counts = strand_counts
        offsets = [0]
        for n in strand_counts:
            offsets.append(offsets[-1] + n)
        self.offsets = tuple(offsets)
        m = 2 * offsets[-1]

        sigma = [-1] * m
        for pair in pairing:
            if len(pair) != 2:
                raise InvalidParameter(f"pairs must have two endpoints: {pair}")
            x, y = int(pair[0]), int(pair[1])
            for e in (x, y):
                if not 0 <= e < m:
                    raise InvalidParameter(f"endpoint id {e} out of range 0..{m - 1}")
            if x == y:
                raise FixedPointInPairing(f"endpoint {x} paired with itself")
            if sigma[x] != -1:
                raise DuplicateEndpoint(f"endpoint {x} paired twice")
            if sigma[y] != -1:
                raise DuplicateEndpoint(f"endpoint {y} paired twice")
            sigma[x], sigma[y] = y, x
        missing = [e for e in range(m) if sigma[e] == -1]
        if missing:
            raise UnpairedEndpoint(
                f"endpoints missing from the pairing: {missing}"
            )
        self.sigma = tuple(sigma)

        vertex_of = []
        for j, n in enumerate(strand_counts):
            vertex_of.extend([j] * (2 * n))
        self._vertex_of = tuple(vertex_of)

        edges = []
        edge_of_dart = [-1] * m
        for x in range(m):
            if x < sigma[x]:
                edge_of_dart[x] = edge_of_dart[sigma[x]] = len(edges)
                edges.append((x, sigma[x]))
        self.edges = tuple(edges)
        self.edge_of_dart = tuple(edge_of_dart)

    # -- elementary structure ------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.strand_counts)

    @property
    def num_edges(self) -> int:
        return self.offsets[-1]

    @property
    def num_endpoints(self) -> int:
        return 2 * self.offsets[-1]

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges

    def mu(self, dart: int) -> int:
        """Switch map: the opposite end of the same strand."""
        return dart ^ 1

    def vertex_of(self, dart: int) -> int:
        return self._vertex_of[dart]

    def vertex_order(self, j: int) -> list[int]:
        """Counterclockwise endpoint order around vertex j."""
        lo, n = 2 * self.offsets[j], self.strand_counts[j]
        return [lo + 2 * i for i in range(n)] + [lo + 2 * i + 1 for i in range(n)]

    def next_at_vertex(self, dart: int) -> int:
        """The endpoint following `dart` counterclockwise at its vertex."""
        order = self.vertex_order(self._vertex_of[dart])
        return order[(order.index(dart) + 1) % len(order)]

    def endpoint_label(self, dart: int) -> str:
        j = self._vertex_of[dart]
        i = (dart // 2) - self.offsets[j] + 1
        prime = "'" if dart % 2 else ""
        return f"a{prime}_{{{i},{j + 1}}}"

    def connected_components(self) -> list[set[int]]:
        seen, comps = set(), []
        for start in range(self.num_vertices):
            if start in seen:
                continue
            comp, stack = set(), [start]
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                for d in self.vertex_order(v):
                    stack.append(self._vertex_of[self.sigma[d]])
            seen |= comp
            comps.append(comp)
        return comps

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "strands": list(self.strand_counts),
            "pairs": sorted([x, y] for x, y in self.edges),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvenRibbonGraph":
        return cls(data["strands"], data["pairs"])

    def __repr__(self):
        return (f"EvenRibbonGraph(strands={self.strand_counts}, "
                f"V={self.num_vertices}, E={self.num_edges})")


def build_graph(strand_counts, pairing) -> EvenRibbonGraph:
    """Validate and build an even ribbon graph from strand counts and pairs."""
    return EvenRibbonGraph(strand_counts, pairing)


def endpoint_id(graph: EvenRibbonGraph, i: int, j: int, primed: bool) -> int:
    """Integer id of a_{i,j} (or a'_{i,j}), with 1-based i and j."""
    if not 1 <= j <= graph.num_vertices:
        raise InvalidParameter(f"vertex index {j} out of range")
    if not 1 <= i <= graph.strand_counts[j - 1]:
        raise InvalidParameter(f"strand index {i} out of range at vertex {j}")
    return 2 * (graph.offsets[j - 1] + i - 1) + (1 if primed else 0)


# ----------------------------------------------------------------------
# catalog graphs

def loop_graph() -> EvenRibbonGraph:
    """Single strand glued to itself: an embedded circle (spine of an annulus)."""
    return EvenRibbonGraph((1,), [(0, 1)])


def figure_eight_graph() -> EvenRibbonGraph:
    """One 4-valent vertex, pairing a_1 <-> a'_2 and a_2 <-> a'_1.

    The single curve going straight is the figure eight on a three-holed
    sphere, with one self-intersection.
    """
    return EvenRibbonGraph((2,), [(0, 3), (2, 1)])


def torus_spine_graph() -> EvenRibbonGraph:
    """One 4-valent vertex, each strand closed onto itself.

    The two simple curves cross once: the standard spine of a one-holed torus.
    """
    return EvenRibbonGraph((2,), [(0, 1), (2, 3)])


def tau_graph(k: int) -> EvenRibbonGraph:
    """The chain of k trivalent-star vertices with the cyclic pairing

        a_{2,j} <-> a'_{1,j},  a_{3,j} <-> a'_{2,j},  a_{1,j} <-> a'_{3,j+1}

    (second index mod k).  One closed curve with 3k self-intersections.
    """
    if k < 1:
        raise InvalidParameter(f"tau graph needs k >= 1, got {k}")
    pairs = []
    for j in range(k):
        base = 6 * j
        pairs.append((base + 2, base + 1))       # a_{2,j} <-> a'_{1,j}
        pairs.append((base + 4, base + 3))       # a_{3,j} <-> a'_{2,j}
        nxt = 6 * ((j + 1) % k)
        pairs.append((base + 0, nxt + 5))        # a_{1,j} <-> a'_{3,j+1}
    return EvenRibbonGraph((3,) * k, pairs)


# ----------------------------------------------------------------------
# curves

@dataclass(frozen=True)
class CombinatorialCurve:
    """One closed curve: the cyclic sequence of departing endpoints.

    Step semantics: from endpoint x, cross the edge to sigma(x), go
    straight through that vertex and depart from mu(sigma(x)).  The curve
    and its reverse traversal are identified; the stored cycle is the
    canonical representative (contains the smallest endpoint id of its
    traversal class and starts there).
    """

    visits: tuple[int, ...]

    def __len__(self):
        return len(self.visits)

    def vertex_passages(self, graph: EvenRibbonGraph) -> tuple[int, ...]:
        return tuple(graph.vertex_of(graph.sigma[x]) for x in self.visits)


def _cycles(perm) -> list[list[int]]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc, x = [], start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        cycles.append(cyc)
    return cycles


def extract_curves(graph: EvenRibbonGraph) -> list[CombinatorialCurve]:
    """Cycle decomposition of mu o sigma, one curve per traversal class."""
    m = graph.num_endpoints
    step = [graph.mu(graph.sigma[x]) for x in range(m)]
    cycles = _cycles(step)
    cycle_of = {}
    for idx, cyc in enumerate(cycles):
        for x in cyc:
            cycle_of[x] = idx

    curves, used = [], set()
    for idx, cyc in enumerate(cycles):
        if idx in used:
            continue
        partner = cycle_of[graph.sigma[cyc[0]]]
        used.add(idx)
        used.add(partner)
        rep = cyc if partner == idx else min(
            (cycles[idx], cycles[partner]), key=min)
        k = rep.index(min(rep))
        curves.append(CombinatorialCurve(tuple(rep[k:] + rep[:k])))
    curves.sort(key=lambda c: c.visits[0])
    return curves


def combinatorial_self_intersection(graph: EvenRibbonGraph) -> int:
    """Total self-intersection of the curve system: sum of C(n_j, 2)."""
    return sum(n * (n - 1) // 2 for n in graph.strand_counts)


# ----------------------------------------------------------------------
# boundary walks and the associated surface

@dataclass(frozen=True)
class BoundaryWalk:
    """One face traversal: the cyclic sequence of edge sides (darts)."""

    darts: tuple[int, ...]

    @property
    def side_count(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class SurfaceInvariants:
    euler_characteristic: int
    genus: int
    boundary_count: int
    components: int


def boundary_walks(graph: EvenRibbonGraph):
    """Face decomposition of the thickened graph and surface invariants.

    Faces are the orbits of (next-at-vertex) o sigma on darts; every dart
    belongs to exactly one walk and the side counts add to 2E.
    """
    m = graph.num_endpoints
    phi = [graph.next_at_vertex(graph.sigma[x]) for x in range(m)]
    walks = [BoundaryWalk(tuple(cyc)) for cyc in _cycles(phi)]
    chi = graph.euler_characteristic
    b = len(walks)
    comps = len(graph.connected_components())
    genus2 = 2 * comps - chi - b
    if genus2 < 0 or genus2 % 2:
        raise InvalidParameter(
            f"inconsistent surface invariants: chi={chi}, walks={b}"
        )
    return walks, SurfaceInvariants(chi, genus2 // 2, b, comps)


@dataclass(frozen=True)
class GluingSpec:
    """Indices of boundary walks to be capped with disks."""

    capped: tuple[int, ...]

    def __init__(self, capped):
        object.__setattr__(self, "capped", tuple(int(i) for i in capped))


@dataclass(frozen=True)
class FaceReport:
    """Side counts of capped faces and the small-face flags."""

    capped_side_counts: tuple[int, ...]
    has_monogon: bool
    has_bigon: bool
    has_triangle: bool

    @property
    def passed(self) -> bool:
        return not (self.has_monogon or self.has_bigon or self.has_triangle)


def check_gluing(graph: EvenRibbonGraph, spec: GluingSpec) -> FaceReport:
    """Flag monogons, bigons and triangles among the capped faces.

    Uncapped walks stay boundary and can never bound a disk, so only the
    capped ones are inspected; the gluing is admissible for minimal
    position and separation when no capped face has at most three sides.
    """
    walks, _ = boundary_walks(graph)
    if len(set(spec.capped)) != len(spec.capped):
        raise InvalidGluing(f"repeated walk index in {spec.capped}")
    for i in spec.capped:
        if not 0 <= i < len(walks):
            raise InvalidGluing(
                f"walk index {i} out of range 0..{len(walks) - 1}"
            )
    sides = tuple(walks[i].side_count for i in spec.capped)
    return FaceReport(
        capped_side_counts=sides,
        has_monogon=any(s == 1 for s in sides),
        has_bigon=any(s == 2 for s in sides),
        has_triangle=any(s == 3 for s in sides),
    )


# ----------------------------------------------------------------------
# words in the free generators of the spine

def spanning_tree(graph: EvenRibbonGraph) -> tuple[int, ...]:
    """Edge indices of a breadth-first spanning tree (graph must be connected)."""
    comps = graph.connected_components()
    if len(comps) != 1:
        raise InvalidTree("graph is not connected: no spanning tree")
    parent_edge = {0: None}
    tree, frontier = [], [0]
    while frontier:
        nxt = []
        for v in frontier:
            for d in graph.vertex_order(v):
                w = graph.vertex_of(graph.sigma[d])
                if w not in parent_edge:
                    parent_edge[w] = graph.edge_of_dart[d]
                    tree.append(graph.edge_of_dart[d])
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted(tree))


def _check_spanning_tree(graph: EvenRibbonGraph, tree_edges) -> tuple[int, ...]:
    tree = tuple(sorted(set(int(e) for e in tree_edges)))
    for e in tree:
        if not 0 <= e < graph.num_edges:
            raise InvalidTree(f"edge index {e} out of range")
    if len(tree) != graph.num_vertices - 1:
        raise InvalidTree(
            f"a spanning tree has V-1={graph.num_vertices - 1} edges, "
            f"got {len(tree)}"
        )
    # connectivity over tree edges only
    adj = {v: [] for v in range(graph.num_vertices)}
    for e in tree:
        x, y = graph.edges[e]
        adj[graph.vertex_of(x)].append(graph.vertex_of(y))
        adj[graph.vertex_of(y)].append(graph.vertex_of(x))
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != graph.num_vertices:
        raise InvalidTree("edge set does not connect all vertices")
    return tree


def cyclically_reduce(word: tuple[int, ...]) -> tuple[int, ...]:
    """Free and cyclic reduction of a word (letters are nonzero ints)."""
    out = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return tuple(out)


def curve_words(graph: EvenRibbonGraph, tree_edges=None):
    """Render each curve as a cyclically reduced word in the free generators.

    Generators correspond to non-tree edges (in increasing edge order),
    signed by traversal direction; collapsing the tree realizes the
    isomorphism with the free group of rank E - V + 1.
    """
    if tree_edges is None:
        tree_edges = spanning_tree(graph)
    tree = _check_spanning_tree(graph, tree_edges)
    non_tree = [e for e in range(graph.num_edges) if e not in tree]
    gen_of_edge = {e: i + 1 for i, e in enumerate(non_tree)}

    words = []
    for curve in extract_curves(graph):
        letters = []
        for x in curve.visits:
            e = graph.edge_of_dart[x]
            if e in gen_of_edge:
                sign = 1 if x == graph.edges[e][0] else -1
                letters.append(sign * gen_of_edge[e])
        words.append(cyclically_reduce(tuple(letters)))
    return words


def dart_sign(graph: EvenRibbonGraph, dart: int) -> int:
    """+1 when the dart is the reference (smaller) end of its edge."""
    return 1 if dart == graph.edges[graph.edge_of_dart[dart]][0] else -1
