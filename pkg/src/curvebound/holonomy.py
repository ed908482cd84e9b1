"""Hyperbolic structures on the surface of a ribbon spine, via shear
coordinates on the ideal triangulation dual to a trivalent refinement.

Each vertex of valence 2n >= 4 is blown up into a planar caterpillar of
2n - 2 trivalent vertices respecting the cyclic order; the dual of the
refined spine is an ideal triangulation with one edge per spine edge and
one triangle per trivalent vertex.  A real number per edge (the shear)
determines a complete hyperbolic structure on the punctured surface, and
every real vector is admissible, so no discreteness search is ever needed.

Holonomy along a based loop multiplies an edge-crossing matrix

    E(x) = [[0, exp(x/2)], [-exp(-x/2), 0]]

per spine edge crossed and a corner-turn matrix L = [[1, 1], [-1, 0]]
(one counterclockwise step; L^3 = -I) per turn inside a triangle.  With
all shears zero the one-holed-torus spine yields generator traces 3 and
commutator trace -2: the modular punctured torus.

The rank-one spine (a lone embedded circle) has no ideal triangulation;
its annulus gets the one-parameter family of representations
``generator -> diag(exp(x/2), exp(-x/2))`` instead.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import TOL
from .errors import (
    DegenerateStructure,
    DimensionMismatch,
    EmptyWord,
    InvalidParameter,
    NotHyperbolic,
    ParabolicCurve,
)
from .geometry import Isometry, classify_isometry, translation_length
from .ribbon import (
    EvenRibbonGraph,
    boundary_walks,
    curve_words,
    cyclically_reduce,
    spanning_tree,
)

_L = np.array([[1.0, 1.0], [-1.0, 0.0]])
_TURN = (np.eye(2), _L, _L @ _L)


def _edge_cross(x: float) -> np.ndarray:
    h = math.exp(0.5 * x)
    return np.array([[0.0, h], [-1.0 / h, 0.0]])


class Spine:
    """Trivalent refinement of an even ribbon graph, with word bookkeeping.

    The refinement keeps the original darts (and edge indices 0..E-1) and
    appends one internal edge per caterpillar joint.  The refined spanning
    tree is the original tree plus all internal edges, so the free
    generators, and hence the curve words of ``ribbon.curve_words``, are
    unchanged.
    """

    def __init__(self, graph: EvenRibbonGraph, tree_edges=None):
        if len(graph.connected_components()) != 1:
            raise InvalidParameter("holonomy needs a connected spine")
        self.graph = graph
        self.tree_edges = tuple(sorted(
            spanning_tree(graph) if tree_edges is None else tree_edges))
        self.rank = graph.num_edges - graph.num_vertices + 1

        self.is_annulus = all(n == 1 for n in graph.strand_counts)
        if self.is_annulus:
            self.shear_dim = 1
            self.generator_edges = tuple(
                e for e in range(graph.num_edges) if e not in self.tree_edges)
            return
        if any(n == 1 for n in graph.strand_counts):
            raise InvalidParameter(
                "2-valent vertices are supported only for the pure loop spine")

        m = graph.num_endpoints
        r_vertex_of = [-1] * m
        r_orders: list[list[int]] = []
        r_sigma = list(graph.sigma) + []
        next_dart = m
        internal_edges: list[tuple[int, int]] = []

        for j in range(graph.num_vertices):
            darts = graph.vertex_order(j)
            joints = len(darts) - 2
            verts = [len(r_orders) + t for t in range(joints)]
            chain: list[int] = []
            for _ in range(joints - 1):
                d1, d2 = next_dart, next_dart + 1
                next_dart += 2
                r_sigma += [d2, d1]
                r_vertex_of += [-1, -1]
                internal_edges.append((d1, d2))
                chain.append(d1)
            for t, v in enumerate(verts):
                if t == 0:
                    order = [darts[0], darts[1], chain[0]]
                elif t == joints - 1:
                    order = [r_sigma[chain[t - 1]], darts[-2], darts[-1]]
                else:
                    order = [r_sigma[chain[t - 1]], darts[t + 1], chain[t]]
                r_orders.append(order)
                for d in order:
                    r_vertex_of[d] = v

        self.r_sigma = tuple(r_sigma)
        self.r_vertex_of = tuple(r_vertex_of)
        self.r_orders = [tuple(o) for o in r_orders]

        edge_of_dart = [-1] * next_dart
        for d in range(m):
            edge_of_dart[d] = graph.edge_of_dart[d]
        for i, (d1, d2) in enumerate(internal_edges):
            edge_of_dart[d1] = edge_of_dart[d2] = graph.num_edges + i
        self.edge_of_dart = tuple(edge_of_dart)
        self.shear_dim = graph.num_edges + len(internal_edges)

        tree_redges = set(self.tree_edges) | set(
            range(graph.num_edges, self.shear_dim))
        self.generator_edges = tuple(
            e for e in range(graph.num_edges) if e not in self.tree_edges)

        # breadth-first parents over the refined tree, rooted at vertex 0
        parent_dart = {0: None}
        frontier = [0]
        while frontier:
            nxt = []
            for v in frontier:
                for d in self.r_orders[v]:
                    if edge_of_dart[d] not in tree_redges:
                        continue
                    w = self.r_vertex_of[self.r_sigma[d]]
                    if w not in parent_dart:
                        parent_dart[w] = self.r_sigma[d]  # dart from w toward v
                        nxt.append(w)
            frontier = nxt
        if len(parent_dart) != len(self.r_orders):
            raise InvalidParameter("refined tree failed to span: internal bug")
        self._parent_dart = parent_dart
        self.base_vertex = 0
        self.ref_dart = self.r_orders[0][0]

    # -- paths -----------------------------------------------------------

    def _path_to_root(self, v: int) -> list[int]:
        """Darts walked from vertex v up to the base vertex."""
        path = []
        while self._parent_dart[v] is not None:
            d = self._parent_dart[v]
            path.append(d)
            v = self.r_vertex_of[self.r_sigma[d]]
        return path

    def generator_loop(self, gen_index: int) -> list[int]:
        """Based loop (as a dart path) crossing the given non-tree edge."""
        e = self.generator_edges[gen_index]
        x, y = self.graph.edges[e]
        down = self._path_to_root(self.r_vertex_of[x])
        up = self._path_to_root(self.r_vertex_of[y])
        return [self.r_sigma[d] for d in reversed(down)] + [x] + up

    def curve_words(self):
        return curve_words(self.graph, self.tree_edges)

    def face_words(self):
        """Boundary-walk words in the same generators as the curve words."""
        gen_of_edge = {e: i + 1 for i, e in enumerate(self.generator_edges)}
        walks, _ = boundary_walks(self.graph)
        words = []
        for walk in walks:
            letters = []
            for d in walk.darts:
                e = self.graph.edge_of_dart[d]
                if e in gen_of_edge:
                    sign = 1 if d == self.graph.edges[e][0] else -1
                    letters.append(sign * gen_of_edge[e])
            words.append(cyclically_reduce(tuple(letters)))
        return words

    # -- holonomy ----------------------------------------------------------

    def _loop_matrix(self, path, shear) -> np.ndarray:
        """Product of elementary moves along a based loop (first move
        rightmost); the inverse of this product composes homomorphically."""
        mat = np.eye(2)
        facing = self.ref_dart
        for d in path:
            v = self.r_vertex_of[d]
            if v != self.r_vertex_of[facing]:
                raise InvalidParameter("dart path is not continuous")
            order = self.r_orders[v]
            k = (order.index(d) - order.index(facing)) % 3
            mat = _TURN[k] @ mat
            mat = _edge_cross(shear[self.edge_of_dart[d]]) @ mat
            facing = self.r_sigma[d]
        order = self.r_orders[self.base_vertex]
        k = (order.index(self.ref_dart) - order.index(facing)) % 3
        return _TURN[k] @ mat


@dataclass
class SanityReport:
    depth: int
    words_checked: int
    elliptic_words: tuple
    min_translation_length: float | None


class Representation:
    """Map from free generators to isometries; a point of Teichmueller space."""

    def __init__(self, generators, spine: Spine | None = None, shear=None):
        self.generators = tuple(Isometry(np.asarray(g, dtype=float))
                                if not isinstance(g, Isometry) else g
                                for g in generators)
        self.spine = spine
        self.shear = None if shear is None else tuple(float(x) for x in shear)
        self._cache: dict[tuple[int, ...], Isometry] = {}

    @property
    def rank(self) -> int:
        return len(self.generators)

    def evaluate(self, word) -> Isometry:
        word = tuple(int(x) for x in word)
        if not word:
            raise EmptyWord("cannot evaluate the empty word")
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        mat = np.eye(2)
        for letter in word:
            if letter == 0 or abs(letter) > self.rank:
                raise InvalidParameter(f"letter {letter} out of range")
            g = self.generators[abs(letter) - 1]
            mat = mat @ (g.m if letter > 0 else g.inverse().m)
        if not np.isfinite(mat).all():
            raise InvalidParameter(
                f"word of length {len(word)} overflows double precision")
        # the true determinant is exactly one; the computed one suffers
        # catastrophic cancellation for large products, in which case
        # renormalizing would corrupt the (still accurate) trace
        det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
        if abs(det - 1.0) < 1e-6:
            result = Isometry(mat)
        else:
            result = Isometry.trusted(mat)
        self._cache[word] = result
        return result

    def trace(self, word) -> float:
        return self.evaluate(word).trace


def build_rep(spine: Spine, shear) -> Representation:
    """Representation of the spine's fundamental group at a shear vector.

    Raises DegenerateStructure when a boundary word evaluates elliptic,
    which would mean the construction itself is broken.
    """
    shear = [float(x) for x in shear]
    if len(shear) != spine.shear_dim:
        raise DimensionMismatch(
            f"expected {spine.shear_dim} shear coordinates, got {len(shear)}")
    if spine.is_annulus:
        h = math.exp(0.5 * shear[0])
        gens = [np.array([[h, 0.0], [0.0, 1.0 / h]])]
        if abs(shear[0]) <= TOL:
            gens = [np.array([[1.0, 1.0], [0.0, 1.0]])]  # pinched: a cusp
        rep = Representation(gens, spine=spine, shear=shear)
    else:
        gens = []
        for i in range(len(spine.generator_edges)):
            hol = spine._loop_matrix(spine.generator_loop(i), shear)
            inv = np.array([[hol[1, 1], -hol[0, 1]], [-hol[1, 0], hol[0, 0]]])
            gens.append(inv)
        rep = Representation(gens, spine=spine, shear=shear)
    for word in spine.face_words() if not spine.is_annulus else [(1,)]:
        if word and classify_isometry(rep.evaluate(word)) == "elliptic":
            raise DegenerateStructure(
                f"face word {word} evaluated elliptic: construction bug")
    return rep


def curve_length(rep: Representation, word) -> float:
    """Geodesic length of the curve's free homotopy class at this point.

    Parabolic words are cusp-parallel: reported as ParabolicCurve, never
    silently as zero.
    """
    word = cyclically_reduce(tuple(int(x) for x in word))
    if not word:
        raise EmptyWord("curve words must be nonempty and cyclically reduced")
    iso = rep.evaluate(word)
    kind = classify_isometry(iso)
    if kind == "parabolic":
        raise ParabolicCurve(f"word {word} is parabolic (cusp): length 0")
    if kind == "elliptic":
        raise NotHyperbolic(f"word {word} evaluated elliptic")
    return translation_length(iso)


def system_length(rep: Representation, words, parabolic_zero=False) -> float:
    """Total length of a curve system: the sum over its members."""
    total = 0.0
    for w in words:
        try:
            total += curve_length(rep, w)
        except ParabolicCurve:
            if not parabolic_zero:
                raise
    return total


def reduced_words(rank: int, max_length: int, cyclic=True):
    """All nontrivial (cyclically) reduced words up to the given length."""
    letters = [i for i in range(-rank, rank + 1) if i != 0]
    for length in range(1, max_length + 1):
        for first in letters:
            stack = [(first,)]
            while stack:
                w = stack.pop()
                if len(w) == length:
                    if not cyclic or len(w) == 1 or w[0] != -w[-1]:
                        yield w
                    continue
                for nxt in letters:
                    if nxt != -w[-1]:
                        stack.append(w + (nxt,))


def discreteness_sanity(rep: Representation, depth: int) -> SanityReport:
    """Scan short words for elliptic images, a red flag for discreteness.

    Depth below one is clamped to one.
    """
    depth = max(1, int(depth))
    elliptic = []
    min_len = None
    count = 0
    for word in reduced_words(rep.rank, depth):
        count += 1
        kind = classify_isometry(rep.evaluate(word))
        if kind == "elliptic":
            elliptic.append(word)
        elif kind == "hyperbolic":
            ell = translation_length(rep.evaluate(word))
            if min_len is None or ell < min_len:
                min_len = ell
    return SanityReport(
        depth=depth,
        words_checked=count,
        elliptic_words=tuple(elliptic),
        min_translation_length=min_len,
    )


# ----------------------------------------------------------------------
# curve systems

@dataclass
class CurveSystem:
    """A spine together with the words of the curves it carries."""

    graph: EvenRibbonGraph
    spine: Spine
    words: tuple[tuple[int, ...], ...]

    @classmethod
    def from_graph(cls, graph: EvenRibbonGraph, tree_edges=None) -> "CurveSystem":
        spine = Spine(graph, tree_edges)
        return cls(graph=graph, spine=spine,
                   words=tuple(spine.curve_words()))

    @classmethod
    def from_words(cls, graph: EvenRibbonGraph, words,
                   tree_edges=None) -> "CurveSystem":
        spine = Spine(graph, tree_edges)
        return cls(graph=graph, spine=spine,
                   words=tuple(cyclically_reduce(tuple(w)) for w in words))

    def representation(self, shear) -> Representation:
        return build_rep(self.spine, shear)

    def total_length(self, shear, parabolic_zero=False) -> float:
        return system_length(self.representation(shear), self.words,
                             parabolic_zero=parabolic_zero)
