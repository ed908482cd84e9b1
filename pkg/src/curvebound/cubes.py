"""Truncated Sageev construction for a curve system at a point of
Teichmueller space.

Lifts of the curve with word w are axes of conjugates u w u^{-1}, and two
conjugators give the same lift exactly when they lie in one coset of the
cyclic group generated by the root of w.  All identity decisions are
therefore made in the free group: lifts are deduplicated by canonical
coset representatives, orbits of linked pairs are counted as double
cosets, and orbit classes of cubes compare canonical anchored word data.
Floating point would be hopeless for this: lifts crossing a base axis
half a period out already have endpoint gaps of order exp(-len/2).

The conjugators enumerated are all products b * s of a ball of reduced
words of length <= radius with the passage seeds p q^{-1}, p and q
ranging over prefixes of the curve words: every lift crossing a base
axis is a power translate of a seed conjugate, so the seeds expose one
representative of each crossing orbit and of each cube orbit, while a
plain ball would need a radius comparable to the word length.

Linking is geometric but is always evaluated in an anchored frame: the
pair (u A, u' A') is translated by u^{-1} and the residual word stripped
of leading powers of the stabilizer, which keeps the interleaving test
far from the crowded region.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .constants import DEFAULT_RADIUS, MAX_CONJUGATORS
from .errors import (
    CubeNotInLiftSet,
    DegenerateSeparator,
    NotPairwiseLinked,
    ParabolicCurve,
    ResourceLimit,
    SharedEndpoint,
)
from .geometry import (
    Geodesic,
    Isometry,
    OrientedAxis,
    axis,
    axis_chart,
    axis_parameter,
    classify_isometry,
    cube_configuration,
    diagonal_data,
    fixed_points_rp1,
    geodesics_intersect_point,
    rp1_to_angle,
    translation_length,
)
from .holonomy import Representation, cyclically_reduce, reduced_words

TWO_PI = 2.0 * np.pi


# ----------------------------------------------------------------------
# free group utilities

def reduce_word(word):
    out = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word):
    return tuple(-x for x in reversed(word))


def primitive_root(word):
    """Smallest cyclic period of a cyclically reduced word."""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[d:] + word[:d]:
            return word[:d]
    return word


def _shortlex_min(candidates):
    return min(candidates, key=lambda w: (len(w), w))


def _power_sweep(word, stab, attach):
    """Shortlex-minimal reduce(word stab^a) (or stab^a word) over all a.

    The length |stab^a word| is a convex function of a in a free group,
    so walking each direction until the length passes the running minimum
    by |stab| visits the whole minimizing plateau.
    """
    best = word
    for direction in (stab, invert_word(stab)):
        current = word
        while True:
            current = reduce_word(attach(current, direction))
            if len(current) <= len(best) + len(stab):
                best = _shortlex_min((best, current))
            if len(current) > len(best) + len(stab):
                break
    return best


def coset_canonical(word, stab):
    """Canonical representative of the right coset word * <stab>."""
    word = reduce_word(word)
    if not stab:
        return word
    return _power_sweep(word, stab, lambda w, s: w + s)


def strip_left(word, stab):
    """Canonical representative of the left coset <stab> * word."""
    word = reduce_word(word)
    if not stab:
        return word
    return _power_sweep(word, stab, lambda w, s: s + w)


def same_double_coset(u1, u2, left_stab, right_stab) -> bool:
    """Whether <left> u1 <right> = <left> u2 <right>, by a bounded sweep
    of left powers with right-coset canonicalization."""
    target = coset_canonical(u2, right_stab)
    bound = (len(u1) + len(u2)) // max(1, len(left_stab)) + 2
    for a in range(-bound, bound + 1):
        power = left_stab * a if a >= 0 else invert_word(left_stab) * (-a)
        if coset_canonical(reduce_word(power + u1), right_stab) == target:
            return True
    return False


# ----------------------------------------------------------------------
# lifts

@dataclass(frozen=True)
class Lift:
    """One lift: the axis of tag * word * tag^{-1}.

    The tag is the canonical representative of its coset modulo the
    stabilizer of the base axis.  The stored endpoint angles are exact
    only for lifts near the base region; identity and linking decisions
    never rely on them.
    """

    curve: int
    tag: tuple
    attracting: float
    repelling: float

    @property
    def axis(self) -> OrientedAxis:
        return OrientedAxis(self.attracting, self.repelling)


@dataclass(frozen=True)
class BaseCurve:
    """Base lift data of one curve."""

    word: tuple
    root: tuple
    iso: Isometry = field(compare=False, repr=False)
    ax: OrientedAxis = field(compare=False)
    chart: Isometry = field(compare=False, repr=False)
    length: float = 0.0


class LiftSet:
    """Deduplicated truncated orbit of lifts for a curve system."""

    def __init__(self, rep, words, radius, lifts, bases):
        self.rep: Representation = rep
        self.words = tuple(tuple(w) for w in words)
        self.radius = int(radius)
        self.lifts: tuple[Lift, ...] = tuple(lifts)
        self.bases: tuple[BaseCurve, ...] = tuple(bases)
        self.index_of = {(lf.curve, lf.tag): i for i, lf in enumerate(self.lifts)}
        self.base_indices = tuple(self.index_of[(c, ())]
                                  for c in range(len(self.bases)))
        self._linking = None
        self._charts: dict[int, Isometry] = {}
        self._fixed = {c: fixed_points_rp1(b.iso)
                       for c, b in enumerate(self.bases)}
        self._eval_cache: dict[tuple, np.ndarray] = {(): np.eye(2)}
        self._link_cache: dict[tuple, bool] = {}

    def __len__(self):
        return len(self.lifts)

    def chart_of(self, index: int) -> Isometry:
        chart = self._charts.get(index)
        if chart is None:
            chart = axis_chart(self.lifts[index].axis)
            self._charts[index] = chart
        return chart

    def _matrix(self, word) -> np.ndarray:
        """Word matrix up to scale: enough for the projective action on
        boundary points, and safe for words whose determinant is beyond
        double precision."""
        mat = self._eval_cache.get(word)
        if mat is None:
            mat = _projective_matrix(self.rep, word)
            self._eval_cache[word] = mat
        return mat

    def translated_axis_angles(self, word, curve) -> tuple[float, float]:
        """Endpoint angles of word * (base axis of curve)."""
        mat = self._matrix(word)
        att, rpl = self._fixed[curve]
        return rp1_to_angle(mat @ att), rp1_to_angle(mat @ rpl)

    def linked(self, i: int, j: int) -> bool:
        """Linking of two lifts, decided in the midpoint frame.

        The pair (u A, u' A') is translated by u^{-1}, the residual word
        is stripped of leading stabilizer powers and then split in half:
        each axis is moved by only half the word, which halves the
        exponential endpoint crowding and doubles the resolvable scale.
        """
        if i == j:
            return False
        li, lj = self.lifts[i], self.lifts[j]
        v = reduce_word(invert_word(li.tag) + lj.tag)
        if li.curve == lj.curve and not v:
            return False
        v = strip_left(v, self.bases[li.curve].root)
        key = (li.curve, lj.curve, v)
        hit = self._link_cache.get(key)
        if hit is not None:
            return hit
        half = len(v) // 2
        a1, a2 = self.translated_axis_angles(invert_word(v[:half]), li.curve)
        b1, b2 = self.translated_axis_angles(v[half:], lj.curve)
        result = _interleaved(a1, a2, b1, b2)
        self._link_cache[key] = result
        return result

    @property
    def linking(self) -> np.ndarray:
        if self._linking is None:
            n = len(self.lifts)
            link = np.zeros((n, n), dtype=bool)
            for i in range(n):
                for j in range(i + 1, n):
                    if self.linked(i, j):
                        link[i, j] = link[j, i] = True
            self._linking = link
        return self._linking

    def adjacency_sets(self):
        link = self.linking
        return [set(np.nonzero(link[i])[0].tolist()) for i in range(len(self))]


def _interleaved(a1, a2, b1, b2) -> bool:
    arc = (a2 - a1) % TWO_PI
    in1 = (b1 - a1) % TWO_PI < arc
    in2 = (b2 - a1) % TWO_PI < arc
    return in1 != in2


def _projective_matrix(rep: Representation, word) -> np.ndarray:
    """Product of generator matrices rescaled by the sup norm at each
    step: correct up to positive scale, immune to determinant loss."""
    mat = np.eye(2)
    for letter in word:
        g = rep.generators[abs(letter) - 1]
        mat = mat @ (g.m if letter > 0 else g.inverse().m)
        peak = np.abs(mat).max()
        if peak > 1.0:
            mat = mat / peak
    return mat


def enumerate_lifts(rep: Representation, words, radius: int = DEFAULT_RADIUS,
                    max_conjugators: int = MAX_CONJUGATORS) -> LiftSet:
    """Truncated orbit of lifts: ball-of-radius conjugators times passage seeds.

    Lifts are deduplicated exactly, by the canonical coset of the
    conjugator modulo the stabilizer of the base axis.
    """
    words = [cyclically_reduce(tuple(w)) for w in words]
    if radius < 0:
        raise ResourceLimit("radius must be nonnegative")

    bases = []
    for w in words:
        if not w:
            raise ParabolicCurve("empty curve word")
        iso = rep.evaluate(w)
        if classify_isometry(iso) != "hyperbolic":
            raise ParabolicCurve(f"curve word {w} is not hyperbolic here")
        ax = axis(iso)
        bases.append(BaseCurve(word=w, root=primitive_root(w), iso=iso, ax=ax,
                               chart=axis_chart(ax),
                               length=translation_length(iso)))

    prefixes = {()}
    for w in words:
        for t in range(1, len(w)):
            prefixes.add(tuple(w[:t]))
    seeds = {reduce_word(p + invert_word(q)) for p in prefixes for q in prefixes}

    ball = [()]
    if radius > 0:
        ball += list(reduced_words(rep.rank, radius, cyclic=False))
    if len(ball) * len(seeds) > max_conjugators:
        raise ResourceLimit(
            f"{len(ball)} x {len(seeds)} conjugators exceed the cap "
            f"{max_conjugators}; lower the radius")
    conjugators = {reduce_word(b + s) for b in ball for s in seeds}

    lifts = []
    seen = set()
    for g in sorted(conjugators, key=lambda w: (len(w), w)):
        for c in range(len(words)):
            tag = coset_canonical(g, bases[c].root)
            key = (c, tag)
            if key in seen:
                continue
            seen.add(key)
            mat = _projective_matrix(rep, tag)
            att, rpl = fixed_points_rp1(bases[c].iso)
            a1 = rp1_to_angle(mat @ att)
            a2 = rp1_to_angle(mat @ rpl)
            lifts.append(Lift(curve=c, tag=tag, attracting=a1, repelling=a2))

    lifts.sort(key=lambda lf: (lf.curve, len(lf.tag), lf.tag))
    return LiftSet(rep, words, radius, lifts, bases)


# ----------------------------------------------------------------------
# maximal cubes

@dataclass(frozen=True)
class Cube:
    """A set of pairwise-linked lifts; dimension is the cardinality."""

    lifts: tuple[int, ...]
    maximal: bool = True
    orbit_class: int = -1

    @property
    def dimension(self) -> int:
        return len(self.lifts)


def _bron_kerbosch_pivot(adj):
    """All maximal cliques of the graph given by adjacency sets."""
    cliques = []

    def expand(r, p, x):
        if not p and not x:
            cliques.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda v: len(adj[v] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    expand(set(), set(range(len(adj))), set())
    return sorted(cliques)


def _cube_canonical_key(ls: LiftSet, clique) -> tuple:
    """Orbit invariant of a cube: anchored canonical word data.

    For each lift of the cube used as anchor, translate every lift by the
    anchor's inverse and a power of the anchor's stabilizer; the sorted
    shortlex coset forms of the results give a key, minimized over
    anchors and powers.  Exact free-group computation throughout, so two
    cubes get equal keys exactly when some deck element maps one to the
    other within the truncation.
    """
    best = None
    for anchor in clique:
        la = ls.lifts[anchor]
        root = ls.bases[la.curve].root
        inv_a = invert_word(la.tag)
        rel = []
        for other in clique:
            lo = ls.lifts[other]
            rel.append((lo.curve, reduce_word(inv_a + lo.tag)))
        max_len = max(len(v) for _, v in rel)
        sweep = max_len // max(1, len(root)) + 3
        for a in range(-sweep, sweep + 1):
            power = reduce_word(root * a if a >= 0
                                else invert_word(root) * (-a))
            key = tuple(sorted(
                (c, len(t), t) for c, t in
                ((c, coset_canonical(reduce_word(power + v),
                                     ls.bases[c].root)) for c, v in rel)))
            if best is None or key < best:
                best = key
    return best


def maximal_cubes(ls: LiftSet) -> list[Cube]:
    """Maximal cliques of the linking graph, grouped into orbit classes
    by the tag action (exact canonical forms)."""
    cliques = _bron_kerbosch_pivot(ls.adjacency_sets())
    keys = {}
    classes = []
    for clique in cliques:
        key = _cube_canonical_key(ls, clique)
        if key not in keys:
            keys[key] = len(keys)
        classes.append(keys[key])
    return [Cube(lifts=cl, maximal=True, orbit_class=classes[i])
            for i, cl in enumerate(cliques)]


def orbit_class_representatives(cubes: list[Cube], ls: LiftSet,
                                min_dimension: int = 1) -> list[Cube]:
    """One cube per orbit class (dimension >= min_dimension), preferring
    cubes anchored on a base lift, with short tags."""
    base = set(ls.base_indices)
    def score(cube):
        tags = sum(len(ls.lifts[i].tag) for i in cube.lifts)
        return (0 if base & set(cube.lifts) else 1, tags, cube.lifts)

    byclass: dict[int, Cube] = {}
    for cube in cubes:
        if cube.dimension < min_dimension:
            continue
        cur = byclass.get(cube.orbit_class)
        if cur is None or score(cube) < score(cur):
            byclass[cube.orbit_class] = cube
    return [byclass[k] for k in sorted(byclass)]


# ----------------------------------------------------------------------
# hyperplane separation

@dataclass(frozen=True)
class SeparationWitness:
    cube_pair: tuple[int, int]
    shared: tuple[int, ...]
    crossing_pair: tuple[int, int] | None


@dataclass(frozen=True)
class SeparationReport:
    passed: bool
    pairs_checked: int
    witness: SeparationWitness | None = None


def separation_check(cubes: list[Cube], ls: LiftSet) -> SeparationReport:
    """Hyperplane separation over every pair of distinct enumerated cubes.

    A pair passes when the cubes share no hyperplane, or share exactly
    one and every pair of non-shared hyperplanes across the two cubes is
    unlinked.  Sharing two or more hyperplanes fails outright.
    """
    n = len(ls)
    for cube in cubes:
        if any(not 0 <= i < n for i in cube.lifts):
            raise CubeNotInLiftSet(f"cube {cube.lifts} not inside the lift set")
    link = ls.linking
    checked = 0
    for i in range(len(cubes)):
        si = set(cubes[i].lifts)
        for j in range(i + 1, len(cubes)):
            sj = set(cubes[j].lifts)
            shared = tuple(sorted(si & sj))
            checked += 1
            if len(shared) >= 2:
                return SeparationReport(False, checked, SeparationWitness(
                    (i, j), shared, None))
            if len(shared) == 1:
                for a in sorted(si - sj):
                    for b in sorted(sj - si):
                        if link[a, b]:
                            return SeparationReport(False, checked,
                                                    SeparationWitness(
                                                        (i, j), shared, (a, b)))
    return SeparationReport(True, checked, None)


# ----------------------------------------------------------------------
# diagonal injectivity

@dataclass(frozen=True)
class OverlapWitness:
    cube_pair: tuple[int, int]
    lift: int
    overlap_length: float


@dataclass(frozen=True)
class InjectivityReport:
    passed: bool
    segments_checked: int
    witness: OverlapWitness | None = None


#: parameter horizon beyond which double precision cannot place a point
#: along an axis (positions enter through exp(2s))
_PARAM_HORIZON = 17.0


def _best_frame(ls: LiftSet, cube: Cube) -> tuple:
    """Frame word h minimizing the longest relative word of the cube.

    Pulling the cube back by h^{-1} puts it as close to the base region
    as the tags allow; for a cube at a vertex reached by a word prefix
    this recovers the prefix frame and halves every relative length.
    """
    candidates = {()}
    for i in cube.lifts:
        tag = ls.lifts[i].tag
        for k in range(1, len(tag) + 1):
            candidates.add(tag[:k])

    def cost(h):
        inv_h = invert_word(h)
        return max(len(reduce_word(inv_h + ls.lifts[i].tag))
                   for i in cube.lifts)

    return min(sorted(candidates, key=lambda w: (len(w), w)), key=cost)


def anchored_configuration(ls: LiftSet, cube: Cube,
                           with_frame: bool = False):
    """Cube configuration pulled back to its best frame.

    Isometry-invariant quantities (diagonal lengths, separator data) of a
    distant translate stay computable this way.  With ``with_frame`` the
    frame word and the per-lift axes in the frame are returned as well.
    """
    frame = _best_frame(ls, cube)
    inv_frame = invert_word(frame)
    axes = []
    for other in cube.lifts:
        lo = ls.lifts[other]
        v = reduce_word(inv_frame + lo.tag)
        a1, a2 = ls.translated_axis_angles(v, lo.curve)
        axes.append(Geodesic(a1, a2))
    config = cube_configuration(axes)
    if with_frame:
        return config, frame, axes
    return config


def anchored_diagonal_lengths(ls: LiftSet, cube: Cube) -> list[float]:
    """Diagonal lengths of a cube, robust against endpoint crowding.

    Tries the double-precision anchored configuration; when branches of
    the curve fellow-travel too long for that (endpoint gaps under 1e-9,
    routine for long chained words), recomputes the endpoint angles and
    the cross-ratio products in high-precision arithmetic.  Only angles
    and chord products are needed for the lengths, so the fallback stays
    small.
    """
    try:
        config = anchored_configuration(ls, cube)
        return [d.length for d in diagonal_data(config)]
    except (SharedEndpoint, NotPairwiseLinked):
        return _diagonal_lengths_mp(ls, cube)


def _diagonal_lengths_mp(ls: LiftSet, cube: Cube, dps: int = 80) -> list[float]:
    import mpmath as mp

    with mp.workdps(dps):
        frame = _best_frame(ls, cube)
        inv_frame = invert_word(frame)

        def gen_matrix(letter):
            g = ls.rep.generators[abs(letter) - 1]
            m = g.m if letter > 0 else g.inverse().m
            return mp.matrix([[mp.mpf(m[0, 0]), mp.mpf(m[0, 1])],
                              [mp.mpf(m[1, 0]), mp.mpf(m[1, 1])]])

        def word_matrix(word):
            mat = mp.matrix([[1, 0], [0, 1]])
            for letter in word:
                mat = mat * gen_matrix(letter)
                peak = max(abs(mat[i, j]) for i in range(2) for j in range(2))
                mat = mat / peak
            return mat

        def fixed_vectors(mat):
            tr = mat[0, 0] + mat[1, 1]
            disc = mp.sqrt(tr * tr - 4 * (mat[0, 0] * mat[1, 1]
                                          - mat[0, 1] * mat[1, 0]))
            out = []
            for lam in (0.5 * (tr + disc), 0.5 * (tr - disc)):
                v1 = (mat[0, 1], lam - mat[0, 0])
                v2 = (lam - mat[1, 1], mat[1, 0])
                out.append(max((v1, v2), key=lambda v: abs(v[0]) + abs(v[1])))
            return out

        def angle(vec):
            return mp.atan2(vec[1], -vec[0]) * 2 % (2 * mp.pi)

        base_fixed = {}
        endpoints = []  # (angle, slot)
        for slot, idx in enumerate(cube.lifts):
            lf = ls.lifts[idx]
            if lf.curve not in base_fixed:
                base_fixed[lf.curve] = fixed_vectors(
                    word_matrix(ls.bases[lf.curve].word))
            v = reduce_word(inv_frame + lf.tag)
            mat = word_matrix(v)
            for vec in base_fixed[lf.curve]:
                image = (mat[0, 0] * vec[0] + mat[0, 1] * vec[1],
                         mat[1, 0] * vec[0] + mat[1, 1] * vec[1])
                endpoints.append((angle(image), slot))
        endpoints.sort(key=lambda p: p[0])
        n = len(cube.lifts)
        for j in range(n):
            if endpoints[j][1] != endpoints[j + n][1]:
                raise NotPairwiseLinked(
                    "cube endpoints fail to pair at offset n even in "
                    f"{dps}-digit arithmetic")
        x = [p[0] for p in endpoints]
        m = 2 * n

        def chord(idx_a, idx_b):
            return 2 * abs(mp.sin(0.5 * (x[idx_a % m] - x[idx_b % m])))

        lengths = []
        for i in range(n):
            num = (chord(i, i + n - 1) * chord(i, i + n + 1)
                   * chord(i + n, i + 1) * chord(i + n, i - 1))
            den = (chord(i, i + 1) * chord(i, i - 1)
                   * chord(i + n, i + n + 1) * chord(i + n, i + n - 1))
            lengths.append(float(0.5 * abs(mp.log(num / den))))
        return lengths


def _apply_mobius_disk(mat: np.ndarray, w: complex) -> complex:
    """Moebius action of a matrix (up to positive scale) on a disk point."""
    z = (1j * (1 + w)) / (1 - w)  # disk -> half plane
    image = (mat[0, 0] * z + mat[0, 1]) / (mat[1, 0] * z + mat[1, 1])
    return (image - 1j) / (image + 1j)


def _lift_segment(ls: LiftSet, cube: Cube, lift_idx: int):
    """Diagonal interval of a cube along one of its lifts, in the lift's
    canonical chart (the chart of its curve's base axis pulled by the tag).

    The geometry is built in the cube's best frame and the endpoints are
    transported into the chart afterwards, so the construction stays
    conditioned even for cubes far from the base region; intervals far
    along the lift land outside the horizon and are reported as such.
    """
    config, frame, axes = anchored_configuration(ls, cube, with_frame=True)
    pos = cube.lifts.index(lift_idx)
    target = axes[pos]
    lf = ls.lifts[lift_idx]
    base = ls.bases[lf.curve]
    transport = ls._matrix(reduce_word(invert_word(lf.tag) + frame))
    for d in diagonal_data(config):
        if config.geodesics[d.index] is target:
            s = sorted(axis_parameter(base.chart, _apply_mobius_disk(transport, w))
                       for w in d.endpoints)
            return s[0], s[1]
    raise DegenerateSeparator("anchored hyperplane lost in the configuration")


def diagonal_injectivity_check(cubes: list[Cube], ls: LiftSet,
                               tol: float = 1e-7) -> InjectivityReport:
    """No two diagonal segments may overlap in a sub-arc.

    Overlaps can only happen between segments on a common lift, so each
    cube's diagonal is parameterized along each of its lifts in that
    lift's anchored frame and intervals on one lift are compared.
    Segments beyond the double-precision horizon of their frame are
    skipped: they belong to translates too far along the lift to meet the
    resolvable ones.  Transversal crossings are permitted.
    """
    for cube in cubes:
        if cube.dimension < 3:
            raise DegenerateSeparator(
                f"cube {cube.lifts} has dimension {cube.dimension} < 3")
    by_lift: dict[int, list] = {}
    checked = 0
    for pos, cube in enumerate(cubes):
        for lift_idx in cube.lifts:
            checked += 1
            try:
                lo, hi = _lift_segment(ls, cube, lift_idx)
            except (SharedEndpoint, NotPairwiseLinked):
                continue  # endpoint crowding: the cube sits past the horizon
            if max(abs(lo), abs(hi)) > _PARAM_HORIZON:
                continue
            by_lift.setdefault(lift_idx, []).append((lo, hi, pos))
    for lift_idx, segs in by_lift.items():
        segs.sort()
        for a in range(len(segs)):
            for b in range(a + 1, len(segs)):
                lo = max(segs[a][0], segs[b][0])
                hi = min(segs[a][1], segs[b][1])
                if hi - lo > tol:
                    return InjectivityReport(
                        False, checked, OverlapWitness(
                            cube_pair=(segs[a][2], segs[b][2]),
                            lift=lift_idx, overlap_length=hi - lo))
    return InjectivityReport(True, checked, None)


# ----------------------------------------------------------------------
# self-intersection from orbit classes of linked pairs

def geometric_self_intersection(ls: LiftSet,
                                check_stabilization: bool = True) -> int:
    """Number of orbit classes of linked lift pairs.

    For each curve the lifts linked with its base lift are classified by
    the double coset of their tag modulo the two stabilizers; every
    unordered orbit of linked pairs is counted exactly twice this way.
    Warns when the count has not stabilized against radius - 1.
    """
    count = _anchored_pair_count(ls)
    if check_stabilization and ls.radius >= 1:
        smaller = enumerate_lifts(ls.rep, ls.words, ls.radius - 1)
        if _anchored_pair_count(smaller) != count:
            warnings.warn(
                f"self-intersection count not stabilized at radius {ls.radius}",
                stacklevel=2)
    return count


def _anchored_pair_count(ls: LiftSet) -> int:
    total = 0
    for c, base_idx in enumerate(ls.base_indices):
        left_root = ls.bases[c].root
        anchored = [ls.lifts[j] for j in range(len(ls))
                    if j != base_idx and ls.linked(base_idx, j)]
        reps: list[Lift] = []
        for lf in anchored:
            fresh = True
            for other in reps:
                if other.curve == lf.curve and same_double_coset(
                        lf.tag, other.tag, left_root,
                        ls.bases[lf.curve].root):
                    fresh = False
                    break
            if fresh:
                reps.append(lf)
        total += len(reps)
    if total % 2:
        raise ResourceLimit("odd anchored crossing count: enlarge the radius")
    return total // 2


# ----------------------------------------------------------------------
# crossing parameters (well-conditioned only near the base region)

def crossing_parameter(ls: LiftSet, curve: int, lift_index: int) -> float:
    """Arclength position at which a lift crosses the base axis of a curve."""
    base = ls.bases[curve]
    lf = ls.lifts[lift_index]
    point = geodesics_intersect_point(
        Geodesic(base.ax.theta1, base.ax.theta2),
        Geodesic(lf.attracting, lf.repelling))
    return axis_parameter(base.chart, point)
