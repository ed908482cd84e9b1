"""Truncated Sageev construction: lifts, cubes, separation, injectivity."""

import warnings

import numpy as np
import pytest

from curvebound.cubes import (
    Cube,
    coset_canonical,
    diagonal_injectivity_check,
    enumerate_lifts,
    geometric_self_intersection,
    invert_word,
    maximal_cubes,
    orbit_class_representatives,
    primitive_root,
    reduce_word,
    same_double_coset,
    separation_check,
    strip_left,
)
from curvebound.errors import (
    CubeNotInLiftSet,
    DegenerateSeparator,
    ParabolicCurve,
    ResourceLimit,
)
from curvebound.holonomy import CurveSystem
from curvebound.ribbon import (
    combinatorial_self_intersection,
    figure_eight_graph,
    loop_graph,
    tau_graph,
    torus_spine_graph,
)


@pytest.fixture(scope="module")
def tau1_lifts():
    system = CurveSystem.from_graph(tau_graph(1))
    rep = system.representation([0.3, -0.5, 0.8, 0.1, -0.2, 0.6])
    return enumerate_lifts(rep, system.words, radius=2)


# ----------------------------------------------------------------------
# free group utilities

def test_word_utilities():
    assert reduce_word((1, -1, 2)) == (2,)
    assert invert_word((1, 2, -3)) == (3, -2, -1)
    assert primitive_root((1, 2, 1, 2)) == (1, 2)
    assert primitive_root((1, 2, -1)) == (1, 2, -1)


def test_coset_canonical_collapses_translates():
    w = (1, 2, 3)
    u = (2, -1, 1, 2)  # reduces to (2, 2)
    for a in range(-3, 4):
        power = w * a if a >= 0 else invert_word(w) * (-a)
        assert coset_canonical(reduce_word(u + power), w) \
            == coset_canonical(u, w)
    assert strip_left(reduce_word(w + w + (3, 1)), w) \
        == strip_left((3, 1), w)


def test_same_double_coset():
    left, right = (1, 2), (3,)
    u = (2, 3, -1)
    v = reduce_word(left + u + right + right)
    assert same_double_coset(u, v, left, right)
    assert not same_double_coset(u, (3, 2, 1), left, right)


# ----------------------------------------------------------------------
# lift enumeration

def test_annulus_lifts_unlinked():
    system = CurveSystem.from_graph(loop_graph())
    ls = enumerate_lifts(system.representation([1.3]), system.words, radius=3)
    assert len(ls) == 1  # every conjugate reproduces the single axis
    assert not ls.linking.any()
    cubes = maximal_cubes(ls)
    assert [c.dimension for c in cubes] == [1]
    assert geometric_self_intersection(ls) == 0


def test_parabolic_curve_rejected():
    system = CurveSystem.from_graph(loop_graph())
    rep = system.representation([0.0])
    with pytest.raises(ParabolicCurve):
        enumerate_lifts(rep, system.words, radius=1)


def test_figure_eight_has_linked_pair():
    system = CurveSystem.from_graph(figure_eight_graph())
    rep = system.representation([0.4, -0.2, 0.9])
    ls = enumerate_lifts(rep, system.words, radius=3)
    assert ls.linking.any()
    cubes = maximal_cubes(ls)
    assert max(c.dimension for c in cubes) == 2
    assert geometric_self_intersection(ls) == 1


def test_tau1_has_linked_triple(tau1_lifts):
    cubes = maximal_cubes(tau1_lifts)
    assert max(c.dimension for c in cubes) == 3


def test_lift_tags_are_canonical_and_unique(tau1_lifts):
    keys = {(lf.curve, lf.tag) for lf in tau1_lifts.lifts}
    assert len(keys) == len(tau1_lifts.lifts)
    root = tau1_lifts.bases[0].root
    for lf in tau1_lifts.lifts:
        assert lf.tag == coset_canonical(lf.tag, root)


def test_linking_symmetric_across_anchor_frames(tau1_lifts):
    rng = np.random.default_rng(3)
    n = len(tau1_lifts)
    for _ in range(300):
        i, j = rng.integers(0, n, size=2)
        if i != j:
            assert tau1_lifts.linked(int(i), int(j)) \
                == tau1_lifts.linked(int(j), int(i))


def test_resource_limit():
    system = CurveSystem.from_graph(tau_graph(1))
    rep = system.representation([0.0] * 6)
    with pytest.raises(ResourceLimit):
        enumerate_lifts(rep, system.words, radius=3, max_conjugators=10)


# ----------------------------------------------------------------------
# orbit classes and separation

def test_tau1_one_orbit_class_and_separation(tau1_lifts):
    cubes = maximal_cubes(tau1_lifts)
    three = [c for c in cubes if c.dimension == 3]
    assert len({c.orbit_class for c in three}) == 1
    assert len(three) > 1  # translates were enumerated
    assert separation_check(cubes, tau1_lifts).passed
    assert geometric_self_intersection(tau1_lifts) == 3


def test_tau2_two_orbit_classes():
    system = CurveSystem.from_graph(tau_graph(2))
    rng = np.random.default_rng(11)
    rep = system.representation(rng.uniform(-1, 1, size=system.spine.shear_dim))
    ls = enumerate_lifts(rep, system.words, radius=1)
    cubes = maximal_cubes(ls)
    three = [c for c in cubes if c.dimension == 3]
    assert len({c.orbit_class for c in three}) == 2
    assert separation_check(cubes, ls).passed
    assert geometric_self_intersection(ls) == 6 \
        == combinatorial_self_intersection(tau_graph(2))


def test_stabilization_monotone_tau1():
    system = CurveSystem.from_graph(tau_graph(1))
    rep = system.representation([0.3, -0.5, 0.8, 0.1, -0.2, 0.6])
    dims, counts = [], []
    for radius in (0, 1, 2):
        ls = enumerate_lifts(rep, system.words, radius=radius)
        dims.append(max(c.dimension for c in maximal_cubes(ls)))
        counts.append(geometric_self_intersection(ls, check_stabilization=False))
    assert dims == sorted(dims)
    assert counts == sorted(counts)
    assert counts[-1] == counts[-2] == 3


def test_no_stabilization_warning_on_catalog(tau1_lifts):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert geometric_self_intersection(tau1_lifts) == 3


def test_cube_not_in_lift_set(tau1_lifts):
    with pytest.raises(CubeNotInLiftSet):
        separation_check([Cube(lifts=(0, 10 ** 6))], tau1_lifts)


# ----------------------------------------------------------------------
# the triangle counterexample

@pytest.fixture(scope="module")
def triangle_system():
    """a, b and ab on the punctured torus: the complement of the geodesic
    realization contains two triangles, so separation must fail."""
    system = CurveSystem.from_words(torus_spine_graph(), [(1,), (2,), (1, 2)])
    rep = system.representation([0.15, -0.35, 0.5])
    return enumerate_lifts(rep, system.words, radius=2)


def test_triangle_system_fails_separation(triangle_system):
    ls = triangle_system
    cubes = maximal_cubes(ls)
    report = separation_check(cubes, ls)
    assert not report.passed
    w = report.witness
    ci = set(cubes[w.cube_pair[0]].lifts)
    cj = set(cubes[w.cube_pair[1]].lifts)
    assert set(w.shared) == ci & cj
    if w.crossing_pair is None:
        assert len(w.shared) >= 2  # re-check reproduces the violation
    else:
        a, b = w.crossing_pair
        assert len(w.shared) == 1
        assert a in ci - cj and b in cj - ci
        assert ls.linked(a, b)


def test_triangle_system_has_crossing_witness(triangle_system):
    """Some failing pair exhibits the share-one-and-cross pattern, and its
    three hyperplanes come from the three distinct curves of the system
    (they bound a lifted triangle)."""
    ls = triangle_system
    cubes = maximal_cubes(ls)
    found = None
    for i in range(len(cubes)):
        for j in range(i + 1, len(cubes)):
            si, sj = set(cubes[i].lifts), set(cubes[j].lifts)
            shared = si & sj
            if len(shared) != 1:
                continue
            for a in si - sj:
                for b in sj - si:
                    if ls.linked(a, b):
                        found = (next(iter(shared)), a, b)
                        break
                if found:
                    break
            if found:
                break
        if found:
            break
    assert found is not None
    curves = {ls.lifts[x].curve for x in found}
    assert curves == {0, 1, 2}


# ----------------------------------------------------------------------
# diagonal injectivity

def test_diagonal_injectivity_tau1(tau1_lifts):
    cubes = maximal_cubes(tau1_lifts)
    reps = orbit_class_representatives(
        [c for c in cubes if c.dimension == 3], tau1_lifts, min_dimension=3)
    report = diagonal_injectivity_check(reps, tau1_lifts)
    assert report.passed
    assert report.segments_checked == 3


def test_diagonal_injectivity_all_translates(tau1_lifts):
    cubes = [c for c in maximal_cubes(tau1_lifts) if c.dimension == 3]
    report = diagonal_injectivity_check(cubes, tau1_lifts)
    assert report.passed


def test_duplicated_cube_overlap_detected(tau1_lifts):
    cubes = [c for c in maximal_cubes(tau1_lifts) if c.dimension == 3]
    doubled = [cubes[0], cubes[0]]
    report = diagonal_injectivity_check(doubled, tau1_lifts)
    assert not report.passed
    assert report.witness.overlap_length > 0.1


def test_two_cubes_rejected_by_injectivity(tau1_lifts):
    cubes = maximal_cubes(tau1_lifts)
    pair = Cube(lifts=cubes[0].lifts[:2])
    with pytest.raises(DegenerateSeparator):
        diagonal_injectivity_check([pair], tau1_lifts)
