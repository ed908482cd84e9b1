"""Shear-coordinate holonomy: known structures, invariances, sanity scans."""

import math

import numpy as np
import pytest

from curvebound.errors import (
    DegenerateStructure,
    DimensionMismatch,
    EmptyWord,
    InvalidParameter,
    ParabolicCurve,
)
from curvebound.geometry import Isometry
from curvebound.holonomy import (
    CurveSystem,
    Representation,
    Spine,
    build_rep,
    curve_length,
    discreteness_sanity,
    reduced_words,
    system_length,
)
from curvebound.ribbon import (
    build_graph,
    figure_eight_graph,
    loop_graph,
    tau_graph,
    torus_spine_graph,
)

LENGTH_TRACE3 = 2.0 * math.acosh(1.5)  # 1.9248473002384139


@pytest.fixture(scope="module")
def torus_rep():
    spine = Spine(torus_spine_graph())
    return build_rep(spine, [0.0] * spine.shear_dim)


def test_modular_torus_traces(torus_rep):
    assert abs(torus_rep.trace((1,))) == pytest.approx(3.0, abs=1e-12)
    assert abs(torus_rep.trace((2,))) == pytest.approx(3.0, abs=1e-12)
    assert abs(torus_rep.trace((1, 2, -1, -2))) == pytest.approx(2.0, abs=1e-12)


def test_modular_torus_curve_length(torus_rep):
    assert curve_length(torus_rep, (1,)) == pytest.approx(
        LENGTH_TRACE3, abs=1e-12)


def test_build_rep_deterministic():
    spine = Spine(torus_spine_graph())
    r1 = build_rep(spine, [0.3, -0.7, 1.1])
    r2 = build_rep(spine, [0.3, -0.7, 1.1])
    for a, b in zip(r1.generators, r2.generators):
        assert np.array_equal(a.m, b.m)


def test_figure_eight_zero_shear_is_three_punctured_sphere():
    # oracle: the figure eight around two cusps of H/Gamma(2) has holonomy
    # [[1,2],[0,1]] [[1,0],[2,1]], trace 6, length 2 arccosh(3) = 4 log(1+sqrt2)
    oracle = np.array([[1.0, 2.0], [0.0, 1.0]]) @ np.array([[1.0, 0.0], [2.0, 1.0]])
    target = 2.0 * math.acosh(abs(np.trace(oracle)) / 2.0)
    assert target == pytest.approx(4.0 * math.log(1.0 + math.sqrt(2.0)), abs=1e-12)

    system = CurveSystem.from_graph(figure_eight_graph())
    rep = system.representation([0.0] * system.spine.shear_dim)
    assert curve_length(rep, system.words[0]) == pytest.approx(target, abs=1e-9)


def test_figure_eight_faces_parabolic_at_zero_shear():
    system = CurveSystem.from_graph(figure_eight_graph())
    rep = system.representation([0.0] * system.spine.shear_dim)
    for word in system.spine.face_words():
        assert abs(rep.trace(word)) == pytest.approx(2.0, abs=1e-9)
    with pytest.raises(ParabolicCurve):
        curve_length(rep, system.spine.face_words()[0])


def test_conjugation_and_power_laws(rng):
    system = CurveSystem.from_graph(tau_graph(1))
    shear = rng.uniform(-2, 2, size=system.spine.shear_dim)
    rep = system.representation(shear)
    w = system.words[0]
    base = curve_length(rep, w)
    for u in [(1,), (2, -1), (3, 1, 2)]:
        conj = u + w + tuple(-x for x in reversed(u))
        assert curve_length(rep, conj) == pytest.approx(base, abs=1e-9)
    assert curve_length(rep, w + w) == pytest.approx(2 * base, abs=1e-9)


def test_face_words_never_elliptic_random_shears(rng):
    for graph in (figure_eight_graph(), torus_spine_graph(), tau_graph(2)):
        system = CurveSystem.from_graph(graph)
        for _ in range(10):
            shear = rng.uniform(-3, 3, size=system.spine.shear_dim)
            rep = system.representation(shear)  # DegenerateStructure would raise
            for word in system.spine.face_words():
                if word:
                    assert abs(rep.trace(word)) >= 2.0 - 1e-9


def test_dimension_mismatch():
    spine = Spine(tau_graph(1))
    with pytest.raises(DimensionMismatch):
        build_rep(spine, [0.0] * (spine.shear_dim + 1))


def test_annulus_lengths():
    system = CurveSystem.from_graph(loop_graph())
    assert system.spine.shear_dim == 1
    rep = system.representation([1.7])
    assert curve_length(rep, (1,)) == pytest.approx(1.7, abs=1e-12)
    pinched = system.representation([0.0])
    with pytest.raises(ParabolicCurve):
        curve_length(pinched, (1,))
    assert system_length(pinched, [(1,)], parabolic_zero=True) == 0.0


def test_mixed_two_valent_vertices_rejected():
    g = build_graph((1, 2), [(0, 2), (1, 3), (4, 5)])
    with pytest.raises(InvalidParameter):
        Spine(g)


def test_empty_word_rejected(torus_rep):
    with pytest.raises(EmptyWord):
        curve_length(torus_rep, ())
    with pytest.raises(EmptyWord):
        torus_rep.evaluate(())


def test_discreteness_sanity_modular_torus(torus_rep):
    report = discreteness_sanity(torus_rep, 4)
    assert report.elliptic_words == ()
    assert report.min_translation_length == pytest.approx(
        LENGTH_TRACE3, abs=1e-9)


def test_discreteness_sanity_flags_elliptic():
    c, s = math.cos(0.7), math.sin(0.7)
    rep = Representation([Isometry.from_entries(c, -s, s, c),
                          Isometry.from_entries(2, 1, 1, 1)])
    report = discreteness_sanity(rep, 1)
    assert (1,) in report.elliptic_words or (-1,) in report.elliptic_words


def test_discreteness_depth_clamped(torus_rep):
    assert discreteness_sanity(torus_rep, 0).depth == 1


def test_reduced_word_enumeration_counts():
    # rank 2: 4 words of length 1; 4*3 = 12 of length 2, all cyclically reduced
    words = list(reduced_words(2, 2))
    assert sum(1 for w in words if len(w) == 1) == 4
    assert sum(1 for w in words if len(w) == 2) == 12


def test_tau_spine_shear_dimensions():
    # valence-6 vertices blow up into 4 trivalent joints: 3 extra edges each
    for k in (1, 2, 3):
        spine = Spine(tau_graph(k))
        assert spine.shear_dim == 3 * k + 3 * k
        assert spine.rank == 2 * k + 1
