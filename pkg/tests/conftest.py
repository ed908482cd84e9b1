"""Shared sampling helpers for the test suite."""

import math

import numpy as np
import pytest

from curvebound.geometry import Geodesic, Isometry

TWO_PI = 2.0 * math.pi


def random_isometry(rng, scale=1.0):
    """Random element of PSL(2, R), rejection-sampled for positive determinant."""
    while True:
        m = rng.normal(size=(2, 2)) * scale
        if m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] > 0.1:
            return Isometry(m)


def random_angles(rng, count, min_gap=5e-2):
    """Strictly increasing angles in [0, 2*pi) with a minimum mutual gap."""
    while True:
        t = np.sort(rng.uniform(0.0, TWO_PI, size=count))
        gaps = np.diff(np.concatenate([t, [t[0] + TWO_PI]]))
        if gaps.min() > min_gap:
            return t


def random_linked_family(rng, n, min_gap=5e-2):
    """n pairwise-linked geodesics: sorted angles paired at offset n."""
    t = random_angles(rng, 2 * n, min_gap)
    return [Geodesic(t[i], t[i + n]) for i in range(n)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)
