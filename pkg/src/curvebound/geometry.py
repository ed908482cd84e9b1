"""Numerical hyperbolic plane in the Poincare disk model.

Ideal points are angles on the boundary circle; geodesics are unordered
angle pairs.  Isometries are real 2x2 matrices acting on the upper half
plane, carried to the disk by the fixed Cayley transform

    C(z) = (z - i) / (z + i),

under which the boundary angle ``theta`` corresponds to the boundary real
``-cot(theta/2)``, or in homogeneous coordinates on RP^1 to the pair
``(-cos(theta/2), sin(theta/2))``.  Working projectively removes every
special case at infinity: a matrix acts on boundary points by plain
matrix-vector multiplication.

Geodesic intersections are computed in the Klein model, where geodesics
are straight chords, then mapped back to the Poincare disk for distance
computations.

The diagonal length of a cube configuration is computed two independent
ways: from the cross-ratio expression (half the log of the printed
product; the raw product is exposed alongside since it equals twice the
hyperbolic length) and from the direct intersect-and-measure oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import TOL
from .errors import (
    DegenerateSeparator,
    DimensionTooSmall,
    InvalidH,
    NotHyperbolic,
    NotPairwiseLinked,
    SharedEndpoint,
)

TWO_PI = 2.0 * math.pi


# ----------------------------------------------------------------------
# angles on the boundary circle

def normalize_angle(theta: float) -> float:
    """Reduce an angle to the canonical representative in [0, 2*pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t -= TWO_PI
    return t


def angular_gap(a: float, b: float) -> float:
    """Shortest angular distance between two boundary angles."""
    d = abs(normalize_angle(a) - normalize_angle(b))
    return min(d, TWO_PI - d)


def chord(a: float, b: float) -> float:
    """Euclidean distance |e^{ia} - e^{ib}| = 2 |sin((a - b)/2)|."""
    return 2.0 * abs(math.sin(0.5 * (a - b)))


def ccw_arc(a: float, b: float) -> float:
    """Length of the counterclockwise arc from a to b, in (0, 2*pi]."""
    d = math.fmod(b - a, TWO_PI)
    if d <= 0.0:
        d += TWO_PI
    return d


def angle_to_rp1(theta: float) -> np.ndarray:
    """Homogeneous boundary coordinates of the angle theta."""
    return np.array([-math.cos(0.5 * theta), math.sin(0.5 * theta)])


def rp1_to_angle(vec) -> float:
    """Angle of a homogeneous boundary point (u : v)."""
    u, v = float(vec[0]), float(vec[1])
    return normalize_angle(2.0 * math.atan2(v, -u))


def angle_to_halfplane(theta: float) -> float:
    """Boundary real of the angle theta (infinity never arises for theta != 0)."""
    return -1.0 / math.tan(0.5 * theta)


# ----------------------------------------------------------------------
# interior points: disk <-> half plane <-> Klein

def halfplane_to_disk(z: complex) -> complex:
    return (z - 1j) / (z + 1j)


def disk_to_halfplane(w: complex) -> complex:
    return 1j * (1 + w) / (1 - w)


def disk_to_klein(w: complex) -> complex:
    return 2.0 * w / (1.0 + abs(w) ** 2)


def klein_to_disk(k: complex) -> complex:
    return k / (1.0 + math.sqrt(max(0.0, 1.0 - abs(k) ** 2)))


def disk_distance(w1: complex, w2: complex) -> float:
    """Hyperbolic distance between two interior points of the disk."""
    num = 2.0 * abs(w1 - w2) ** 2
    den = (1.0 - abs(w1) ** 2) * (1.0 - abs(w2) ** 2)
    return math.acosh(1.0 + num / den)


# ----------------------------------------------------------------------
# geodesics

@dataclass(frozen=True)
class Geodesic:
    """Complete geodesic given by its unordered pair of ideal endpoints."""

    theta1: float
    theta2: float

    def __post_init__(self):
        t1 = normalize_angle(self.theta1)
        t2 = normalize_angle(self.theta2)
        if angular_gap(t1, t2) <= TOL:
            raise SharedEndpoint(
                f"geodesic endpoints coincide: {t1} vs {t2}"
            )
        object.__setattr__(self, "theta1", t1)
        object.__setattr__(self, "theta2", t2)

    @property
    def endpoints(self) -> tuple[float, float]:
        return (self.theta1, self.theta2)

    def same_as(self, other: "Geodesic", tol: float = 1e-7) -> bool:
        a = sorted(self.endpoints)
        b = sorted(other.endpoints)
        direct = max(angular_gap(a[0], b[0]), angular_gap(a[1], b[1]))
        swapped = max(angular_gap(a[0], b[1]), angular_gap(a[1], b[0]))
        return min(direct, swapped) <= tol


def link(alpha: Geodesic, beta: Geodesic) -> bool:
    """True when the endpoints of beta separate those of alpha on the circle.

    Raises SharedEndpoint when any endpoint of alpha is within tolerance of
    an endpoint of beta: the predicate is not defined there.
    """
    for a in alpha.endpoints:
        for b in beta.endpoints:
            if angular_gap(a, b) <= TOL:
                raise SharedEndpoint(
                    f"endpoints within tolerance: {a} vs {b}"
                )
    return _link_unchecked(alpha.theta1, alpha.theta2,
                           beta.theta1, beta.theta2)


def _link_unchecked(a1, a2, b1, b2) -> bool:
    arc = ccw_arc(a1, a2)
    in1 = ccw_arc(a1, b1) < arc
    in2 = ccw_arc(a1, b2) < arc
    return in1 != in2


def geodesics_intersect_point(g1: Geodesic, g2: Geodesic) -> complex:
    """Intersection point of two linked geodesics, as a Poincare disk point.

    Computed in the Klein model where both geodesics are straight chords.
    """
    p1 = cmath.exp(1j * g1.theta1)
    q1 = cmath.exp(1j * g1.theta2)
    p2 = cmath.exp(1j * g2.theta1)
    q2 = cmath.exp(1j * g2.theta2)
    # solve p1 + t (q1 - p1) = p2 + s (q2 - p2) as a real 2x2 system
    a = np.array([[(q1 - p1).real, -(q2 - p2).real],
                  [(q1 - p1).imag, -(q2 - p2).imag]])
    rhs = np.array([(p2 - p1).real, (p2 - p1).imag])
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    if abs(det) < 1e-15:
        raise NotPairwiseLinked("geodesics are parallel chords")
    t = (rhs[0] * a[1, 1] - rhs[1] * a[0, 1]) / det
    k = p1 + t * (q1 - p1)
    if abs(k) >= 1.0:
        raise NotPairwiseLinked("chords meet outside the disk: not linked")
    return klein_to_disk(k)


# ----------------------------------------------------------------------
# isometries

class Isometry:
    """Orientation-preserving isometry of H^2 as a 2x2 real matrix.

    Normalized to determinant one and a canonical sign (first entry of
    (a, b, c, d) exceeding tolerance is positive), so equal group elements
    in PSL(2, R) have equal matrices.
    """

    __slots__ = ("m",)

    def __init__(self, m):
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError("isometry needs a 2x2 matrix")
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if det <= TOL:
            raise ValueError(f"matrix must have positive determinant, got {det}")
        m = m / math.sqrt(det)
        for entry in m.ravel():
            if abs(entry) > TOL:
                if entry < 0:
                    m = -m
                break
        self.m = m

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(2))

    @classmethod
    def trusted(cls, m) -> "Isometry":
        """Wrap a matrix whose true determinant is known to be one but
        whose computed determinant has been lost to cancellation (long
        products of hyperbolic elements).  Only the sign is canonicalized."""
        obj = cls.__new__(cls)
        m = np.asarray(m, dtype=float)
        for entry in m.ravel():
            if abs(entry) > TOL:
                if entry < 0:
                    m = -m
                break
        obj.m = m
        return obj

    @classmethod
    def from_entries(cls, a, b, c, d) -> "Isometry":
        return cls(np.array([[a, b], [c, d]], dtype=float))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.m @ other.m)

    def inverse(self) -> "Isometry":
        a, b = self.m[0]
        c, d = self.m[1]
        return Isometry(np.array([[d, -b], [-c, a]]))

    @property
    def trace(self) -> float:
        return float(self.m[0, 0] + self.m[1, 1])

    def __repr__(self):
        a, b = self.m[0]
        c, d = self.m[1]
        return f"Isometry([[{a:.6g}, {b:.6g}], [{c:.6g}, {d:.6g}]])"

    def apply_angle(self, theta: float) -> float:
        return rp1_to_angle(self.m @ angle_to_rp1(theta))

    def apply_geodesic(self, g: Geodesic) -> Geodesic:
        return Geodesic(self.apply_angle(g.theta1), self.apply_angle(g.theta2))

    def apply_disk_point(self, w: complex) -> complex:
        z = disk_to_halfplane(w)
        a, b = self.m[0]
        c, d = self.m[1]
        return halfplane_to_disk((a * z + b) / (c * z + d))


def classify_isometry(m: Isometry) -> str:
    """'hyperbolic', 'parabolic' or 'elliptic' by the absolute trace."""
    t = abs(m.trace)
    if t > 2.0 + TOL:
        return "hyperbolic"
    if t >= 2.0 - TOL:
        return "parabolic"
    return "elliptic"


def translation_length(m: Isometry) -> float:
    """Displacement along the axis: 2 arccosh(|tr|/2)."""
    if classify_isometry(m) != "hyperbolic":
        raise NotHyperbolic(f"trace {m.trace} is not hyperbolic")
    return 2.0 * math.acosh(0.5 * abs(m.trace))


def fixed_points_rp1(m: Isometry) -> tuple[np.ndarray, np.ndarray]:
    """(attracting, repelling) boundary fixed points, as RP^1 vectors."""
    if classify_isometry(m) != "hyperbolic":
        raise NotHyperbolic(f"trace {m.trace} is not hyperbolic")
    evals, evecs = np.linalg.eig(m.m)
    order = np.argsort(-np.abs(evals))
    att = np.real(evecs[:, order[0]])
    rep = np.real(evecs[:, order[1]])
    return att, rep


def axis(m: Isometry) -> "OrientedAxis":
    """Axis of a hyperbolic isometry, with attracting endpoint recorded."""
    att, rep = fixed_points_rp1(m)
    return OrientedAxis(rp1_to_angle(att), rp1_to_angle(rep))


@dataclass(frozen=True)
class OrientedAxis(Geodesic):
    """Geodesic with orientation: theta1 attracting, theta2 repelling."""

    @property
    def attracting(self) -> float:
        return self.theta1

    @property
    def repelling(self) -> float:
        return self.theta2


# ----------------------------------------------------------------------
# parameters along an axis

def axis_chart(g: Geodesic) -> Isometry:
    """Isometry sending g to the half-plane geodesic (0, infinity).

    For an OrientedAxis the repelling endpoint goes to 0 and the attracting
    endpoint to infinity, so the isometry translates by +length along it.
    """
    if isinstance(g, OrientedAxis):
        src_inf, src_zero = g.attracting, g.repelling
    else:
        src_inf, src_zero = g.theta1, g.theta2
    p_zero = angle_to_rp1(src_zero)
    p_inf = angle_to_rp1(src_inf)
    # rows kill the respective endpoints: row1 . p_zero = 0, row2 . p_inf = 0
    row1 = np.array([p_zero[1], -p_zero[0]])
    row2 = np.array([p_inf[1], -p_inf[0]])
    m = np.vstack([row1, row2])
    if m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] < 0:
        m = np.vstack([row1, -row2])
    return Isometry(m)


def axis_parameter(chart: Isometry, w: complex) -> float:
    """Signed arclength coordinate of a disk point lying on the charted axis."""
    z = disk_to_halfplane(w)
    a, b = chart.m[0]
    c, d = chart.m[1]
    image = (a * z + b) / (c * z + d)
    return math.log(max(image.imag, 1e-300))


# ----------------------------------------------------------------------
# cube configurations and diagonals

@dataclass(frozen=True)
class CubeConfiguration:
    """n pairwise-linked geodesics with boundary labels p_1..p_n, q_1..q_n.

    ``angles`` holds the 2n endpoint angles sorted counterclockwise, with
    the defining property that angles[j] and angles[j + n] are the two
    endpoints of one geodesic; p_i = angles[i - 1], q_i = angles[i - 1 + n].
    """

    angles: tuple[float, ...]
    geodesics: tuple[Geodesic, ...] = field(hash=False)

    @property
    def dimension(self) -> int:
        return len(self.angles) // 2

    @property
    def p(self) -> tuple[float, ...]:
        return self.angles[: self.dimension]

    @property
    def q(self) -> tuple[float, ...]:
        return self.angles[self.dimension:]


def cube_configuration(lifts) -> CubeConfiguration:
    """Label the endpoints of pairwise-linked geodesics in cyclic order.

    For pairwise-linked geodesics the 2n endpoints, sorted around the
    circle, pair up at offset n; anything else means the input was not
    pairwise linked.
    """
    lifts = list(lifts)
    n = len(lifts)
    if n < 3:
        raise DimensionTooSmall(f"need at least 3 geodesics, got {n}")
    tagged = []
    for idx, g in enumerate(lifts):
        tagged.append((normalize_angle(g.theta1), idx))
        tagged.append((normalize_angle(g.theta2), idx))
    tagged.sort()
    for j in range(2 * n):
        if angular_gap(tagged[j][0], tagged[(j + 1) % (2 * n)][0]) <= TOL:
            raise SharedEndpoint("two configuration endpoints coincide")
    for j in range(n):
        if tagged[j][1] != tagged[j + n][1]:
            raise NotPairwiseLinked(
                "sorted endpoints do not pair at offset n: "
                "geodesics are not pairwise linked"
            )
    angles = tuple(t for t, _ in tagged)
    geos = tuple(lifts[tagged[j][1]] for j in range(n))
    return CubeConfiguration(angles=angles, geodesics=geos)


@dataclass(frozen=True)
class DiagonalData:
    """Separators, diagonal segment and its length for one hyperplane."""

    index: int
    separators: tuple[Geodesic, Geodesic]
    endpoints: tuple[complex, complex]
    length: float
    printed_log: float  # the cross-ratio expression as printed: 2x the length


def diagonal_printed_log(angles, i: int) -> float:
    """Log of the printed cross-ratio product for hyperplane i (0-based)."""
    x = angles
    m = len(x)
    n = m // 2

    def c(a, b):
        return chord(x[a % m], x[b % m])

    num = c(i, i + n - 1) * c(i, i + n + 1) * c(i + n, i + 1) * c(i + n, i - 1)
    den = c(i, i + 1) * c(i, i - 1) * c(i + n, i + n + 1) * c(i + n, i + n - 1)
    return math.log(num / den)


def diagonal_data(config: CubeConfiguration) -> list[DiagonalData]:
    """Separators, diagonals and lengths for every hyperplane of the cube.

    The length is half the absolute value of the printed cross-ratio
    expression; the raw value is kept alongside (it is twice the
    hyperbolic length, see diagonal_lengths_direct for the oracle).
    """
    n = config.dimension
    if n < 3:
        raise DegenerateSeparator(
            "separators degenerate for n < 3; a 2-cube contributes zero"
        )
    x = config.angles
    m = 2 * n
    out = []
    for i in range(n):
        sep1 = Geodesic(x[(i - 1) % m], x[(i + 1) % m])
        sep2 = Geodesic(x[(i + n - 1) % m], x[(i + n + 1) % m])
        gamma = Geodesic(x[i], x[i + n])
        za = geodesics_intersect_point(gamma, sep1)
        zb = geodesics_intersect_point(gamma, sep2)
        printed = diagonal_printed_log(x, i)
        out.append(DiagonalData(
            index=i,
            separators=(sep1, sep2),
            endpoints=(za, zb),
            length=0.5 * abs(printed),
            printed_log=printed,
        ))
    return out


def diagonal_lengths_direct(config: CubeConfiguration) -> list[float]:
    """Independent oracle: intersect each hyperplane with its separators
    and measure the hyperbolic distance between the two points."""
    n = config.dimension
    if n < 3:
        raise DegenerateSeparator("no separators for n < 3")
    x = config.angles
    m = 2 * n
    lengths = []
    for i in range(n):
        sep1 = Geodesic(x[(i - 1) % m], x[(i + 1) % m])
        sep2 = Geodesic(x[(i + n - 1) % m], x[(i + n + 1) % m])
        gamma = Geodesic(x[i], x[i + n])
        za = geodesics_intersect_point(gamma, sep1)
        zb = geodesics_intersect_point(gamma, sep2)
        lengths.append(disk_distance(za, zb))
    return lengths


# ----------------------------------------------------------------------
# H-shapes and crosses

def common_perpendicular(g1: Geodesic, g2: Geodesic) -> Geodesic:
    """The unique geodesic orthogonal to two disjoint geodesics.

    Computed from Minkowski poles: a geodesic corresponds to a spacelike
    vector, orthogonality of geodesics to Minkowski-orthogonality of poles.
    """
    def lightlike(theta):
        return np.array([math.cos(theta), math.sin(theta), 1.0])

    def mink_cross(u, v):
        c = np.cross(u, v)
        return np.array([c[0], c[1], -c[2]])

    n1 = mink_cross(lightlike(g1.theta1), lightlike(g1.theta2))
    n2 = mink_cross(lightlike(g2.theta1), lightlike(g2.theta2))
    pole = mink_cross(n1, n2)
    r = math.hypot(pole[0], pole[1])
    if r <= abs(pole[2]) * (1 + 1e-12):
        raise InvalidH("geodesics intersect or are asymptotic: no perpendicular")
    phi = math.atan2(pole[1], pole[0])
    half = math.acos(max(-1.0, min(1.0, pole[2] / r)))
    return Geodesic(phi + half, phi - half)


class Hshape:
    """Two disjoint geodesics joined by their common-perpendicular bar.

    The cross of the H is the pair of geodesics joining opposite ideal
    endpoints (the diagonals of the ideal quadrilateral spanned by the H).
    """

    __slots__ = ("g1", "g2", "bar_geodesic", "bar", "cross")

    def __init__(self, g1: Geodesic, g2: Geodesic):
        try:
            if link(g1, g2):
                raise InvalidH("the geodesics of an H must be disjoint")
        except SharedEndpoint as exc:
            raise InvalidH(str(exc)) from exc
        self.g1 = g1
        self.g2 = g2
        self.bar_geodesic = common_perpendicular(g1, g2)
        self.bar = (
            geodesics_intersect_point(self.bar_geodesic, g1),
            geodesics_intersect_point(self.bar_geodesic, g2),
        )
        pts = sorted(normalize_angle(t)
                     for t in (*g1.endpoints, *g2.endpoints))
        self.cross = (Geodesic(pts[0], pts[2]), Geodesic(pts[1], pts[3]))


def crosses_intersect(h1: Hshape, h2: Hshape) -> bool:
    """True when the crosses of the two H-shapes contain an intersecting pair."""
    for a in h1.cross:
        for b in h2.cross:
            if a.same_as(b, tol=TOL):
                return True
            try:
                if link(a, b):
                    return True
            except SharedEndpoint:
                continue  # asymptotic pair: no interior intersection
    return False


# ----------------------------------------------------------------------
# Moebius maps from boundary triples (used to normalize configurations)

def _rp1_triple_to_standard(p1, p2, p3) -> np.ndarray:
    """Matrix sending three RP^1 points to 0, 1, infinity."""
    def d(a, b):
        return a[1] * b[0] - a[0] * b[1]

    row1 = np.array([p1[1], -p1[0]]) * d(p3, p2)
    row2 = np.array([p3[1], -p3[0]]) * d(p1, p2)
    return np.vstack([row1, row2])


def mobius_from_triples(src_angles, dst_angles) -> Isometry:
    """Disk automorphism sending three boundary angles to three others.

    The triples must have the same cyclic orientation, else the map would
    reverse orientation and there is no such element of PSL(2, R).
    """
    src = [angle_to_rp1(t) for t in src_angles]
    dst = [angle_to_rp1(t) for t in dst_angles]
    ms = _rp1_triple_to_standard(*src)
    md = _rp1_triple_to_standard(*dst)
    det_s = ms[0, 0] * ms[1, 1] - ms[0, 1] * ms[1, 0]
    det_d = md[0, 0] * md[1, 1] - md[0, 1] * md[1, 0]
    if det_s * det_d <= 0:
        raise ValueError("triples have opposite cyclic orientation")
    inv = np.array([[md[1, 1], -md[0, 1]], [-md[1, 0], md[0, 0]]])
    return Isometry(inv @ ms)
