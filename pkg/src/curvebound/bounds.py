"""The boundary functional, its minimum, and length-bound certificates.

For 2n distinct boundary points x_j = exp(i theta_j) the functional

    F(x_1, ..., x_2n) = log prod_j |(x_j - x_{j+n+1})(x_j - x_{j+n-1})|
                                / |(x_j - x_{j+1})(x_j - x_{j-1})|

(indices mod 2n, Euclidean chords) measures the total diagonal content of
a cube configuration: summing the cross-ratio expression of the diagonal
of every hyperplane reproduces F exactly.  The hyperbolic length of the
diagonals is HALF of that: the printed cross-ratio expression evaluates
to twice the measured length (checked against the intersect-and-measure
oracle), and correspondingly the minimum of F over cyclically ordered
tuples is 2n log((1+cos pi/n)/(1-cos pi/n)), attained on the Moebius
orbit of the regular configuration.  Both F itself (``f_printed``) and
its half (``f_len``, the actual total diagonal length) are exposed, so
the reconciliation of the two conventions stays testable.

The certificate bound follows the convention the source results use in
their applications: each separated cube of dimension n >= 3 contributes
log((1+cos pi/n)/(1-cos pi/n)) and 2-cubes contribute nothing, making
bound / self-intersection = (log 3)/3 for the chained trivalent family.
The sharper per-cube quantity n log(...) (the provable minimum of the
cube's total diagonal length) is exposed as ``cube_diagonal_minimum``
and reported alongside in certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .constants import DEFAULT_RADIUS, SHEAR_BOX, TOL
from .cubes import (
    Cube,
    LiftSet,
    anchored_diagonal_lengths,
    enumerate_lifts,
    maximal_cubes,
    orbit_class_representatives,
    separation_check,
)
from .errors import (
    DimensionTooSmall,
    InvalidDimension,
    InvalidParameter,
    ParabolicCurve,
    SeparationFailed,
)
from .geometry import (
    cube_configuration,
    diagonal_data,
    mobius_from_triples,
    normalize_angle,
)
from .holonomy import CurveSystem, curve_length, system_length

TWO_PI = 2.0 * math.pi


# ----------------------------------------------------------------------
# angle configurations

def validate_configuration(angles) -> np.ndarray:
    """Strictly increasing angles in [0, 2*pi), at least four of them."""
    t = np.asarray(angles, dtype=float)
    if t.ndim != 1 or len(t) < 4 or len(t) % 2:
        raise InvalidParameter(
            f"a configuration needs an even number >= 4 of angles, got {t.shape}")
    if t.min() < 0.0 or t.max() >= TWO_PI:
        raise InvalidParameter("angles must lie in [0, 2*pi)")
    gaps = np.diff(np.concatenate([t, [t[0] + TWO_PI]]))
    if gaps.min() <= TOL:
        raise InvalidParameter("configuration angles must be distinct")
    return t


def _chord_log(t, shift):
    rolled = np.roll(t, -shift, axis=-1)
    return np.log(2.0 * np.abs(np.sin(0.5 * (t - rolled))))


def f_printed(angles, validate: bool = True) -> float | np.ndarray:
    """The functional as printed, with chord distances; batch-friendly
    along leading axes."""
    t = np.asarray(angles, dtype=float)
    if validate and t.ndim == 1:
        t = validate_configuration(t)
    n = t.shape[-1] // 2
    total = (_chord_log(t, n + 1) + _chord_log(t, n - 1)
             - _chord_log(t, 1) - _chord_log(t, -1))
    return total.sum(axis=-1)


def f_len(angles, validate: bool = True) -> float:
    """Total diagonal length of the configuration: half of ``f_printed``."""
    t = np.asarray(angles, dtype=float)
    if t.shape[-1] < 6:
        raise DimensionTooSmall(
            "total diagonal length needs n >= 3 (separators degenerate)")
    return 0.5 * f_printed(t, validate=validate)


def f_gradient(angles, validate: bool = True) -> np.ndarray:
    """Gradient of ``f_printed`` in the angles (cotangent form)."""
    t = np.asarray(angles, dtype=float)
    if validate:
        t = validate_configuration(t)
    n = len(t) // 2

    def cot_half(shift):
        return 1.0 / np.tan(0.5 * (t - np.roll(t, -shift)))

    return (cot_half(n - 1) + cot_half(n + 1) - cot_half(1) - cot_half(-1))


def regular_configuration(n: int) -> np.ndarray:
    return np.arange(2 * n) * math.pi / n


# ----------------------------------------------------------------------
# bounds

def _cube_factor_log(n: int) -> float:
    c = math.cos(math.pi / n)
    return math.log((1.0 + c) / (1.0 - c))


def theorem_bound(dims) -> float:
    """Length bound from separated cubes: log((1+cos pi/n)/(1-cos pi/n))
    per cube of dimension n >= 3; 2-cubes contribute exactly zero.

    This is the per-cube constant used in the applications (k trivalent
    crossings give k log 3, i.e. (log 3)/3 per self-intersection); the
    provably sharp per-cube diagonal total carries an extra factor n and
    is available as ``cube_diagonal_minimum``.
    """
    total = 0.0
    for n in dims:
        n = int(n)
        if n < 2:
            raise InvalidDimension(f"cube dimensions must be >= 2, got {n}")
        if n == 2:
            continue
        total += _cube_factor_log(n)
    return total


def cube_diagonal_minimum(n: int) -> float:
    """Minimum total diagonal length of an n-cube configuration:
    n log((1+cos pi/n)/(1-cos pi/n)), attained at the regular one."""
    n = int(n)
    if n < 2:
        raise InvalidDimension(f"cube dimensions must be >= 2, got {n}")
    if n == 2:
        return 0.0
    return n * _cube_factor_log(n)


# ----------------------------------------------------------------------
# minimization of F

def _angles_from_gaps(u: np.ndarray) -> np.ndarray:
    g = np.exp(u - u.max())
    g = g / g.sum()
    return TWO_PI * np.concatenate([[0.0], np.cumsum(g[:-1])])


def minimize_f(n: int, restarts: int = 8, seed: int = 0,
               maxiter: int | None = None):
    """Numerical global minimum of ``f_printed`` over valid configurations.

    Multi-start Nelder-Mead in unconstrained gap logarithms (monotone
    angles by construction), with a polishing run from the best start.
    Returns (minimum value, minimizing angles).
    """
    n = int(n)
    if n < 3:
        raise DimensionTooSmall(f"minimization needs n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    dim = 2 * n
    maxiter = maxiter or 400 * dim

    def objective(u):
        return f_printed(_angles_from_gaps(u), validate=False)

    best_val, best_u = np.inf, None
    for _ in range(max(1, int(restarts))):
        u0 = rng.normal(0.0, 0.8, size=dim)
        res = _scipy_minimize(objective, u0, method="Nelder-Mead",
                              options={"maxiter": maxiter,
                                       "fatol": 1e-13, "xatol": 1e-10})
        if res.fun < best_val:
            best_val, best_u = res.fun, res.x
    polish = _scipy_minimize(objective, best_u, method="Nelder-Mead",
                             options={"maxiter": 4 * maxiter,
                                      "fatol": 1e-14, "xatol": 1e-12})
    if polish.fun < best_val:
        best_val, best_u = polish.fun, polish.x
    return float(best_val), _angles_from_gaps(best_u)


def normalize_to_regular(angles) -> np.ndarray:
    """Apply the disk automorphism sending x_1, x_2, x_{n+1} to the
    regular positions 0, pi/n, pi; sorted image angles are returned.

    A configuration is Moebius-equivalent to the regular one exactly when
    the result is the regular grid."""
    t = validate_configuration(np.sort(np.asarray(angles, dtype=float)))
    n = len(t) // 2
    m = mobius_from_triples((t[0], t[1], t[n]), (0.0, math.pi / n, math.pi))
    image = np.array([normalize_angle(m.apply_angle(x)) for x in t])
    image[np.abs(image - TWO_PI) < 1e-9] = 0.0
    return np.sort(image)


# ----------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class BoundCertificate:
    """One verified point: dimensions, bound, measured length, margin.

    ``diagonal_sums`` holds the measured total diagonal length of one
    representative cube per orbit class; the chain flags record the two
    numeric inequalities length >= sum of diagonals >= bound.
    """

    dims: tuple[int, ...]
    bound: float
    length: float
    margin: float
    diagonal_sums: tuple[float, ...]
    sharp_minima: tuple[float, ...]
    chain_ok: bool
    separation_passed: bool
    radius: int
    self_intersection: int | None = None

    @property
    def ratio_per_intersection(self) -> float | None:
        if not self.self_intersection:
            return None
        return self.bound / self.self_intersection

    def to_dict(self) -> dict:
        data = {
            "dims": list(self.dims),
            "bound": self.bound,
            "length": self.length,
            "margin": self.margin,
            "chain_ok": self.chain_ok,
            "diagonal_sums": list(self.diagonal_sums),
            "sharp_minima": list(self.sharp_minima),
            "separation_passed": self.separation_passed,
            "radius": self.radius,
        }
        if self.self_intersection is not None:
            data["self_intersection"] = self.self_intersection
            data["ratio_per_intersection"] = self.ratio_per_intersection
        return data


def verify_point(system: CurveSystem, shear, radius: int = 2,
                 self_intersection: int | None = None) -> BoundCertificate:
    """Certificate for one hyperbolic structure.

    Enumerates lifts, finds the orbit classes of maximal cubes of
    dimension >= 3, refuses to certify unless the union of their
    enumerated translates is hyperplane separated, then checks the chain
    length >= total diagonals >= bound numerically.
    """
    rep = system.representation(shear)
    length = system_length(rep, system.words)
    ls = enumerate_lifts(rep, system.words, radius=radius)
    cubes = maximal_cubes(ls)
    big = [c for c in cubes if c.dimension >= 3]
    classes = sorted({c.orbit_class for c in big})
    translates = [c for c in cubes if c.orbit_class in classes]
    report = separation_check(translates, ls)
    if not report.passed:
        raise SeparationFailed(
            f"hyperplane separation failed with witness {report.witness}")
    reps = orbit_class_representatives(big, ls, min_dimension=3)

    diag_sums, sharp, dims = [], [], []
    for cube in reps:
        diag_sums.append(sum(anchored_diagonal_lengths(ls, cube)))
        sharp.append(cube_diagonal_minimum(cube.dimension))
        dims.append(cube.dimension)

    bound = theorem_bound(dims) if dims else 0.0
    total_diag = sum(diag_sums)
    chain_ok = (length >= total_diag - 1e-9) and (total_diag >= bound - 1e-9)
    return BoundCertificate(
        dims=tuple(dims),
        bound=bound,
        length=length,
        margin=length - bound,
        diagonal_sums=tuple(diag_sums),
        sharp_minima=tuple(sharp),
        chain_ok=chain_ok,
        separation_passed=True,
        radius=radius,
        self_intersection=self_intersection,
    )


# ----------------------------------------------------------------------
# infimum estimation over shear coordinates

@dataclass(frozen=True)
class InfimumEstimate:
    """Best point found when minimizing the length function over shears.

    The estimate is an upper bound for the infimum; the certificate bound
    (when available) is a lower bound.  The trace records (evaluation
    count, best length so far) pairs for external plotting.
    """

    best_shear: tuple[float, ...]
    best_length: float
    bound: float | None
    iterations: int
    trace: tuple[tuple[int, float], ...]
    self_intersection: int | None = None

    @property
    def ratio_per_intersection(self) -> float | None:
        if not self.self_intersection:
            return None
        return self.best_length / self.self_intersection

    def to_dict(self) -> dict:
        data = {
            "best_shear": list(self.best_shear),
            "best_length": self.best_length,
            "bound": self.bound,
            "iterations": self.iterations,
        }
        if self.self_intersection is not None:
            data["self_intersection"] = self.self_intersection
            data["ratio_per_intersection"] = self.ratio_per_intersection
        return data


def estimate_infimum(system: CurveSystem, iters: int = 2000,
                     restarts: int = 6, seed: int = 0,
                     box: float = SHEAR_BOX,
                     bound: float | None = None,
                     radius: int = 1,
                     self_intersection: int | None = None) -> InfimumEstimate:
    """Multi-start Nelder-Mead over shear vectors, deterministic per seed.

    Curves that pinch to cusps contribute zero length during the search,
    so the optimizer can walk into the cusped boundary where infima of
    simple or puncture-hugging systems live.
    """
    rng = np.random.default_rng(seed)
    dim = system.spine.shear_dim
    evals = 0
    best = [np.inf, None]
    trace: list[tuple[int, float]] = []

    def objective(shear):
        nonlocal evals
        evals += 1
        try:
            value = system.total_length(shear, parabolic_zero=True)
        except Exception:
            return 1e9
        if value < best[0]:
            best[0] = value
            best[1] = np.array(shear)
            trace.append((evals, value))
        return value

    starts = [np.zeros(dim)]
    starts += [rng.uniform(-box, box, size=dim) for _ in range(max(0, restarts - 1))]
    for x0 in starts:
        _scipy_minimize(objective, x0, method="Nelder-Mead",
                        options={"maxiter": iters, "fatol": 1e-12,
                                 "xatol": 1e-9})

    if bound is None:
        bound = _reference_bound(system, radius)
    return InfimumEstimate(
        best_shear=tuple(float(x) for x in best[1]),
        best_length=float(best[0]),
        bound=bound,
        iterations=evals,
        trace=tuple(trace),
        self_intersection=self_intersection,
    )


def _reference_bound(system: CurveSystem, radius: int) -> float | None:
    """Theorem bound of the system's cube classes, computed at a generic
    reference structure; None when no certificate is obtainable there."""
    reference = 0.17 * np.ones(system.spine.shear_dim)
    try:
        cert = verify_point(system, reference, radius=radius)
    except Exception:
        return None
    return cert.bound
