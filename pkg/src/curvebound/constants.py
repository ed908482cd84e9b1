"""Numerical tolerances and resource caps, overridable through the environment.

All coincidence tests in the package funnel through these constants so that
the tolerance policy lives in one place.
"""

import os


def _env_float(name, default):
    raw = os.environ.get(name)
    return float(raw) if raw else default


def _env_int(name, default):
    raw = os.environ.get(name)
    return int(raw) if raw else default


#: General coincidence tolerance: boundary-point collisions, trace
#: classification, inequality slack in certificates.
TOL = _env_float("CURVEBOUND_TOL", 1e-9)

#: Two axes are considered the same lift when their endpoint angles agree
#: to this tolerance (conjugate words frequently reproduce one axis).
AXIS_DEDUP_TOL = _env_float("CURVEBOUND_AXIS_TOL", 1e-7)

#: Lifts whose own endpoint gap falls below this floor are numerically
#: unresolvable in double precision (distant translates crowd toward a
#: fixed point) and are dropped from truncated orbit enumerations.
AXIS_GAP_FLOOR = _env_float("CURVEBOUND_AXIS_GAP_FLOOR", 1e-6)

#: Cap on the number of conjugating words enumerated for one lift set.
MAX_CONJUGATORS = _env_int("CURVEBOUND_MAX_CONJUGATORS", 500_000)

#: Default truncation radius for orbit enumeration.
DEFAULT_RADIUS = 4

#: Default half-width of the sampling box for shear vectors.
SHEAR_BOX = 3.0

#: Version tag stamped into every serialized report.
SCHEMA_VERSION = 1
