"""curvebound: curve systems on hyperbolic surfaces, their dual cube
complexes, and certified lower bounds for length functions."""

from . import bounds, cubes, geometry, holonomy, reports, ribbon
from .bounds import (
    BoundCertificate,
    InfimumEstimate,
    cube_diagonal_minimum,
    estimate_infimum,
    f_gradient,
    f_len,
    f_printed,
    minimize_f,
    theorem_bound,
    verify_point,
)
from .cubes import (
    Cube,
    Lift,
    LiftSet,
    diagonal_injectivity_check,
    enumerate_lifts,
    geometric_self_intersection,
    maximal_cubes,
    separation_check,
)
from .geometry import (
    CubeConfiguration,
    Geodesic,
    Hshape,
    Isometry,
    axis,
    classify_isometry,
    crosses_intersect,
    cube_configuration,
    diagonal_data,
    link,
    translation_length,
)
from .holonomy import (
    CurveSystem,
    Representation,
    Spine,
    build_rep,
    curve_length,
    discreteness_sanity,
)
from .ribbon import (
    EvenRibbonGraph,
    GluingSpec,
    boundary_walks,
    build_graph,
    check_gluing,
    combinatorial_self_intersection,
    curve_words,
    extract_curves,
    figure_eight_graph,
    loop_graph,
    tau_graph,
    torus_spine_graph,
)

__version__ = "0.1.0"
