"""Place k circular sensors guarding a polygon's perimeter or region with
the smallest common radius."""

from .api import IncompatibleMethod, Solution, solve
from .cont import cont_feasible, cont_feasible_multi, min_discs_for_chain, search_cont, solve_cont
from .deployment import CoverCheck, Deployment, covering_radius, verify_cover
from .estimators import ContiguousCover, FarthestFirstCover, GridCover, SensorPlacement
from .geometry import (
    Disc,
    GeometryError,
    Point2,
    PolygonSet,
    Ring,
    min_enclosing_disc,
    perimeter_length,
    point_in_polygon,
    polygon_area,
)
from .gonzalez import farthest_first, solve_gonzalez
from .ilp import (
    BranchAndBound,
    CoverModel,
    FeasibilityOutcome,
    HighsSolver,
    SolverBudgetExceeded,
    build_cover_model,
    solve_feasibility,
    solve_ilp_perimeter,
    solve_ilp_region,
)
from .instances import InstanceSpec, plus_polygon, random_simple_polygon, unit_square
from .sampling import GridSpec, SampleSet, sample_perimeter, sample_region

__version__ = "0.1.0"

__all__ = [
    "BranchAndBound", "ContiguousCover", "CoverCheck", "CoverModel", "Deployment", "Disc",
    "FarthestFirstCover", "FeasibilityOutcome", "GeometryError", "GridCover", "GridSpec",
    "HighsSolver", "IncompatibleMethod", "InstanceSpec", "Point2", "PolygonSet", "Ring",
    "SampleSet", "SensorPlacement", "Solution", "SolverBudgetExceeded", "build_cover_model",
    "cont_feasible", "cont_feasible_multi", "covering_radius", "farthest_first",
    "min_discs_for_chain", "min_enclosing_disc", "perimeter_length", "plus_polygon",
    "point_in_polygon", "polygon_area", "random_simple_polygon", "sample_perimeter",
    "sample_region", "search_cont", "solve", "solve_cont", "solve_feasibility",
    "solve_gonzalez", "solve_ilp_perimeter", "solve_ilp_region", "unit_square",
    "verify_cover",
]
