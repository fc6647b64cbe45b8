"""adicspace: ordered Bratteli diagrams, edge labelings, and dimension spaces."""

__version__ = "0.1.0"

from .bratteli import (FinitePath, OrderedBratteliDiagram, circulant_diagram,
                       cylinder_measure, enumerate_paths, morse_diagram,
                       odometer_diagram, predecessor, successor, validate_diagram)
from .dimspace import DimensionSpace, build_matrices, check_harmonic, horizon_norm, \
    partial_product, state_eval
from .intervals import RatInterval
from .labeling import EdgeLabeling, cocycle, label_edges, path_bsum
from .laurent import LaurentMatrix, LaurentPoly, lp_arith, mat_mul, weighted_one_norm
from .rotation import CFExpansion, GrowthRule, alpha_n, convergents, rank_one_gap, \
    rank_one_polys, rotation_diagram, summability_report
from .stacking import SkyscraperPoint, Tower, build_tower, compare_with_rotation, \
    skyscraper_step, tower_map
from .walk import WalkState, exact_distribution, simulate, step_distribution, tv_distance
