"""Quasi-unbiased and weakly unbiased Hadamard matrices through binary and Z4 codes."""
from .signmatrix import (PairClassification, PairKind, SignMatrix, classify_pair, check_mutual,
                         feasible_qub_params, feasible_weak_params, is_hadamard, is_weighing,
                         load_matrix, save_matrix)
from .binary import BinaryCode, check_F2, check_weakF2, check_weakIIF2, distance_distribution
from .bounds import lp_bound, qub_bounds, weakII_bounds, verify_association_scheme
from .z4 import Z4LinearCode, check_z4_qub, check_z4_weak, gray_map, z4_equivalent
from .canonical import canonical_form, codes_equivalent
from .clique import find_mate, find_qub_mate, max_clique
from .search import classify_binary_extensions, classify_z4_extensions, verify_fixture_tables

__version__ = "0.1.0"
