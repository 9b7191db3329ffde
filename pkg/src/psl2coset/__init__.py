"""Finite-field 2x2 matrix groups and full-coset order scans.

The package answers one family of questions: inside PSL2(q) or PGL2(q),
is there a coset gH of a small subgroup H all of whose elements have
order divisible by a prime p?  It provides exact field arithmetic,
projective matrix groups, the trace-set order criterion, brute-force and
variety-based witness searches, and rational point counts for the
varieties behind the asymptotic existence argument.
"""

__version__ = "0.1.0"

from .ffield import FieldCtx, FieldElem, make_field, parse_field_text, prime_power
from .mat2 import (PSL, PGL, Mat2, ProjPoint, mat, mat_from_text, canon,
                   psl2_order, proj_order)
from .oracle import TraceSet, build_trace_set, order_divisible, order_divisible_fast
from .subgrp import (Subgroup, closure, sylow_p_diag, dihedral_2p, klein_four,
                     normalizer, is_A4)
from .search import (Witness, brute_search, variety_search, run_task, scan_q,
                     task_admissible, coset_all_divisible, make_witness,
                     verify_paige, verify_thompson27, verify_char2)
from .variety import (PointCount, count_points_X, count_points_Y,
                      x_fiber_products, lang_weil_report, point_to_witness)
from .backend import BACKEND_NAME, available_backends, get_backend

__all__ = [
    "FieldCtx", "FieldElem", "make_field", "parse_field_text", "prime_power",
    "PSL", "PGL", "Mat2", "ProjPoint", "mat", "mat_from_text", "canon",
    "psl2_order", "proj_order",
    "TraceSet", "build_trace_set", "order_divisible", "order_divisible_fast",
    "Subgroup", "closure", "sylow_p_diag", "dihedral_2p", "klein_four",
    "normalizer", "is_A4",
    "Witness", "brute_search", "variety_search", "run_task", "scan_q",
    "task_admissible", "coset_all_divisible", "make_witness",
    "verify_paige", "verify_thompson27", "verify_char2",
    "PointCount", "count_points_X", "count_points_Y", "x_fiber_products",
    "lang_weil_report", "point_to_witness",
    "BACKEND_NAME", "available_backends", "get_backend",
    "__version__",
]
