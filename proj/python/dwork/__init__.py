"""Python bindings for the dwork hypergeometric criteria library.

Parameters are passed as literals such as ``"d=9;a=0,0,0;b=1,2,6"``.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    SCHEMA_VERSION,
    ParamError,
    SearchSpecError,
    bm,
    canonical_form,
    det_condition,
    find_c,
    hodge_degrees,
    hodge_newton,
    is_regular,
    jordan_blocks,
    monodromy,
    normalize,
    scale,
    validate,
    verify_annihilation,
    zigzag_regular,
)

__all__ = [
    "SCHEMA_VERSION",
    "ParamError",
    "SearchSpecError",
    "bm",
    "canonical_form",
    "check",
    "det_condition",
    "find_c",
    "hodge_degrees",
    "hodge_newton",
    "is_regular",
    "jacobi",
    "jordan_blocks",
    "monodromy",
    "normalize",
    "scale",
    "search",
    "validate",
    "verify_annihilation",
    "zigzag_regular",
]


def check(param, profile="strict", U=None):
    """Full criteria report as a dict (same schema as ``dwork check --format json``)."""
    return json.loads(_core.report_json(param, profile, U))


def search(partition, d_min=3, d_max=30, profile="strict", witness=False, dedup=False, jobs=1, limit=None):
    """Run a search and return the list of report dicts."""
    return json.loads(_core.search_json(list(partition), d_min, d_max, profile, witness, dedup, jobs, limit))


def jacobi(ell, d, a, generator=None):
    """Jacobi sum as coefficients in the power basis of Q(zeta_d)."""
    return [Fraction(c) for c in _core.jacobi(ell, d, list(a), generator)]
