"""Python interface to the qagap spectral-gap toolkit.

The heavy lifting lives in the compiled extension ``_qagap``; this package
re-exports it and adds small json-building helpers so model families can be
described with plain keyword arguments.
"""

import json as _json

from _qagap import (
    GapCurve,
    LocalMinimum,
    count_nodes,
    first_order_pt,
    fit_scaling,
    gap_curve,
    ground_profile,
    hamming_weight_expectation,
    min_gap,
    noise_ensemble,
    optimize_lambda,
    sector_crossing_profile,
    surface_minima,
    validate_instance,
    villain_potential,
)

__all__ = [
    "GapCurve",
    "LocalMinimum",
    "count_nodes",
    "first_order_pt",
    "fit_scaling",
    "gap_curve",
    "ground_profile",
    "hamming_weight_expectation",
    "min_gap",
    "model",
    "noise_ensemble",
    "optimize_lambda",
    "sector_crossing_profile",
    "surface_minima",
    "validate_instance",
    "villain_potential",
]


def model(kind, n, **kwargs):
    """JSON model description accepted by every solver entry point.

    Supported kinds: ``p-spin``, ``p-spin-alt-interp``, ``two-spin``,
    ``two-spin-alt-catalyst``, ``ring-ising``. Keyword arguments map onto the
    configuration keys (``p``, ``lambda_``, ``h1``, ``h2``, ``lambda_star``,
    ``alpha``, ``instance``, ``noise``).
    """
    spec = {"kind": kind, "n": n}
    for key, value in kwargs.items():
        spec[key.rstrip("_")] = value
    return _json.dumps(spec)
