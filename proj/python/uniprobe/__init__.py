"""Single-shot discrimination of unitary channels with product, maximally
entangled and arbitrary pure probes."""

from ._core import (
    UniprobeError,
    d_maxent,
    d_product,
    d_with_probe,
    discriminate,
    evaluate,
    min_hull_norm,
    optimal_entangled_probe,
    optimize,
    pair_report,
    probe_max_entangled,
    probe_v_family,
    probe_w_family,
    run_checks,
    swapped_pair,
    t_trio,
    table_v,
    table_w,
    v_family,
    w_family,
)

__all__ = [
    "UniprobeError",
    "d_maxent",
    "d_product",
    "d_with_probe",
    "discriminate",
    "evaluate",
    "min_hull_norm",
    "optimal_entangled_probe",
    "optimize",
    "pair_report",
    "probe_max_entangled",
    "probe_v_family",
    "probe_w_family",
    "run_checks",
    "swapped_pair",
    "t_trio",
    "table_v",
    "table_w",
    "v_family",
    "w_family",
]
