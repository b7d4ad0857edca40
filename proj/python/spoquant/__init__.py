"""Exact symbolic engine for equivariant quantization on the super circle.

All rational parameters cross the boundary as strings ("13/7"), half-integers
likewise ("3/2"); results are exact, never floating point.
"""

from spoquant._core import (
    CriticalWeightError,
    apply_operator,
    casimir_eigenvalue,
    casimir_residual,
    critical_hits,
    critical_values,
    normalize,
    normalize_symbol,
    quantize,
    quantize_terms,
    verify,
)

__all__ = [
    "CriticalWeightError",
    "apply_operator",
    "casimir_eigenvalue",
    "casimir_residual",
    "critical_hits",
    "critical_values",
    "normalize",
    "normalize_symbol",
    "quantize",
    "quantize_terms",
    "verify",
]
