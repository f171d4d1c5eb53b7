"""Kernel backend selection.

Imports the compiled extension when present, otherwise the numpy fallback.
``BACKEND`` names the active implementation; both expose the same functions
and agree to floating-point roundoff (the test suite asserts it).
"""

try:
    from clinicalqa.accel._ckernels import (  # type: ignore[attr-defined]
        dot_products,
        erbf_kernel_matrix,
        pairwise_sq_distances,
    )

    BACKEND = "cython"
except ImportError:
    from clinicalqa.accel._pykernels import (
        dot_products,
        erbf_kernel_matrix,
        pairwise_sq_distances,
    )

    BACKEND = "python"

__all__ = ["BACKEND", "dot_products", "erbf_kernel_matrix", "pairwise_sq_distances"]
