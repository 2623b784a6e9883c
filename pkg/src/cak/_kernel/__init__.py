"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python twin is a
drop-in replacement with identical outputs.  Set CAK_KERNEL=pure or
CAK_KERNEL=compiled to force a backend (the latter raises if the extension
was not built).
"""

import os

_choice = os.environ.get("CAK_KERNEL", "auto")
if _choice not in ("auto", "pure", "compiled"):
    raise RuntimeError(f"CAK_KERNEL must be auto, pure or compiled, not {_choice!r}")

if _choice == "pure":
    from .pure import add_scaled, axpy_terms, divides_key, mul_terms, normal_form_terms

    BACKEND = "pure"
else:
    try:
        from ._speedups import (  # type: ignore[attr-defined]
            add_scaled,
            axpy_terms,
            divides_key,
            mul_terms,
            normal_form_terms,
        )

        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        from .pure import (
            add_scaled,
            axpy_terms,
            divides_key,
            mul_terms,
            normal_form_terms,
        )

        BACKEND = "pure"

__all__ = [
    "BACKEND",
    "add_scaled",
    "axpy_terms",
    "divides_key",
    "mul_terms",
    "normal_form_terms",
]
