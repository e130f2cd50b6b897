"""qflag: exact computation with quantized flag manifolds.

Constructs type-1 representations of Drinfeld-Jimbo quantized enveloping
algebras over the exact field Q(s) (s a formal fractional power of q), the
braidings of their tensor categories, the Peter-Weyl realization of the
quantum coordinate algebras, the distinguished generators and quadratic
coordinate rings of the irreducible quantum flag manifolds, and the
holomorphic/anti-holomorphic first-order calculi used to compute truncated
spaces of holomorphic sections of the line modules.
"""

from ._kernel import KERNEL as kernel_backend
from .scalars import QContext, Scalar, eval_at, qbinom, qfact, qint

__version__ = "0.1.0"

__all__ = [
    "QContext",
    "Scalar",
    "eval_at",
    "kernel_backend",
    "qbinom",
    "qfact",
    "qint",
]
