"""Two-layer networks trained with SGD on linearly separable data.

Thin python surface over the C++ core: trainer, closed-form bound
calculators, and the adversarial / ReLU counterexample constructions.
"""

from linseplab._core import *  # noqa: F401,F403
from linseplab._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc
