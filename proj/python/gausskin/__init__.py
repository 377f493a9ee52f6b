"""Squeezed coherent states of quadratic Hamiltonians.

Thin re-export of the compiled core: symplectic propagation, the modified
Iwasawa factorization, Gaussian state evolution, phase-space distributions,
and the thermodynamic observables.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc if _core_doc else __doc__
