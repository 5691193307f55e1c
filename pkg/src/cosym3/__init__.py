"""Exact verification lab for flat 3-cosymplectic models.

The package materializes the coframe model of an almost-contact 3-structure
in exact rational arithmetic, verifies its operator algebra (including the
so(4,1) module structure on the eta-free sector), checks the induced Betti
number constraints, and computes the homology of the twisted seven-torus
quotient two independent ways.
"""

__version__ = "1.0.0"

from .exterior import Blade, ModelDims, Multivector  # noqa: F401
