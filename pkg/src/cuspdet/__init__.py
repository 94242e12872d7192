"""cuspdet: determinants, regularized traces and torsion assembly for
cusp-type Sturm-Liouville operators.

Subpackages and modules:

* ``specfun``      modified Bessel functions (compiled kernel + fallback)
* ``asymptote``    polyhomogeneous expansions, regularized limits/integrals
* ``cuspops``      operator models, Green functions, resolvent traces
* ``detzeta``      zeta-regularized determinants and determinant ratios
* ``crosssection`` cross-section data model and coclosed zeta functions
* ``anomaly``      graded algebra, Berezin integral, boundary anomaly
* ``torsion``      closed-form torsion and defect assembly
* ``cli``          command-line front end (``python -m cuspdet``)
"""

__version__ = "0.1.0"

from .specfun import backend_name  # noqa: F401
