"""siegellab: numerics for bounded-type Siegel disks of quadratic rational maps.

Library layers, roughly bottom-up:

* ``cfrac``     -- continued fractions, convergents, rotation-number bookkeeping
* ``maps``      -- the normalized quadratic family, Moebius conjugations
* ``blaschke``  -- the symmetric degree-3 Blaschke family and its critical
                   parameterization
* ``rotation``  -- rotation numbers of the circle restrictions, prefactor tuning
* ``siegel``    -- Siegel-boundary approximation, cross ratios, quasicircle
                   diagnostics
* ``thurston``  -- combinatorial obstruction matrices and orbifold Euler
                   characteristics
* ``render``    -- orbit-trap rasterization of the disk and its preimages
* ``cli``       -- the ``siegellab`` command line tool
"""

from .errors import (
    SiegelLabError,
    DomainError,
    PoleError,
    LabelingError,
    HomeomorphismError,
    ConvergenceError,
    OrbitError,
)
from .plane import INF, is_inf
from .cfrac import RotationNumber, Convergent, continued_fraction, convergents, is_bounded_type

__version__ = "0.1.0"

__all__ = [
    "SiegelLabError",
    "DomainError",
    "PoleError",
    "LabelingError",
    "HomeomorphismError",
    "ConvergenceError",
    "OrbitError",
    "INF",
    "is_inf",
    "RotationNumber",
    "Convergent",
    "continued_fraction",
    "convergents",
    "is_bounded_type",
    "__version__",
]
