"""hyperchow: exact symbolic verification for K3[2]-type hyperkahler fourfolds.

The package checks, at exact rational precision, the cohomological identities,
Chow-correspondence relation consequences, and Nakajima-operator computations
that govern the Lefschetz sl2 lifts and the Fourier/eigenspace decomposition
of the Chow ring of such fourfolds.
"""

from .quadspace import BBSpace
from .scalars import Scalar

__all__ = ["BBSpace", "Scalar"]
__version__ = "0.1.0"
