"""Quaternionic slice-hyperholomorphic kernels and the harmonic, S- and F-functional calculi.

Submodules:

- :mod:`qharmonic.quat`: quaternion arithmetic, imaginary units, spheres.
- :mod:`qharmonic.func`: slice function series, Fueter operators, finite differences.
- :mod:`qharmonic.kernels`: Cauchy-type kernels, identity residuals, kernel series.
- :mod:`qharmonic.qmatrix`: quaternionic matrices, commuting tuples, S-spectrum.
- :mod:`qharmonic.contour`: slice Cauchy domains and trapezoidal contour integrals.
- :mod:`qharmonic.calculus`: functional calculi, moments, projectors, resolvent equations.
- :mod:`qharmonic.suites` / :mod:`qharmonic.cli`: verification suites and the ``qharm`` command.
"""

from . import calculus, contour, errors, func, kernels, qmatrix, quat
from .calculus import *  # noqa: F401,F403
from .contour import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .func import *  # noqa: F401,F403
from .kernels import *  # noqa: F401,F403
from .qmatrix import *  # noqa: F401,F403
from .quat import *  # noqa: F401,F403

__version__ = "0.1.0"

__all__ = (
    quat.__all__ + func.__all__ + kernels.__all__ + qmatrix.__all__ + contour.__all__ + calculus.__all__
    + errors.__all__
)
