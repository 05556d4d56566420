"""cot/cothの除去可能特異点を含む被積分関数の[0, 1]上の適応積分を提供するモジュール"""

from .integrand import (
    CotKind,
    ExpSum,
    IntegrandSpec,
    SmoothRemainder,
    singular_points,
)
from .integrator import (
    QuadratureResult,
    integrate,
)
from .moments import (
    expm1_integral,
    legendre_moments,
    pole_integral,
)
