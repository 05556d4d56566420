"""調和数列、部分Fourier和、Lerch型の部分和、Lagrangeの恒等式の閉形式を提供するモジュール"""

from .fourier import (
    fourier_c,
    fourier_c_even,
    fourier_c_odd,
    fourier_s,
    fourier_s_even,
    fourier_s_odd,
)
from .lagrange import (
    SeriesKind,
    TrigKind,
    lagrange_closed_form,
    lagrange_series_check,
)
from .lerch import (
    lerch_partial,
    null_denominator_pair,
    polylog_partial,
)
from .numeric import to_mp
from .params import (
    FourierParams,
    LerchParams,
    ProgressionParams,
)
from .progression import (
    HPTable,
    IntegrandForm,
    hp_even,
    hp_exp,
    hp_odd,
    hp_order1,
    hp_recursive,
)
