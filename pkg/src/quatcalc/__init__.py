"""Differential calculus for functions of a quaternion variable."""

from .errors import (
    BranchPoint,
    ConfigInvalid,
    InvalidUnitImaginary,
    NearRealAxis,
    NearScalar,
    NonRealG,
    Overflow,
    QuatCalcError,
    SingularOperator,
    UnknownStudy,
    ZeroArgument,
    ZeroDivisor,
)
from .exp_log import exp, exp_first_order, log, log_first_order
from .quaternion import (
    DeltaSplit,
    PolarForm,
    Quaternion,
    conjugate,
    inverse,
    mul,
    polar_decompose,
    split_delta,
)
from .series import (
    PowerSeries,
    eval_embedded,
    general_first_order,
    general_first_order_commutator_form,
    leibnitz_check,
    recenter,
    second_order,
)

__version__ = "0.1.0"
