"""Association measures and sign-agreement checks for 2x2 tables."""

from .errors import (
    DegenerateMarginal,
    EmptyConditioningClass,
    EmptySpace,
    Indeterminate,
    NegativeCell,
    NotExact,
    OutOfRange,
    SumOutOfTolerance,
    TableError,
    ZeroCell,
)
from .family import CouplingFamily, F_of_t, G_of_t, make_family, table_from_t, table_from_theta
from .measures import MeasureReport, classify, delta, full_report
from .table import (
    EXACT,
    FLOAT,
    CountTable,
    MarginalPair,
    ProbTable,
    Sign,
    SignPolicy,
    complement,
    from_counts,
    from_probs,
    marginals,
    transpose,
)

__version__ = "0.1.0"
