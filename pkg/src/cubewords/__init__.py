"""Exact symbolic dynamics of cube billiard words in a golden-ratio direction."""

from .billiard import (
    BilliardWord,
    Direction,
    GOLDEN_DIRECTION,
    StartPoint,
    delete_letter,
    letter_frequencies,
    square_trace,
    trace,
    trace_letters,
    validate,
)
from .directional import (
    DirectionalCensus,
    UnionComplexity,
    census,
    sample_schedule,
    union_complexity,
)
from .exactnum import (
    FieldNumber,
    PHI,
    PHI_SQRT2,
    SQRT2,
    parse_field_number,
    reduce_mod1,
    sign,
)
from .returns import (
    CellLabel,
    CirclePartition,
    FacePartition,
    cell_of,
    circle_partition,
    first_return_word,
    kth_return_prediction,
    reconstruct,
    return_words,
)
from .rotation import (
    RotationCoding,
    TRANSLATION_ANGLE,
    coding_complexity,
    rotation_coding,
    saddle_connection,
    zmodule_rank,
)
from .verification import CriterionResult, VerificationContext, run_all
from .words import (
    ComplexityProfile,
    FactorIndex,
    SuffixAutomaton,
    cassaigne_check,
    complexity,
    is_sturmian,
    special_factors,
)

__all__ = [
    "BilliardWord",
    "CellLabel",
    "CirclePartition",
    "ComplexityProfile",
    "CriterionResult",
    "Direction",
    "DirectionalCensus",
    "FacePartition",
    "FactorIndex",
    "FieldNumber",
    "GOLDEN_DIRECTION",
    "PHI",
    "PHI_SQRT2",
    "RotationCoding",
    "SQRT2",
    "StartPoint",
    "SuffixAutomaton",
    "TRANSLATION_ANGLE",
    "UnionComplexity",
    "VerificationContext",
    "cassaigne_check",
    "cell_of",
    "census",
    "circle_partition",
    "coding_complexity",
    "complexity",
    "delete_letter",
    "first_return_word",
    "is_sturmian",
    "kth_return_prediction",
    "letter_frequencies",
    "parse_field_number",
    "reconstruct",
    "reduce_mod1",
    "return_words",
    "rotation_coding",
    "run_all",
    "saddle_connection",
    "sample_schedule",
    "sign",
    "special_factors",
    "square_trace",
    "trace",
    "trace_letters",
    "union_complexity",
    "validate",
    "zmodule_rank",
]

__version__ = "0.1.0"
