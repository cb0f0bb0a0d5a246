"""Loop homology and homotopy decompositions of highly connected manifolds.

Exact rational arithmetic throughout.  The main entry points are
:func:`present` (descriptor to quadratic presentation),
:func:`standard_basis` (Lyndon basis of the quadratic Lie algebra) and
:func:`build_report` (everything, cross-checked).
"""

from .errors import (
    ComplementError,
    DescriptorParseError,
    DomainError,
    InconsistencyError,
    LoopHomError,
    NonUnitError,
    RealizabilityError,
    SliceTooLargeError,
    UsageError,
    ValidationError,
)
from .lyndon import (
    LyndonBasisEntry,
    bracketing,
    is_lyndon,
    lyndon_words,
    standard_basis,
    standard_basis_for,
    standard_factorization,
)
from .manifold import (
    LowRankType,
    ManifoldDescriptor,
    QuadraticPresentation,
    ValidatedManifold,
    Violation,
    build_relation,
    check,
    classify_low_rank,
    hyperbolicity,
    normalize_basis,
    present,
    validate,
)
from .normal_forms import (
    HilbertTable,
    LeadingPair,
    QuotientEngine,
    avoiding_words,
    hilbert_from_series,
    ideal_slice_rank,
    quotient_coordinates,
    verify_complement_basis,
)
from .report import (
    PiDecomposition,
    ReportConfig,
    build_report,
    loop_homology_report,
    moore_report,
    rational_ranks,
    sphere_decomposition,
)
from .series import (
    Series,
    lie_dims_from_denominator,
    loop_denominator,
    moebius,
    series_inverse,
    series_log,
    series_mul,
    witt_product,
)
from .words import (
    AlgebraElement,
    Alphabet,
    Leaf,
    Node,
    QuadraticRelation,
    enumerate_words,
    expand_bracket_graded,
    expand_bracket_ungraded,
    multiply,
)

__version__ = "0.1.0"
