"""Toolkit for unicast index coding: instances, bounds, codes, search."""

from .errors import (
    AlphabetMismatch,
    BudgetExceeded,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidBasis,
    LengthMismatch,
    NotAcyclic,
    SelfInclusion,
    UnknownCode,
    UnknownInstance,
    UnsupportedField,
)
from .fields import (
    FieldSpec,
    Matrix,
    SUPPORTED_SIZES,
    column_block,
    dot,
    field_make,
    matmul,
    matrix_from_text,
    matrix_to_text,
    nullspace,
    rank,
    rate_of,
    solve,
)
from .instances import (
    CATALOG_NAMES,
    CatalogEntry,
    Instance,
    KnownBound,
    catalog_get,
    compose_noway,
    compose_twoway,
    from_interfering,
    instance_from_json,
    instance_to_json,
    instance_validate,
    interfering_sets,
    load_instance,
    restrict,
)
from .graphs import (
    MaisResult,
    SideInfoGraph,
    acyclic_witness,
    is_acyclic,
    is_independent,
    is_minimal_cyclic,
    mais,
)
from .lincode import (
    LINEAR_CATALOG_NAMES,
    LinearCode,
    LinearReport,
    acyclic_rank_check,
    linear_catalog_get,
    load_linear_code,
    verify_linear,
    verify_linear_subset,
)
from .gencode import (
    GENERAL_CATALOG_NAMES,
    ConfusabilityReport,
    DecoderReport,
    GeneralCode,
    code_to_truthtable,
    compose_codes,
    encode,
    from_linear,
    general_catalog_get,
    linear_encoder_view,
    load_general_code,
    truthtable_to_code,
    verify_confusability,
    verify_decoders,
)
from .search import (
    SearchOutcome,
    SearchProblem,
    Span,
    brute_force_subinstance,
    scalar_code_search,
    scalar_minrank,
)
from .repro import CLAIMS, ReproEntry, ReproReport, repro_run

__version__ = "0.1.0"
