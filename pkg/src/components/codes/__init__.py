from components.codes.classify import (
    ClassificationFailure,
    ClassificationVerdict,
    FailureKind,
    MatrixTemplate,
    SearchResult,
    StandardForm,
    classify_equals_oracle,
    classify_s1,
    completion_search,
    standardize,
)
from components.codes.construct import (
    S1Blueprint,
    SeedRole,
    build_ell1_general_s,
    build_ell1_s1,
    build_s1,
    default_blueprint,
    minimal_ell1_field,
    minimal_s1_field,
    seed_from_rs,
)
from components.codes.decode import (
    DecodeResult,
    PmdsDecoder,
    ReceivedWord,
    StructuredParityCheck,
    build_structured_H,
    decode_erasures,
    decode_generic,
    decode_stripes,
    encode,
)
from components.codes.mds import (
    MdsReport,
    RsVariant,
    is_mds_generator,
    is_superregular,
    mds_code_exists,
    mds_generator,
    parity_check,
    rs_generator,
    singular_subset,
    systematic_form,
    systematic_mds_equivalence,
)
from components.codes.pmds import (
    ErasurePattern,
    FailingStage,
    PmdsParams,
    PmdsVerdict,
    field_size_bound_general_s,
    field_size_bound_s1,
    mr_check,
    necessary_conditions_general_s,
    pattern_correctable,
    pmds_oracle,
    pmds_pattern_family,
    punctures,
    rank_requirements,
    trivial_case_check,
)

__all__ = [
    "ClassificationFailure",
    "ClassificationVerdict",
    "FailureKind",
    "MatrixTemplate",
    "SearchResult",
    "StandardForm",
    "classify_equals_oracle",
    "classify_s1",
    "completion_search",
    "standardize",
    "S1Blueprint",
    "SeedRole",
    "build_ell1_general_s",
    "build_ell1_s1",
    "build_s1",
    "default_blueprint",
    "minimal_ell1_field",
    "minimal_s1_field",
    "seed_from_rs",
    "DecodeResult",
    "PmdsDecoder",
    "ReceivedWord",
    "StructuredParityCheck",
    "build_structured_H",
    "decode_erasures",
    "decode_generic",
    "decode_stripes",
    "encode",
    "MdsReport",
    "RsVariant",
    "is_mds_generator",
    "is_superregular",
    "mds_code_exists",
    "mds_generator",
    "parity_check",
    "rs_generator",
    "singular_subset",
    "systematic_form",
    "systematic_mds_equivalence",
    "ErasurePattern",
    "FailingStage",
    "PmdsParams",
    "PmdsVerdict",
    "field_size_bound_general_s",
    "field_size_bound_s1",
    "mr_check",
    "necessary_conditions_general_s",
    "pattern_correctable",
    "pmds_oracle",
    "pmds_pattern_family",
    "punctures",
    "rank_requirements",
    "trivial_case_check",
]
