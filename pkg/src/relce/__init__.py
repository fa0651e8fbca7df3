"""Desk-scale laboratory for two constructions over finite binary strings:
the rightmost full-depth path through a prefix-closed tree together with its
enumeration-witness set, and pair-code witness masks with the witness-removal
fixed point, danger sets, and finite-extension forcing."""
from __future__ import annotations

from .bitstrings import (
    as_bits,
    decode_pair,
    encode_pair,
    is_prefix,
    string_to_set,
)
from .enumop import (
    FALSE_POSITIVE,
    MISSING_AXIOM,
    EnumAxiom,
    EnumOperator,
    WitnessFailure,
    WitnessReport,
    verify_enum_witness,
)
from .errors import LabError, SchemaError
from .forcing import (
    DEFAULT_SCAN_CAP,
    AvoidanceResult,
    DangerCertificate,
    FixpointResult,
    FixpointStage,
    ForceDecision,
    ForceResult,
    MaskPreconditionError,
    NoCandidate,
    Requirement,
    ScanBudgetError,
    avoidance_check,
    danger_certificate,
    danger_member,
    fixpoint_remove_witnesses,
    force_meet_or_avoid,
    recover_members,
    witness_mask,
)
from .rightmost import (
    PrefixTree,
    RightmostResult,
    RightmostStage,
    StuckError,
    TreeValidationError,
    WitnessSet,
    complete_tree,
    random_tree,
    rightmost_construct,
    rightmost_oracle,
    single_path_tree,
    tree_from_json,
    validate_tree,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "as_bits",
    "is_prefix",
    "string_to_set",
    "encode_pair",
    "decode_pair",
    "EnumAxiom",
    "EnumOperator",
    "WitnessFailure",
    "WitnessReport",
    "verify_enum_witness",
    "MISSING_AXIOM",
    "FALSE_POSITIVE",
    "LabError",
    "SchemaError",
    "PrefixTree",
    "TreeValidationError",
    "StuckError",
    "WitnessSet",
    "RightmostStage",
    "RightmostResult",
    "validate_tree",
    "rightmost_construct",
    "rightmost_oracle",
    "complete_tree",
    "single_path_tree",
    "random_tree",
    "tree_from_json",
    "DEFAULT_SCAN_CAP",
    "witness_mask",
    "recover_members",
    "danger_member",
    "FixpointStage",
    "FixpointResult",
    "MaskPreconditionError",
    "fixpoint_remove_witnesses",
    "ScanBudgetError",
    "AvoidanceResult",
    "avoidance_check",
    "Requirement",
    "ForceDecision",
    "ForceResult",
    "force_meet_or_avoid",
    "DangerCertificate",
    "NoCandidate",
    "danger_certificate",
]
