"""Linear field size streaming erasure codes built by staggered diagonal embedding."""

from .basecode import BaseCode, construct_base, construct_modified, punctured_pc, systematic_generator
from .channel import ErasurePattern, enumerate_window_patterns, is_admissible, sample_ge
from .decoder import DecodeReport, deadline_audit, decode_stream
from .embedding import (
    PacketStream,
    PlacementSet,
    StreamParams,
    burst_image,
    encode_stream,
    f_S,
    placement_set_de,
    placement_set_sde,
    reach,
)
from .galois import FieldSpec, make_field, smallest_field_for
from .linalg import MatrixGF, cauchy_matrix, in_span, is_mds_generator, is_superregular, rank, zero_band_mds
from .verifier import Regime, VerifyReport, build_streaming_code, classify_regime, verify_streaming

__version__ = "0.1.0"

__all__ = [
    "BaseCode",
    "build_streaming_code",
    "burst_image",
    "cauchy_matrix",
    "classify_regime",
    "construct_base",
    "construct_modified",
    "deadline_audit",
    "decode_stream",
    "DecodeReport",
    "encode_stream",
    "enumerate_window_patterns",
    "ErasurePattern",
    "f_S",
    "FieldSpec",
    "in_span",
    "is_admissible",
    "is_mds_generator",
    "is_superregular",
    "make_field",
    "MatrixGF",
    "PacketStream",
    "placement_set_de",
    "placement_set_sde",
    "PlacementSet",
    "punctured_pc",
    "rank",
    "reach",
    "Regime",
    "sample_ge",
    "smallest_field_for",
    "StreamParams",
    "systematic_generator",
    "verify_streaming",
    "VerifyReport",
    "zero_band_mds",
]
