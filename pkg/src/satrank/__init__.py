"""Exact rank obstructions for satellite operators on knot concordance."""

from .errors import MissingTau, SatrankError
from .exact_arith import CircleAngle, IntMatrix, alexander_polynomial, format_rational, parse_rational
from .hermitian import hermitian_signature
from .instanton import (
    RankCertificate,
    TauOracle,
    Verdict,
    generate_family,
    normalized_linking,
    verdict,
    verify_certificate,
)
from .seifert_core import Pattern, SeifertForm, SurgeryPresentation, axis_self_linking, twist_pattern
from .signature_lab import (
    BraidWord,
    JumpSpectrum,
    independence_rank,
    jump_at,
    jump_spectrum,
    litherland_jump,
    tl_signature,
    torus_seifert,
)

__all__ = [
    "BraidWord",
    "CircleAngle",
    "IntMatrix",
    "JumpSpectrum",
    "MissingTau",
    "Pattern",
    "RankCertificate",
    "SatrankError",
    "SeifertForm",
    "SurgeryPresentation",
    "TauOracle",
    "Verdict",
    "alexander_polynomial",
    "axis_self_linking",
    "format_rational",
    "generate_family",
    "hermitian_signature",
    "independence_rank",
    "jump_at",
    "jump_spectrum",
    "litherland_jump",
    "normalized_linking",
    "parse_rational",
    "tl_signature",
    "torus_seifert",
    "twist_pattern",
    "verdict",
    "verify_certificate",
]
