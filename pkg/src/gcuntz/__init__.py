"""Invariants of generalized Cuntz algebras built from fusion data.

Modules: :mod:`.fusion` (input data), :mod:`.series` (dimension generating
functions), :mod:`.spectral` (Perron analysis), :mod:`.pathalg` (path model
and its KMS state), :mod:`.groups` (character tables), plus the catalog,
document format, report and CLI.
"""
from .fusion import FusionData, FusionDataError, ReducedFusion, QuantumDimensions, validate, reduced_matrix, reachable_sectors
from .series import INFINITE, RationalSeries, h_series, k_from_h, k_direct, evaluate, skeleton_dim
from .spectral import Classification, SpectralProfile, classify, perron, nilpotency_index, kms_temperature, lemma41_partial_sums
from .catalog import catalog
from .documents import InputDocument, parse_input, emit
from .report import analyze

__version__ = "0.1.0"

__all__ = [
    "FusionData", "FusionDataError", "ReducedFusion", "QuantumDimensions", "validate", "reduced_matrix",
    "reachable_sectors", "INFINITE", "RationalSeries", "h_series", "k_from_h", "k_direct", "evaluate",
    "skeleton_dim", "Classification", "SpectralProfile", "classify", "perron", "nilpotency_index",
    "kms_temperature", "lemma41_partial_sums", "catalog", "InputDocument", "parse_input", "emit", "analyze",
]
