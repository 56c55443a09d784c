"""Ideals generated by products of linear forms: codes, saturations and Betti numbers."""

from .betti import BettiTriple, betti_k2, betti_k3, betti_m_power, hilbert_consistency
from .codes import CodeProfile, ProjectivePoint, hamming_hierarchy, min_weight_points
from .exactalg import GF, QQ, ExactMatrix, FieldSpec
from .forms import Arrangement, FormCollection, LinForm, canonical, delete, rank_of, restrict
from .ideals import FoldIdeal, colon_piece, fold_generators, piece_dim, saturation_piece
from .oracle import is_linear, koszul_betti, regularity

__all__ = [
    "Arrangement",
    "BettiTriple",
    "CodeProfile",
    "ExactMatrix",
    "FieldSpec",
    "FoldIdeal",
    "FormCollection",
    "GF",
    "LinForm",
    "ProjectivePoint",
    "QQ",
    "betti_k2",
    "betti_k3",
    "betti_m_power",
    "canonical",
    "colon_piece",
    "delete",
    "fold_generators",
    "hamming_hierarchy",
    "hilbert_consistency",
    "is_linear",
    "koszul_betti",
    "min_weight_points",
    "piece_dim",
    "rank_of",
    "regularity",
    "restrict",
    "saturation_piece",
]
