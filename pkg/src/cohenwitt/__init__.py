"""Cohen rings, Witt vectors and ac-valued fields over F_q(t_1, ..., t_r)."""

from .cohen import (
    CohenDigits,
    CohenRingModel,
    S,
    Tower,
    digitize,
    lambda_representative,
    multiplicative_representative,
    standard_tower,
    tower,
    undigitize,
)
from .errors import (
    NOT_A_PTH_POWER,
    NOT_DIVISIBLE,
    NOT_IN_PERFECT_CORE,
    NOT_IN_SPAN,
    NOT_INTEGRAL,
    NOT_MEMBER,
    CohenWittError,
    Marker,
    is_marker,
)
from .fields import FieldDescriptor, FieldElement, RationalFunctionField, make_field
from .morphisms import (
    CohenMorphism,
    FieldMap,
    check_enrichment,
    embedding_over_base,
    identity_morphism,
    structure_isomorphism,
    tep_embed,
)
from .pbasis import MultiIndex, PBasisTuple, is_p_independent, lambda_decompose, mindex_oplus
from .valued import INF, ValuedElement, ValuedField, ac_n, residue_n, vf_arith
from .witt import WittRing, WittVector, teichmuller, truncate, witt_op, witt_ring

__version__ = "0.1.0"

__all__ = [
    "CohenDigits",
    "CohenMorphism",
    "CohenRingModel",
    "CohenWittError",
    "FieldDescriptor",
    "FieldElement",
    "FieldMap",
    "INF",
    "Marker",
    "MultiIndex",
    "NOT_A_PTH_POWER",
    "NOT_DIVISIBLE",
    "NOT_INTEGRAL",
    "NOT_IN_PERFECT_CORE",
    "NOT_IN_SPAN",
    "NOT_MEMBER",
    "PBasisTuple",
    "RationalFunctionField",
    "S",
    "Tower",
    "ValuedElement",
    "ValuedField",
    "WittRing",
    "WittVector",
    "ac_n",
    "check_enrichment",
    "digitize",
    "embedding_over_base",
    "identity_morphism",
    "is_marker",
    "is_p_independent",
    "lambda_decompose",
    "lambda_representative",
    "make_field",
    "mindex_oplus",
    "multiplicative_representative",
    "residue_n",
    "standard_tower",
    "structure_isomorphism",
    "teichmuller",
    "tep_embed",
    "tower",
    "truncate",
    "undigitize",
    "vf_arith",
    "witt_op",
    "witt_ring",
]
