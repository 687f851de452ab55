"""Quantifier-free languages over Cohen rings and ac-valued fields."""

from .audit import (
    BATTERY_SORTS,
    L2_BATTERY,
    L2S_BATTERY,
    AuditReport,
    AxiomResult,
    PreservationReport,
    ac_negative_controls,
    audit_axioms,
    check_morphism_preserves_qf,
    eval_qf,
    eval_term,
    negative_controls,
)
from .binding import CohenBinding, StructureBinding, ValuedBinding, canonical_S, shipped_binding
from .syntax import (
    GAMMA,
    A,
    App,
    Conn,
    Const,
    Eq,
    Formula,
    K,
    Lit,
    Not,
    Num,
    R,
    Rel,
    Sort,
    Term,
    Var,
    k,
    parse_formula,
    parse_sort,
    parse_term,
)

__all__ = [
    "A",
    "App",
    "AuditReport",
    "AxiomResult",
    "BATTERY_SORTS",
    "CohenBinding",
    "Conn",
    "Const",
    "Eq",
    "Formula",
    "GAMMA",
    "K",
    "L2S_BATTERY",
    "L2_BATTERY",
    "Lit",
    "Not",
    "Num",
    "PreservationReport",
    "R",
    "Rel",
    "Sort",
    "StructureBinding",
    "Term",
    "ValuedBinding",
    "Var",
    "ac_negative_controls",
    "audit_axioms",
    "canonical_S",
    "check_morphism_preserves_qf",
    "eval_qf",
    "eval_term",
    "k",
    "negative_controls",
    "parse_formula",
    "parse_sort",
    "parse_term",
    "shipped_binding",
]
