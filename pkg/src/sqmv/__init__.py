"""Workbench for strong quasi-MV* / quasi-Wajsberg* algebras and their logics."""

from .syntax import (
    Sig,
    Term,
    Var,
    Const0,
    Const1,
    OPlus,
    UMinus,
    Impl,
    Neg,
    PosPart,
    NegPart,
    Schema,
    parse,
    parse_iff,
    print_term,
    expand_abbreviations,
    is_regular,
    count_connective,
    match_schema,
    substitute,
)
from .models import classify, resolve
from .semantics import (
    CheckReport,
    Exhaustive,
    Grid,
    RandomSampling,
    Verdict,
    check_entailment,
    check_equation,
    designated_set,
    evaluate,
    search_countermodel,
)
from .transform import mv_to_w_model, mv_to_w_term, w_to_mv_model, w_to_mv_term

__all__ = [name for name in dir() if not name.startswith("_")]
