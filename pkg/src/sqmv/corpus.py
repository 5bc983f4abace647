"""The fixed 50-equation corpus used by the coherence checks.

Forty equations that hold in every strong model (the defining batteries of
both quasi varieties, the strongness laws, and a few derived implication
identities), plus ten constructed equations that fail in the standard models.
"""

from __future__ import annotations

from . import axioms
from .axioms import Equation
from .syntax import Sig, parse


def _mk(name: str, sig: Sig, lhs: str, rhs: str) -> Equation:
    return Equation(name, sig, parse(lhs, sig), parse(rhs, sig))


_DERIVED_VALID = [
    ("exch-neg-l", Sig.W, "~x -> y", "~y -> x"),
    ("exch-neg-r", Sig.W, "x -> ~y", "y -> ~x"),
    ("self-impl", Sig.W, "x -> x", "y -> y"),
    ("neg-impl-fix", Sig.W, "(z -> z) -> ~(x -> y)", "~(x -> y)"),
]

_INVALID = [
    ("bad-add-unit", Sig.MV, "x (+) 0", "x"),
    ("bad-distinct-vars", Sig.MV, "x", "y"),
    ("bad-sum-minus", Sig.MV, "x (+) y", "x (+) -y"),
    ("bad-minus-fix", Sig.MV, "-x", "x"),
    ("bad-pos-identity", Sig.MV, "x^+", "x"),
    ("bad-zero-one", Sig.MV, "0", "1"),
    ("bad-impl-unit", Sig.W, "(1 -> 1) -> x", "x"),
    ("bad-impl-comm", Sig.W, "x -> y", "y -> x"),
    ("bad-neg-fix", Sig.W, "~x", "x"),
    ("bad-pos-identity-w", Sig.W, "(x -> 1) -> 1", "x"),
]


def valid_equations() -> list[Equation]:
    out = list(axioms.audit_battery(Sig.MV)) + list(axioms.audit_battery(Sig.W))
    out.extend(_mk(*row) for row in _DERIVED_VALID)
    return out


def invalid_equations() -> list[Equation]:
    return [_mk(*row) for row in _INVALID]


def corpus() -> list[Equation]:
    eqs = valid_equations() + invalid_equations()
    assert len(eqs) == 50, f"corpus drifted to {len(eqs)} equations"
    return eqs
