"""Shared helpers: seeded random terms/valuations and an independent
reference evaluator written straight from the model definitions."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sqmv.syntax import (
    Const0,
    Const1,
    Impl,
    Neg,
    NegPart,
    OPlus,
    PosPart,
    Sig,
    Term,
    UMinus,
    Var,
)

F = Fraction


def clamp1(x: Fraction) -> Fraction:
    return max(F(-1), min(F(1), x))


# ---------------------------------------------------------------------------
# Random generation


def rand_fraction(rng: random.Random, den: int = 120) -> Fraction:
    return F(rng.randint(-den, den), den)


def random_term(
    rng: random.Random,
    sig: Sig,
    max_depth: int,
    var_names=("x", "y", "z"),
    allow_parts: bool = True,
    force_oplus: bool = False,
) -> Term:
    t = _random_term(rng, sig, max_depth, var_names, allow_parts)
    if force_oplus:
        binop = OPlus if sig is Sig.MV else Impl
        while not _contains(t, binop):
            t = _random_term(rng, sig, max_depth, var_names, allow_parts)
    return t


def _contains(t: Term, cls) -> bool:
    from sqmv.syntax import subterms

    return any(isinstance(s, cls) for s in subterms(t))


def _random_term(rng, sig, depth, var_names, allow_parts) -> Term:
    if depth <= 0 or rng.random() < 0.25:
        choices = [Var(n) for n in var_names] + [Const1()]
        if sig is Sig.MV:
            choices.append(Const0())
        return rng.choice(choices)
    kinds = ["bin", "un", "bin"]
    if allow_parts:
        kinds += ["pos", "npart"]
    kind = rng.choice(kinds)
    if kind == "bin":
        a = _random_term(rng, sig, depth - 1, var_names, allow_parts)
        b = _random_term(rng, sig, depth - 1, var_names, allow_parts)
        return OPlus(a, b) if sig is Sig.MV else Impl(a, b)
    arg = _random_term(rng, sig, depth - 1, var_names, allow_parts)
    if kind == "un":
        return UMinus(arg) if sig is Sig.MV else Neg(arg)
    return PosPart(arg) if kind == "pos" else NegPart(arg)


def random_square_valuation(rng, names, den: int = 120) -> dict:
    return {n: (rand_fraction(rng, den), rand_fraction(rng, den)) for n in names}


def random_disk_valuation(rng, names, den: int = 120) -> dict:
    out = {}
    for n in names:
        while True:
            a, b = rand_fraction(rng, den), rand_fraction(rng, den)
            if a * a + b * b <= 1:
                out[n] = (a, b)
                break
    return out


def random_interval_valuation(rng, names, den: int = 120) -> dict:
    return {n: rand_fraction(rng, den) for n in names}


# ---------------------------------------------------------------------------
# Reference evaluator (independent of the library's dispatch)


def oracle_pair(t: Term, v: dict, flat_half: bool = False) -> tuple:
    """Evaluate over the square carrier directly from the defining formulas.

    With ``flat_half`` the half-square variant is used (second coordinate
    forced to 1/2, minus flips b to 1-b).
    """
    second = F(1, 2) if flat_half else F(0)

    def ev(s: Term) -> tuple:
        if isinstance(s, Var):
            return v[s.name]
        if isinstance(s, Const0):
            return (F(0), second)
        if isinstance(s, Const1):
            return (F(1), second)
        if isinstance(s, OPlus):
            (a, _), (c, _) = ev(s.left), ev(s.right)
            return (clamp1(a + c), second)
        if isinstance(s, Impl):
            (a, _), (c, _) = ev(s.left), ev(s.right)
            return (clamp1(c - a), second)
        if isinstance(s, UMinus) or isinstance(s, Neg):
            (a, b) = ev(s.arg)
            return (-a, 1 - b if flat_half else -b)
        if isinstance(s, PosPart):
            (a, _) = ev(s.arg)
            return (max(F(0), a), second)
        (a, _) = ev(s.arg)
        return (min(F(0), a), second)

    return ev(t)


def oracle_interval(t: Term, v: dict, flat: bool = False) -> Fraction:
    def ev(s: Term) -> Fraction:
        if isinstance(s, Var):
            return v[s.name]
        if isinstance(s, Const0):
            return F(0)
        if isinstance(s, Const1):
            return F(0) if flat else F(1)
        if isinstance(s, OPlus):
            return F(0) if flat else clamp1(ev(s.left) + ev(s.right))
        if isinstance(s, Impl):
            return F(0) if flat else clamp1(ev(s.right) - ev(s.left))
        if isinstance(s, (UMinus, Neg)):
            return -ev(s.arg)
        if isinstance(s, PosPart):
            return F(0) if flat else max(F(0), ev(s.arg))
        return F(0) if flat else min(F(0), ev(s.arg))

    return ev(t)


@pytest.fixture
def rng():
    return random.Random(20240817)
