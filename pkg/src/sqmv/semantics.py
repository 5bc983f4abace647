"""Valuations, equation checking, designated-value entailment, countermodel search.

Infinite carriers get a semi-decision: grid and seeded random sampling, with
``NO_COUNTEREXAMPLE_FOUND`` kept distinct from the finite-carrier verdict
``VALID_EXHAUSTIVE``.  Batch checks run on integer numerators over a common
denominator (exact, no floats); every reported countermodel is re-evaluated
through the scalar Fraction path before it is returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import models as md
from .models import (
    FiniteModel,
    FlatStandardModel,
    IntervalModel,
    Model,
    PairModel,
    label_str,
)
from .syntax import (
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
    check_signature,
    count_connective,
    variables,
)


class SemanticsError(Exception):
    pass


class UnboundVariable(SemanticsError):
    pass


class StrategyError(SemanticsError):
    pass


_NODE_OP = {
    OPlus: "oplus",
    UMinus: "uminus",
    Impl: "impl",
    Neg: "wneg",
    PosPart: "pos",
    NegPart: "npart",
}

_GRID_CAP = 2_000_000


# ---------------------------------------------------------------------------
# Scalar evaluation


def evaluate(t: Term, m: Model, valuation: dict):
    """Homomorphic evaluation of ``t`` in ``m`` under ``valuation`` (exact)."""
    check_signature(t, m.signature)

    def go(s: Term):
        if isinstance(s, Var):
            try:
                el = valuation[s.name]
            except KeyError:
                raise UnboundVariable(f"variable {s.name!r} is not bound") from None
            m.check_member(el)
            return el
        if isinstance(s, Const0):
            return m.const("zero")
        if isinstance(s, Const1):
            return m.const("one")
        args = [go(c) for c in _children(s)]
        return m.apply(_NODE_OP[type(s)], *args)

    return go(t)


def _children(t: Term):
    if isinstance(t, (OPlus, Impl)):
        return (t.left, t.right)
    return (t.arg,)


def zero_second_coordinates(valuation: dict) -> dict:
    """Project every pair binding onto the first-coordinate slice."""
    out = {}
    for k, v in valuation.items():
        if isinstance(v, tuple) and len(v) == 2:
            out[k] = (v[0], Fraction(0))
        else:
            out[k] = v
    return out


# ---------------------------------------------------------------------------
# Strategies


@dataclass(frozen=True)
class Exhaustive:
    def describe(self) -> str:
        return "exhaustive"


@dataclass(frozen=True)
class Grid:
    denominator: int | None = None

    def describe(self) -> str:
        return f"grid:{self.denominator}" if self.denominator else "grid"


@dataclass(frozen=True)
class RandomSampling:
    count: int
    max_denominator: int = 120

    def describe(self) -> str:
        return f"random:{self.count}"


Strategy = Exhaustive | Grid | RandomSampling


def parse_strategy(text: str) -> Strategy:
    text = text.strip()
    if text == "exhaustive":
        return Exhaustive()
    if text == "grid":
        return Grid()
    if text.startswith("grid:"):
        return Grid(int(text.split(":", 1)[1]))
    if text.startswith("random:"):
        return RandomSampling(int(text.split(":", 1)[1]))
    raise StrategyError(f"unknown strategy {text!r}")


# ---------------------------------------------------------------------------
# Reports


class Verdict(enum.Enum):
    VALID_EXHAUSTIVE = "VALID_EXHAUSTIVE"
    NO_COUNTEREXAMPLE_FOUND = "NO_COUNTEREXAMPLE_FOUND"
    COUNTERMODEL = "COUNTERMODEL"


@dataclass
class Witness:
    model_name: str
    valuation: dict
    lhs_value: object
    rhs_value: object | None

    def as_json(self) -> dict:
        return {
            "model": self.model_name,
            "valuation": {k: label_str(v) for k, v in sorted(self.valuation.items())},
            "lhs": label_str(self.lhs_value),
            "rhs": None if self.rhs_value is None else label_str(self.rhs_value),
        }


@dataclass
class CheckReport:
    verdict: Verdict
    samples_tried: int
    strategy: str
    seed: int
    witness: Witness | None = None

    @property
    def found_countermodel(self) -> bool:
        return self.verdict is Verdict.COUNTERMODEL

    def as_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "samples": self.samples_tried,
            "seed": self.seed,
            "witness": self.witness.as_json() if self.witness else None,
        }

    def as_text(self) -> str:
        lines = [f"verdict: {self.verdict.value}",
                 f"samples: {self.samples_tried}",
                 f"strategy: {self.strategy}",
                 f"seed: {self.seed}"]
        if self.witness:
            w = self.witness
            lines.append(f"model: {w.model_name}")
            for k in sorted(w.valuation):
                lines.append(f"  {k} = {label_str(w.valuation[k])}")
            lines.append(f"  lhs = {label_str(w.lhs_value)}")
            if w.rhs_value is not None:
                lines.append(f"  rhs = {label_str(w.rhs_value)}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Valuation spaces (vectorised representations)


def _is_pair(m: Model) -> bool:
    return isinstance(m, PairModel)


def _middle_out(d: int) -> list[int]:
    out = [0]
    for i in range(1, d + 1):
        out.extend((i, -i))
    return out


def _grid_points(m: Model, d: int) -> tuple[list, int]:
    """Grid sample points as numerators over lcm(2, d), smallest first."""
    D = lcm(2, d)
    step = D // d
    firsts = [i * step for i in _middle_out(d)]
    if _is_pair(m):
        seconds = [0, D // 2, -(D // 2)]
        pts = [(a, b) for a in firsts for b in seconds]
        if getattr(m, "kind", "") == "disk":
            pts = [(a, b) for (a, b) in pts if a * a + b * b <= D * D]
        return pts, D
    return firsts, D


def _env_from_grid(m: Model, names: Sequence[str], d: int):
    pts, D = _grid_points(m, d)
    total = len(pts) ** len(names) if names else 1
    if total > _GRID_CAP:
        raise StrategyError(
            f"grid of {total} valuations is too large; lower the denominator"
        )
    if not names:
        return {}, D, 1
    idx = np.meshgrid(*[np.arange(len(pts))] * len(names), indexing="ij")
    idx = [g.ravel() for g in idx]
    env = {}
    if _is_pair(m):
        a = np.asarray([p[0] for p in pts], dtype=np.int64)
        b = np.asarray([p[1] for p in pts], dtype=np.int64)
        for nm, g in zip(names, idx):
            env[nm] = (a[g], b[g])
    else:
        a = np.asarray(pts, dtype=np.int64)
        for nm, g in zip(names, idx):
            env[nm] = a[g]
    return env, D, total


def _env_from_random(m: Model, names: Sequence[str], count: int, seed: int, max_den: int):
    rng = np.random.default_rng(seed)
    D = max_den
    env = {}
    for nm in sorted(names):
        if isinstance(m, FiniteModel):
            env[nm] = rng.integers(0, len(m.elements), size=count)
        elif _is_pair(m):
            a = rng.integers(-D, D + 1, size=count)
            b = rng.integers(-D, D + 1, size=count)
            if getattr(m, "kind", "") == "disk":
                bad = a * a + b * b > D * D
                while bad.any():
                    n_bad = int(bad.sum())
                    a[bad] = rng.integers(-D, D + 1, size=n_bad)
                    b[bad] = rng.integers(-D, D + 1, size=n_bad)
                    bad = a * a + b * b > D * D
            env[nm] = (a, b)
        else:
            env[nm] = rng.integers(-D, D + 1, size=count)
    return env, D, count


def _env_exhaustive(m: FiniteModel, names: Sequence[str]):
    n = len(m.elements)
    if not names:
        return {}, 1
    total = n ** len(names)
    idx = np.meshgrid(*[np.arange(n)] * len(names), indexing="ij")
    env = {nm: g.ravel() for nm, g in zip(names, idx)}
    return env, total


# ---------------------------------------------------------------------------
# Batch evaluation


def _vec_eval(t: Term, m: Model, env: dict, D: int):
    if isinstance(m, FiniteModel):
        return md.eval_indices(t, m, env)

    def go(s: Term):
        if isinstance(s, Var):
            return env[s.name]
        if isinstance(s, Const0):
            return m.vec_const("zero", D)
        if isinstance(s, Const1):
            return m.vec_const("one", D)
        args = [go(c) for c in _children(s)]
        return m.vec_apply(_NODE_OP[type(s)], args, D)

    return go(t)


def _vec_neq(m: Model, v1, v2, total: int) -> np.ndarray:
    if _is_pair(m) and not isinstance(m, FiniteModel):
        mask = (np.asarray(v1[0]) != np.asarray(v2[0])) | (
            np.asarray(v1[1]) != np.asarray(v2[1])
        )
    else:
        mask = np.asarray(v1) != np.asarray(v2)
    return np.broadcast_to(mask, (total,))


def _valuation_at(m: Model, env: dict, D: int, i: int) -> dict:
    out = {}
    for nm, rep in env.items():
        if isinstance(m, FiniteModel):
            out[nm] = m.elements[int(rep[i])]
        elif _is_pair(m):
            out[nm] = (Fraction(int(rep[0][i]), D), Fraction(int(rep[1][i]), D))
        else:
            out[nm] = Fraction(int(rep[i]), D)
    return out


def _default_grid_denominator(lhs: Term, rhs: Term, sig: Sig) -> int:
    tag = "oplus" if sig is Sig.MV else "impl"
    return count_connective(lhs, tag) + count_connective(rhs, tag) + 2


# ---------------------------------------------------------------------------
# Equation checking


def check_equation(
    lhs: Term, rhs: Term, m: Model, strategy: Strategy, seed: int = 0
) -> CheckReport:
    """Decide / sample the equation lhs = rhs over ``m``."""
    check_signature(lhs, m.signature)
    check_signature(rhs, m.signature)
    names = sorted(set(variables(lhs)) | set(variables(rhs)))

    if isinstance(strategy, Exhaustive):
        if not m.finite:
            raise StrategyError("exhaustive checking needs a finite carrier")
        env, total = _env_exhaustive(m, names)
        D = 1
        valid_verdict = Verdict.VALID_EXHAUSTIVE
    elif isinstance(strategy, Grid):
        if m.finite:
            raise StrategyError("grid sampling targets standard carriers; use exhaustive")
        d = strategy.denominator or _default_grid_denominator(lhs, rhs, m.signature)
        env, D, total = _env_from_grid(m, names, d)
        valid_verdict = Verdict.NO_COUNTEREXAMPLE_FOUND
    elif isinstance(strategy, RandomSampling):
        env, D, total = _env_from_random(m, names, strategy.count, seed,
                                         strategy.max_denominator)
        valid_verdict = Verdict.NO_COUNTEREXAMPLE_FOUND
    else:
        raise StrategyError(f"unknown strategy {strategy!r}")

    lv = _vec_eval(lhs, m, env, D)
    rv = _vec_eval(rhs, m, env, D)
    bad = np.nonzero(_vec_neq(m, lv, rv, total))[0]
    if bad.size == 0:
        return CheckReport(valid_verdict, total, strategy.describe(), seed)
    i = int(bad[0])
    valuation = _valuation_at(m, env, D, i)
    lhs_val = evaluate(lhs, m, valuation)
    rhs_val = evaluate(rhs, m, valuation)
    if lhs_val == rhs_val:
        raise SemanticsError("batch path disagrees with the exact evaluator")
    witness = Witness(m.name, valuation, lhs_val, rhs_val)
    return CheckReport(Verdict.COUNTERMODEL, i + 1, strategy.describe(), seed, witness)


# ---------------------------------------------------------------------------
# Designated elements and entailment


@dataclass
class DesignatedSet:
    model: Model
    elements: tuple | None  # finite models only

    def contains(self, el) -> bool:
        m = self.model
        if self.elements is not None:
            return el in self.elements
        if isinstance(m, PairModel):
            return el[1] == 0 and 0 <= el[0] <= 1
        if isinstance(m, FlatStandardModel):
            return el == 0
        if isinstance(m, IntervalModel):
            return 0 <= el <= 1
        raise SemanticsError(f"no designated set for {m.name}")

    def vec_contains(self, rep, D: int, total: int) -> np.ndarray:
        m = self.model
        if isinstance(m, FiniteModel):
            table = np.asarray(
                [self.contains(el) for el in m.elements], dtype=bool
            )
            return np.broadcast_to(table[rep], (total,))
        if isinstance(m, PairModel):
            mask = (np.asarray(rep[1]) == 0) & (np.asarray(rep[0]) >= 0)
        elif isinstance(m, FlatStandardModel):
            mask = np.asarray(rep) == 0
        else:
            mask = np.asarray(rep) >= 0
        return np.broadcast_to(mask, (total,))


def designated_set(m: Model, verify_samples: int = 1000, seed: int = 17) -> DesignatedSet:
    """Elements of the shape (c -> 1) -> 1.

    Finite models get the computed set; standard models get a closed-form
    membership test that is verified against brute-force samples of c (both
    inclusions), aborting on any mismatch.
    """
    if m.signature is not Sig.W:
        raise SemanticsError("designated elements live in the implicational signature")
    one = m.const("one")

    def desig_of(c):
        return m.apply("impl", m.apply("impl", c, one), one)

    if isinstance(m, FiniteModel):
        els = tuple(sorted({desig_of(c) for c in m.elements},
                           key=label_str))
        return DesignatedSet(m, els)

    ds = DesignatedSet(m, None)
    rng = np.random.default_rng(seed)
    D = 120
    for _ in range(verify_samples):
        if isinstance(m, PairModel):
            while True:
                a, b = Fraction(int(rng.integers(-D, D + 1)), D), Fraction(
                    int(rng.integers(-D, D + 1)), D)
                if m.contains((a, b)):
                    break
            c = (a, b)
        else:
            c = Fraction(int(rng.integers(-D, D + 1)), D)
        d = desig_of(c)
        if not ds.contains(d):
            raise SemanticsError(
                f"designated closed form for {m.name} misses {label_str(d)}"
            )
        if ds.contains(c) and desig_of(c) != c:
            raise SemanticsError(
                f"designated closed form for {m.name} is not idempotent at {label_str(c)}"
            )
    return ds


def check_entailment(
    premises: Sequence[Term], conclusion: Term, m: Model,
    strategy: Strategy, seed: int = 0,
) -> CheckReport:
    """Designated-value entailment: premises designated force the conclusion."""
    if m.signature is not Sig.W:
        raise SemanticsError("entailment is defined over the implicational signature")
    for t in premises:
        check_signature(t, Sig.W)
    check_signature(conclusion, Sig.W)
    names = sorted(set().union(*[variables(t) for t in (*premises, conclusion)]))

    if isinstance(strategy, Exhaustive):
        if not m.finite:
            raise StrategyError("exhaustive checking needs a finite carrier")
        env, total = _env_exhaustive(m, names)
        D = 1
        valid_verdict = Verdict.VALID_EXHAUSTIVE
    elif isinstance(strategy, Grid):
        if m.finite:
            raise StrategyError("grid sampling targets standard carriers; use exhaustive")
        d = strategy.denominator or (sum(
            count_connective(t, "impl") for t in (*premises, conclusion)) + 2)
        env, D, total = _env_from_grid(m, names, d)
        valid_verdict = Verdict.NO_COUNTEREXAMPLE_FOUND
    elif isinstance(strategy, RandomSampling):
        env, D, total = _env_from_random(m, names, strategy.count, seed,
                                         strategy.max_denominator)
        valid_verdict = Verdict.NO_COUNTEREXAMPLE_FOUND
    else:
        raise StrategyError(f"unknown strategy {strategy!r}")

    ds = designated_set(m)
    all_premises = np.ones(total, dtype=bool)
    for t in premises:
        val = _vec_eval(t, m, env, D)
        all_premises &= ds.vec_contains(val, D, total)
    concl = ds.vec_contains(_vec_eval(conclusion, m, env, D), D, total)
    bad = np.nonzero(all_premises & ~concl)[0]
    if bad.size == 0:
        return CheckReport(valid_verdict, total, strategy.describe(), seed)
    i = int(bad[0])
    valuation = _valuation_at(m, env, D, i)
    for t in premises:
        if not ds.contains(evaluate(t, m, valuation)):
            raise SemanticsError("batch path disagrees with the exact evaluator")
    concl_val = evaluate(conclusion, m, valuation)
    if ds.contains(concl_val):
        raise SemanticsError("batch path disagrees with the exact evaluator")
    witness = Witness(m.name, valuation, concl_val, None)
    return CheckReport(Verdict.COUNTERMODEL, i + 1, strategy.describe(), seed, witness)


# ---------------------------------------------------------------------------
# Countermodel search


def search_countermodel(
    lhs: Term, rhs: Term, family: Iterable[str], strategy: Strategy, seed: int = 0
) -> CheckReport:
    """Try each named model in turn; finite members are swept exhaustively."""
    total = 0
    descs = []
    for name in family:
        m = md.resolve(name)
        strat = Exhaustive() if m.finite else strategy
        report = check_equation(lhs, rhs, m, strat, seed)
        total += report.samples_tried
        descs.append(f"{name}:{report.strategy}")
        if report.found_countermodel:
            return CheckReport(
                Verdict.COUNTERMODEL, total, "+".join(descs), seed, report.witness
            )
    return CheckReport(Verdict.NO_COUNTEREXAMPLE_FOUND, total, "+".join(descs), seed)
