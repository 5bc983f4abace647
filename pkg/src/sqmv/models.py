"""Concrete algebras: standard square/disk/interval models, finite table models,
flattenings, products, congruences, quotients, and the direct-product embedding.

All arithmetic is exact (``fractions.Fraction``); finite models store full
operation tables so that classification can sweep every tuple.  Elements of
pair models are ``(Fraction, Fraction)`` tuples, interval-like models use bare
Fractions, finite models use their element labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import axioms
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
)


class ModelError(Exception):
    pass


class DomainError(ModelError):
    pass


class SpecError(ModelError):
    pass


class ClosureError(ModelError):
    pass


class NotCompatible(ModelError):
    pass


class ClassError(ModelError):
    pass


class CatalogError(ModelError):
    pass


ONE = Fraction(1)
ZERO = Fraction(0)
HALF = Fraction(1, 2)


def clamp(x: Fraction) -> Fraction:
    return max(-ONE, min(ONE, x))


MV_OPS = {"oplus": 2, "uminus": 1, "pos": 1, "npart": 1}
W_OPS = {"impl": 2, "wneg": 1, "pos": 1, "npart": 1}


def ops_for(sig: Sig) -> dict[str, int]:
    return MV_OPS if sig is Sig.MV else W_OPS


def label_str(el) -> str:
    if isinstance(el, Fraction):
        return str(el)
    if isinstance(el, tuple):
        return "<" + ",".join(label_str(c) for c in el) + ">"
    return str(el)


class _Adjoined:
    """Fresh element adjoined by a flattening when no fixpoint is available."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "k*"


ADJOINED = _Adjoined()


# ---------------------------------------------------------------------------
# Base model API


class Model:
    name: str
    signature: Sig
    finite: bool

    def const(self, name: str):
        raise NotImplementedError

    def apply(self, op: str, *args):
        raise NotImplementedError

    def contains(self, el) -> bool:
        raise NotImplementedError

    def check_member(self, el) -> None:
        if not self.contains(el):
            raise DomainError(f"{label_str(el)} is not in the carrier of {self.name}")

    def __repr__(self):
        return f"<Model {self.name}>"


# ---------------------------------------------------------------------------
# Standard models (infinite carriers, closed-form operations)


class PairModel(Model):
    """The square [-1,1]^2 or the disk a^2+b^2 <= 1, in either signature.

    First coordinates follow truncated addition, second coordinates collapse
    to 0 under every operation except the componentwise minus.
    """

    finite = False

    def __init__(self, kind: str, signature: Sig):
        assert kind in ("square", "disk")
        self.kind = kind
        self.signature = signature
        self.name = kind + ("" if signature is Sig.MV else "@w")

    def contains(self, el) -> bool:
        if not (isinstance(el, tuple) and len(el) == 2):
            return False
        a, b = el
        if not (isinstance(a, Fraction) and isinstance(b, Fraction)):
            return False
        if self.kind == "disk":
            return a * a + b * b <= 1
        return -1 <= a <= 1 and -1 <= b <= 1

    def const(self, name: str):
        return (ZERO, ZERO) if name == "zero" else (ONE, ZERO)

    def apply(self, op: str, *args):
        for x in args:
            self.check_member(x)
        if op == "oplus" and self.signature is Sig.MV:
            return (clamp(args[0][0] + args[1][0]), ZERO)
        if op == "impl" and self.signature is Sig.W:
            return (clamp(args[1][0] - args[0][0]), ZERO)
        if op in ("uminus", "wneg") and op in ops_for(self.signature):
            return (-args[0][0], -args[0][1])
        if op == "pos":
            return (max(ZERO, args[0][0]), ZERO)
        if op == "npart":
            return (min(ZERO, args[0][0]), ZERO)
        raise DomainError(f"operation {op!r} is not available on {self.name}")

    # vectorised numerator arithmetic over a common denominator D
    def vec_const(self, name: str, D: int):
        return (0, 0) if name == "zero" else (D, 0)

    def vec_apply(self, op: str, args, D: int):
        if op == "oplus":
            (a, _), (c, _) = args
            return (np.clip(a + c, -D, D), np.zeros_like(a))
        if op == "impl":
            (a, _), (c, _) = args
            return (np.clip(c - a, -D, D), np.zeros_like(a))
        if op in ("uminus", "wneg"):
            (a, b) = args[0]
            return (-a, -b)
        if op == "pos":
            (a, _) = args[0]
            return (np.maximum(a, 0), np.zeros_like(a))
        if op == "npart":
            (a, _) = args[0]
            return (np.minimum(a, 0), np.zeros_like(a))
        raise DomainError(f"operation {op!r} is not available on {self.name}")


class IntervalModel(Model):
    """The standard algebra on [-1,1] with truncated addition."""

    finite = False

    def __init__(self, signature: Sig):
        self.signature = signature
        self.name = "interval" + ("" if signature is Sig.MV else "@w")

    def contains(self, el) -> bool:
        return isinstance(el, Fraction) and -1 <= el <= 1

    def const(self, name: str):
        return ZERO if name == "zero" else ONE

    def apply(self, op: str, *args):
        for x in args:
            self.check_member(x)
        if op == "oplus" and self.signature is Sig.MV:
            return clamp(args[0] + args[1])
        if op == "impl" and self.signature is Sig.W:
            return clamp(args[1] - args[0])
        if op in ("uminus", "wneg") and op in ops_for(self.signature):
            return -args[0]
        if op == "pos":
            return max(ZERO, args[0])
        if op == "npart":
            return min(ZERO, args[0])
        raise DomainError(f"operation {op!r} is not available on {self.name}")

    def vec_const(self, name: str, D: int):
        return 0 if name == "zero" else D

    def vec_apply(self, op: str, args, D: int):
        if op == "oplus":
            return np.clip(args[0] + args[1], -D, D)
        if op == "impl":
            return np.clip(args[1] - args[0], -D, D)
        if op in ("uminus", "wneg"):
            return -args[0]
        if op == "pos":
            return np.maximum(args[0], 0)
        if op == "npart":
            return np.minimum(args[0], 0)
        raise DomainError(f"operation {op!r} is not available on {self.name}")


class FlatStandardModel(Model):
    """The 0-flattening of the standard interval algebra: every sum is 0."""

    finite = False

    def __init__(self, signature: Sig):
        self.signature = signature
        self.name = "flat-standard" + ("" if signature is Sig.MV else "@w")

    def contains(self, el) -> bool:
        return isinstance(el, Fraction) and -1 <= el <= 1

    def const(self, name: str):
        return ZERO

    def apply(self, op: str, *args):
        for x in args:
            self.check_member(x)
        if op == "oplus" and self.signature is Sig.MV:
            return ZERO
        if op == "impl" and self.signature is Sig.W:
            return ZERO
        if op in ("uminus", "wneg") and op in ops_for(self.signature):
            return -args[0]
        if op in ("pos", "npart"):
            return ZERO
        raise DomainError(f"operation {op!r} is not available on {self.name}")

    def vec_const(self, name: str, D: int):
        return 0

    def vec_apply(self, op: str, args, D: int):
        if op in ("oplus", "impl", "pos", "npart"):
            ref = args[0]
            return np.zeros_like(ref)
        if op in ("uminus", "wneg"):
            return -args[0]
        raise DomainError(f"operation {op!r} is not available on {self.name}")


# ---------------------------------------------------------------------------
# Finite table models


class FiniteModel(Model):
    finite = True

    def __init__(self, name: str, signature: Sig, elements: tuple,
                 tables: dict, consts: dict):
        self.name = name
        self.signature = signature
        self.elements = tuple(elements)
        self.index = {el: i for i, el in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise SpecError("duplicate elements in finite carrier")
        self.tables = tables          # op name -> nested list of indices
        self.consts = consts          # const name -> index
        self._np_tables: dict[str, np.ndarray] | None = None
        self._flags = None
        self.quotient_classes: dict | None = None

    @property
    def np_tables(self) -> dict[str, np.ndarray]:
        if self._np_tables is None:
            self._np_tables = {
                op: np.asarray(tbl, dtype=np.int64) for op, tbl in self.tables.items()
            }
        return self._np_tables

    def contains(self, el) -> bool:
        return el in self.index

    def const(self, name: str):
        return self.elements[self.consts[name]]

    def apply(self, op: str, *args):
        if op not in self.tables:
            raise DomainError(f"operation {op!r} is not available on {self.name}")
        idx = []
        for x in args:
            self.check_member(x)
            idx.append(self.index[x])
        tbl = self.tables[op]
        if len(idx) == 2:
            return self.elements[tbl[idx[0]][idx[1]]]
        return self.elements[tbl[idx[0]]]

    def table_text(self) -> str:
        """Operation tables as text, one tuple per line."""
        lines = [f"model {self.name} signature {self.signature.value} size {len(self.elements)}"]
        for cname in sorted(self.consts):
            lines.append(f"{cname} -> {label_str(self.const(cname))}")
        for op in sorted(self.tables):
            arity = 2 if isinstance(self.tables[op][0], list) else 1
            if arity == 2:
                for x, y in itertools.product(self.elements, repeat=2):
                    lines.append(
                        f"{op} {label_str(x)} {label_str(y)} -> {label_str(self.apply(op, x, y))}"
                    )
            else:
                for x in self.elements:
                    lines.append(f"{op} {label_str(x)} -> {label_str(self.apply(op, x))}")
        return "\n".join(lines) + "\n"


def finite_model_from_ops(
    name: str,
    signature: Sig,
    elements: Iterable,
    ops: dict[str, Callable],
    consts: dict[str, object],
) -> FiniteModel:
    """Materialise operation tables, checking closure over the carrier."""
    elements = tuple(elements)
    index = {el: i for i, el in enumerate(elements)}
    tables: dict = {}
    for op, arity in ops_for(signature).items():
        fn = ops[op]
        if arity == 2:
            tbl = []
            for x in elements:
                row = []
                for y in elements:
                    z = fn(x, y)
                    if z not in index:
                        raise ClosureError(
                            f"{name}: {op}({label_str(x)},{label_str(y)}) = "
                            f"{label_str(z)} escapes the carrier"
                        )
                    row.append(index[z])
                tbl.append(row)
            tables[op] = tbl
        else:
            col = []
            for x in elements:
                z = fn(x)
                if z not in index:
                    raise ClosureError(
                        f"{name}: {op}({label_str(x)}) = {label_str(z)} escapes the carrier"
                    )
                col.append(index[z])
            tables[op] = col
    cidx = {}
    for cname, el in consts.items():
        if el not in index:
            raise ClosureError(f"{name}: constant {cname} = {label_str(el)} not in carrier")
        cidx[cname] = index[el]
    return FiniteModel(name, signature, elements, tables, cidx)


def finite_chain(n: int) -> FiniteModel:
    """The (2n+1)-element subchain {k/n} of the interval model."""
    if n < 1:
        raise SpecError("chain parameter must be >= 1")
    els = tuple(Fraction(k, n) for k in range(-n, n + 1))
    ops = {
        "oplus": lambda x, y: clamp(x + y),
        "uminus": lambda x: -x,
        "pos": lambda x: max(ZERO, x),
        "npart": lambda x: min(ZERO, x),
    }
    return finite_model_from_ops(f"chain:{n}", Sig.MV, els, ops, {"zero": ZERO, "one": ONE})


def ex32_grid() -> FiniteModel:
    """Finite sub-grid of the half-square model: strong but not an MV*-algebra.

    Second coordinates live in {0,1/2,1}; every operation forces 1/2 there
    except minus, which maps b to 1-b.
    """
    firsts = [Fraction(-1), Fraction(-1, 2), ZERO, HALF, ONE]
    seconds = [ZERO, HALF, ONE]
    els = tuple((a, b) for a in firsts for b in seconds)
    ops = {
        "oplus": lambda x, y: (clamp(x[0] + y[0]), HALF),
        "uminus": lambda x: (-x[0], 1 - x[1]),
        "pos": lambda x: (max(ZERO, x[0]), HALF),
        "npart": lambda x: (min(ZERO, x[0]), HALF),
    }
    return finite_model_from_ops(
        "ex32-grid", Sig.MV, els, ops, {"zero": (ZERO, HALF), "one": (ONE, HALF)}
    )


def flattening(base: FiniteModel, k=None) -> FiniteModel:
    """Flatten ``base`` onto the element ``k``.

    ``k`` must be a fixpoint of minus inside the regular part; pass ``None``
    to adjoin a fresh element, which is only legal when no such fixpoint
    exists.
    """
    if base.signature is not Sig.MV:
        raise SpecError("flattening expects an additive-signature base")
    regs = regular_elements(base, check_star=False)
    fixpoints = [x for x in regs if base.apply("uminus", x) == x]
    if k is None:
        if fixpoints:
            raise SpecError(
                "minus has a fixpoint over the regular part; flatten onto it "
                f"(e.g. {label_str(fixpoints[0])}) instead of adjoining a fresh element"
            )
        k = ADJOINED
        elements = base.elements + (ADJOINED,)
    else:
        if k not in fixpoints:
            raise SpecError(
                f"{label_str(k)} is not a minus-fixpoint in the regular part of {base.name}"
            )
        elements = base.elements
    kname = "new" if k is ADJOINED else label_str(k)
    ops = {
        "oplus": lambda x, y: k,
        "uminus": lambda x: k if x is ADJOINED else base.apply("uminus", x),
        "pos": lambda x: k,
        "npart": lambda x: k,
    }
    return finite_model_from_ops(
        f"flatten:{base.name}:{kname}", Sig.MV, elements, ops, {"zero": k, "one": k}
    )


def product(m1: FiniteModel, m2: FiniteModel) -> FiniteModel:
    """Componentwise product; tables assembled on index arrays."""
    if not (m1.finite and m2.finite):
        raise SpecError("product is implemented for finite factors only")
    if m1.signature is not m2.signature:
        raise SpecError("product factors must share a signature")
    sig = m1.signature
    n2 = len(m2.elements)
    els = tuple(itertools.product(m1.elements, m2.elements))
    tables: dict = {}
    for op, arity in ops_for(sig).items():
        t1, t2 = m1.np_tables[op], m2.np_tables[op]
        if arity == 2:
            big = (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(
                len(els), len(els)
            )
        else:
            big = (t1[:, None] * n2 + t2[None, :]).reshape(len(els))
        tables[op] = big.tolist()
    consts = {}
    for cname in set(m1.consts) & set(m2.consts):
        consts[cname] = m1.consts[cname] * n2 + m2.consts[cname]
    name = f"product:{_wrap(m1.name)},{_wrap(m2.name)}"
    return FiniteModel(name, sig, els, tables, consts)


def finite_restriction(base: Model, points: Iterable, name: str) -> FiniteModel:
    """Restrict a standard model to a finite subset, checking closure."""
    sig = base.signature
    ops = {
        op: (lambda *args, op=op: base.apply(op, *args)) for op in ops_for(sig)
    }
    consts = {"one": base.const("one")}
    if sig is Sig.MV:
        consts["zero"] = base.const("zero")
    else:
        consts["zero"] = base.apply("impl", base.const("one"), base.const("one"))
    return finite_model_from_ops(name, sig, tuple(points), ops, consts)


# ---------------------------------------------------------------------------
# Signature views (tables only; verified wrappers live in transform)


def derived_w_ops(m: Model) -> dict[str, Callable]:
    """Implication-signature operations computed from additive ones."""
    return {
        "impl": lambda x, y: m.apply("oplus", m.apply("uminus", x), y),
        "wneg": lambda x: m.apply("uminus", x),
        "pos": lambda x: m.apply("pos", x),
        "npart": lambda x: m.apply("npart", x),
    }


def derived_mv_ops(m: Model) -> dict[str, Callable]:
    """Additive-signature operations computed from implicational ones."""
    return {
        "oplus": lambda x, y: m.apply("impl", m.apply("wneg", x), y),
        "uminus": lambda x: m.apply("wneg", x),
        "pos": lambda x: m.apply("pos", x),
        "npart": lambda x: m.apply("npart", x),
    }


def finite_w_view(m: FiniteModel, name: str | None = None) -> FiniteModel:
    t = m.np_tables
    one = m.consts["one"]
    tables = {
        "impl": t["oplus"][t["uminus"], :].tolist(),
        "wneg": t["uminus"].tolist(),
        "pos": t["pos"].tolist(),
        "npart": t["npart"].tolist(),
    }
    zero = int(t["oplus"][t["uminus"][one], one])
    return FiniteModel(
        name or m.name + "@w", Sig.W, m.elements, tables,
        {"one": one, "zero": zero},
    )


def finite_mv_view(m: FiniteModel, name: str | None = None) -> FiniteModel:
    t = m.np_tables
    one = m.consts["one"]
    tables = {
        "oplus": t["impl"][t["wneg"], :].tolist(),
        "uminus": t["wneg"].tolist(),
        "pos": t["pos"].tolist(),
        "npart": t["npart"].tolist(),
    }
    zero = int(t["impl"][one, one])
    return FiniteModel(
        name or m.name + "@mv", Sig.MV, m.elements, tables,
        {"one": one, "zero": zero},
    )


# ---------------------------------------------------------------------------
# Exhaustive term evaluation on finite models (index arrays)


_NODE_OP = {
    OPlus: "oplus",
    UMinus: "uminus",
    Impl: "impl",
    Neg: "wneg",
    PosPart: "pos",
    NegPart: "npart",
}


def eval_indices(t: Term, m: FiniteModel, env: dict[str, np.ndarray]) -> np.ndarray:
    """Evaluate ``t`` over index arrays; all variables must be bound in env."""
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Const0):
        return np.int64(m.consts["zero"])
    if isinstance(t, Const1):
        return np.int64(m.consts["one"])
    op = _NODE_OP[type(t)]
    tbl = m.np_tables[op]
    if isinstance(t, (OPlus, Impl)):
        return tbl[eval_indices(t.left, m, env), eval_indices(t.right, m, env)]
    return tbl[eval_indices(t.arg, m, env)]


def holds_exhaustively(
    m: FiniteModel, lhs: Term, rhs: Term
) -> tuple[bool, dict | None]:
    """Check lhs = rhs on every valuation; returns (holds, witness valuation)."""
    names = sorted(set(_term_vars(lhs)) | set(_term_vars(rhs)))
    n = len(m.elements)
    if not names:
        env: dict[str, np.ndarray] = {}
        shape: tuple[int, ...] = (1,)
    else:
        grids = np.meshgrid(*[np.arange(n)] * len(names), indexing="ij")
        env = {nm: g.ravel() for nm, g in zip(names, grids)}
        shape = (n ** len(names),)
    lv = np.broadcast_to(eval_indices(lhs, m, env), shape)
    rv = np.broadcast_to(eval_indices(rhs, m, env), shape)
    bad = np.nonzero(lv != rv)[0]
    if bad.size == 0:
        return True, None
    first = int(bad[0])
    witness = {nm: m.elements[int(env[nm][first])] for nm in names}
    return False, witness


def _term_vars(t: Term) -> list[str]:
    from .syntax import variables

    return list(variables(t))


# ---------------------------------------------------------------------------
# Classification


@dataclass
class ClassFlags:
    signature: Sig
    axiom_results: dict[str, bool]
    witnesses: dict[str, dict]
    is_quasi: bool
    is_strong: bool
    is_flat: bool
    is_star: bool

    def summary(self) -> str:
        kind = "quasi-MV*" if self.signature is Sig.MV else "quasi-Wajsberg*"
        star = "MV*" if self.signature is Sig.MV else "Wajsberg*"
        rows = [
            (f"is {kind}", self.is_quasi),
            ("is strong", self.is_strong),
            ("is flat", self.is_flat),
            (f"is {star}", self.is_star),
        ]
        return "\n".join(f"{k}: {'yes' if v else 'no'}" for k, v in rows)


def classify(m: FiniteModel) -> ClassFlags:
    """Decide the class flags of a finite model by exhaustive axiom checks."""
    if not m.finite:
        raise ClassError("classification sweeps require a finite carrier")
    if m._flags is not None:
        return m._flags
    sig = m.signature
    results: dict[str, bool] = {}
    witnesses: dict[str, dict] = {}

    def run(eqs):
        ok_all = True
        for eq in eqs:
            ok, wit = holds_exhaustively(m, eq.lhs, eq.rhs)
            results[eq.name] = ok
            if not ok:
                witnesses[eq.name] = wit
                ok_all = False
        return ok_all

    is_quasi = run(axioms.quasi_axioms(sig))
    is_strong = run(axioms.strong_axioms(sig)) and is_quasi
    flat_eq = axioms.flat_equation(sig)
    flat_ok, wit = holds_exhaustively(m, flat_eq.lhs, flat_eq.rhs)
    results[flat_eq.name] = flat_ok
    if not flat_ok and wit is not None:
        witnesses[flat_eq.name] = wit
    is_flat = flat_ok and is_quasi
    is_star = run(axioms.star_axioms(sig))
    m._flags = ClassFlags(sig, results, witnesses, is_quasi, is_strong, is_flat, is_star)
    return m._flags


def regular_elements(m: FiniteModel, check_star: bool = True) -> tuple:
    """Elements fixed by adding 0 (resp. by prefixing 1->1).

    With ``check_star`` the restriction to these elements is verified to be a
    plain MV*- / Wajsberg*-algebra.
    """
    if m.signature is Sig.MV:
        zero = m.const("zero")
        regs = tuple(x for x in m.elements if m.apply("oplus", x, zero) == x)
    else:
        zero = m.apply("impl", m.const("one"), m.const("one"))
        regs = tuple(x for x in m.elements if m.apply("impl", zero, x) == x)
    if check_star:
        sub = _restrict_to(m, regs, m.name + "|R")
        flags = classify(sub)
        if not flags.is_star:
            bad = [k for k, v in flags.axiom_results.items() if not v]
            raise ModelError(
                f"regular part of {m.name} fails the plain-algebra laws: {bad}"
            )
    return regs


def _restrict_to(m: FiniteModel, subset: tuple, name: str) -> FiniteModel:
    ops = {op: (lambda *args, op=op: m.apply(op, *args)) for op in ops_for(m.signature)}
    consts = {c: m.const(c) for c in m.consts}
    return finite_model_from_ops(name, m.signature, subset, ops, consts)


# ---------------------------------------------------------------------------
# Congruences, quotients, embedding


@dataclass(frozen=True)
class Congruence:
    model: FiniteModel
    classes: tuple[frozenset, ...]

    @property
    def class_of(self) -> dict:
        out = {}
        for cls in self.classes:
            for el in cls:
                out[el] = cls
        return out

    def related(self, x, y) -> bool:
        return y in self.class_of[x]

    def is_identity(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def meet(self, other: "Congruence") -> "Congruence":
        pieces = []
        for c1 in self.classes:
            for c2 in other.classes:
                inter = c1 & c2
                if inter:
                    pieces.append(frozenset(inter))
        return Congruence(self.model, _sort_classes(pieces))


def _sort_classes(classes) -> tuple[frozenset, ...]:
    return tuple(sorted((frozenset(c) for c in classes),
                        key=lambda c: sorted(label_str(e) for e in c)))


def _class_ids(m: FiniteModel, cong: Congruence) -> np.ndarray:
    cid = np.empty(len(m.elements), dtype=np.int64)
    for i, cls in enumerate(cong.classes):
        for el in cls:
            cid[m.index[el]] = i
    return cid


def _check_compatible(m: FiniteModel, cong: Congruence) -> None:
    """Related inputs must give related outputs, for every operation."""
    cid = _class_ids(m, cong)
    for op, arity in ops_for(m.signature).items():
        tbl = m.np_tables[op]
        if arity == 1:
            out = cid[tbl]
            for i in range(len(cong.classes)):
                if np.unique(out[cid == i]).size > 1:
                    raise NotCompatible(f"{op} is not compatible with the partition")
        else:
            out = cid[tbl]
            for i in range(len(cong.classes)):
                members = np.nonzero(cid == i)[0]
                if members.size < 2:
                    continue
                ref = members[0]
                if not (out[members] == out[ref]).all():
                    raise NotCompatible(f"{op} is not compatible on the left")
                if not (out[:, members] == out[:, ref][:, None]).all():
                    raise NotCompatible(f"{op} is not compatible on the right")


def _partition_from_relation(m: FiniteModel, related: Callable) -> Congruence:
    remaining = list(m.elements)
    classes = []
    while remaining:
        x = remaining[0]
        cls = frozenset(y for y in m.elements if related(x, y))
        if x not in cls:
            raise NotCompatible("relation is not reflexive")
        classes.append(cls)
        remaining = [y for y in remaining if y not in cls]
    cong = Congruence(m, _sort_classes(classes))
    _check_compatible(m, cong)
    return cong


def _mv_ops_of(m: FiniteModel) -> dict[str, Callable]:
    if m.signature is Sig.MV:
        return {op: (lambda *a, op=op: m.apply(op, *a)) for op in MV_OPS}
    return derived_mv_ops(m)


def join_op(m: FiniteModel) -> Callable:
    """The lattice join computed from the defining term."""
    ops = _mv_ops_of(m)

    def join(x, y):
        xp, yp = ops["pos"](x), ops["pos"](y)
        xn, yn = ops["npart"](x), ops["npart"](y)
        left = ops["oplus"](xp, ops["pos"](ops["oplus"](ops["uminus"](xp), yp)))
        right = ops["oplus"](xn, ops["pos"](ops["oplus"](ops["uminus"](xn), yn)))
        return ops["oplus"](left, right)

    return join


def _mv_np_tables(m: FiniteModel) -> dict:
    """Additive-signature index tables (derived ones for implicational models)."""
    t = m.np_tables
    if m.signature is Sig.MV:
        return {
            "oplus": t["oplus"], "uminus": t["uminus"],
            "pos": t["pos"], "npart": t["npart"],
            "zero": m.consts["zero"], "one": m.consts["one"],
        }
    impl, wneg = t["impl"], t["wneg"]
    one = m.consts["one"]
    return {
        "oplus": impl[wneg, :], "uminus": wneg,
        "pos": t["pos"], "npart": t["npart"],
        "zero": int(impl[one, one]), "one": one,
    }


def _join_index_table(tabs: dict) -> np.ndarray:
    oplus, uminus = tabs["oplus"], tabs["uminus"]
    pos, npart = tabs["pos"], tabs["npart"]
    n = len(uminus)
    x, y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    xp, yp, xn, yn = pos[x], pos[y], npart[x], npart[y]
    left = oplus[xp, pos[oplus[uminus[xp], yp]]]
    right = oplus[xn, pos[oplus[uminus[xn], yn]]]
    return oplus[left, right]


def mu_congruence(m: FiniteModel) -> Congruence:
    """Mutual order-relatedness: x and y below each other in the quasi-order."""
    tabs = _mv_np_tables(m)
    join = _join_index_table(tabs)
    below = join == tabs["oplus"][:, tabs["zero"]][None, :]
    rel = below & below.T
    return _partition_from_relation(
        m, lambda x, y: bool(rel[m.index[x], m.index[y]])
    )


def tau_congruence(m: FiniteModel) -> Congruence:
    """Identity off the regular part; the whole regular part is one class."""
    regs = set(regular_elements(m, check_star=False))
    return _partition_from_relation(
        m, lambda x, y: x == y or (x in regs and y in regs)
    )


def quotient(m: FiniteModel, cong: Congruence) -> FiniteModel:
    """Quotient model; class labels are canonical representatives."""
    if cong.model is not m:
        raise NotCompatible("congruence belongs to a different model")
    class_of = cong.class_of
    rep = {cls: min(cls, key=label_str) for cls in cong.classes}
    reps = tuple(rep[cls] for cls in cong.classes)

    def lift(op, arity):
        if arity == 2:
            return lambda x, y: rep[class_of[m.apply(op, x, y)]]
        return lambda x: rep[class_of[m.apply(op, x)]]

    ops = {op: lift(op, arity) for op, arity in ops_for(m.signature).items()}
    consts = {c: rep[class_of[m.const(c)]] for c in m.consts}
    q = finite_model_from_ops(f"{m.name}/~", m.signature, reps, ops, consts)
    q.quotient_classes = {rep[cls]: cls for cls in cong.classes}
    return q


@dataclass
class EmbeddingReport:
    model: FiniteModel
    mu_quotient: FiniteModel
    tau_quotient: FiniteModel
    prod: FiniteModel
    mapping: dict
    is_homomorphism: bool
    is_injective: bool
    is_surjective: bool

    @property
    def is_isomorphism(self) -> bool:
        return self.is_homomorphism and self.is_injective and self.is_surjective


def embed_into_product(m: FiniteModel) -> EmbeddingReport:
    """Map x to (x mod mu, x mod tau) and verify the embedding properties."""
    flags = classify(m)
    if not flags.is_strong:
        raise ClassError(f"{m.name} is not strong; the embedding is not defined")
    mu = mu_congruence(m)
    tau = tau_congruence(m)
    if not mu.meet(tau).is_identity():
        raise NotCompatible("the two congruences do not meet in the identity")
    qmu = quotient(m, mu)
    qtau = quotient(m, tau)
    prod = product(qmu, qtau)
    mu_rep = {el: r for r, cls in qmu.quotient_classes.items() for el in cls}
    tau_rep = {el: r for r, cls in qtau.quotient_classes.items() for el in cls}
    mapping = {x: (mu_rep[x], tau_rep[x]) for x in m.elements}

    ntau = len(qtau.elements)
    map_idx = np.asarray(
        [qmu.index[mu_rep[x]] * ntau + qtau.index[tau_rep[x]] for x in m.elements]
    )
    hom = all(
        cname not in prod.consts or map_idx[m.consts[cname]] == prod.consts[cname]
        for cname in m.consts
    )
    for op, arity in ops_for(m.signature).items():
        src, dst = m.np_tables[op], prod.np_tables[op]
        if arity == 1:
            ok = (dst[map_idx] == map_idx[src]).all()
        else:
            ok = (dst[map_idx[:, None], map_idx[None, :]] == map_idx[src]).all()
        hom = hom and bool(ok)
    injective = np.unique(map_idx).size == len(m.elements)
    surjective = np.unique(map_idx).size == len(prod.elements)
    return EmbeddingReport(m, qmu, qtau, prod, mapping, hom, injective, surjective)


def find_isomorphism(m1: FiniteModel, m2: FiniteModel) -> dict | None:
    """Search for an operation-preserving bijection (small models only)."""
    if m1.signature is not m2.signature or len(m1.elements) != len(m2.elements):
        return None
    sig_ops = ops_for(m1.signature)
    mapping: dict = {}

    def consistent(x, y) -> bool:
        trial = dict(mapping)
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if a in trial:
                if trial[a] != b:
                    return False
                continue
            if b in trial.values():
                return False
            trial[a] = b
            for op, arity in sig_ops.items():
                if arity == 1:
                    ra, rb = m1.apply(op, a), m2.apply(op, b)
                    if ra in trial and trial[ra] != rb:
                        return False
                else:
                    for c in list(trial):
                        for args1, args2 in (((a, c), (b, trial[c])), ((c, a), (trial[c], b))):
                            ra = m1.apply(op, *args1)
                            rb = m2.apply(op, *args2)
                            if ra in trial and trial[ra] != rb:
                                return False
        mapping.update(trial)
        return True

    def backtrack(i: int) -> bool:
        if i == len(m1.elements):
            return _is_iso(m1, m2, mapping)
        x = m1.elements[i]
        if x in mapping:
            return backtrack(i + 1)
        used = set(mapping.values())
        for y in m2.elements:
            if y in used:
                continue
            saved = dict(mapping)
            if consistent(x, y) and backtrack(i + 1):
                return True
            mapping.clear()
            mapping.update(saved)
        return False

    for cname in m1.consts:
        if cname in m2.consts:
            mapping[m1.const(cname)] = m2.const(cname)
    if len(set(mapping.values())) != len(mapping):
        return None
    return dict(mapping) if backtrack(0) else None


def _is_iso(m1: FiniteModel, m2: FiniteModel, mapping: dict) -> bool:
    if len(set(mapping.values())) != len(m2.elements):
        return False
    for op, arity in ops_for(m1.signature).items():
        for args in itertools.product(m1.elements, repeat=arity):
            if mapping[m1.apply(op, *args)] != m2.apply(op, *(mapping[a] for a in args)):
                return False
    return True


# ---------------------------------------------------------------------------
# Catalog


_CACHE: dict[str, Model] = {}

FINITE_CATALOG = (
    "chain:1",
    "chain:2",
    "chain:3",
    "flatten:chain:1:0",
    "flatten:chain:2:0",
    "flatten:chain:3:0",
    "product:chain:1,flatten:chain:1:0",
    "product:chain:2,flatten:chain:2:0",
    "product:chain:3,flatten:chain:3:0",
    "product:(product:chain:1,flatten:chain:1:0),(product:chain:1,flatten:chain:1:0)",
    "ex32-grid",
)

STANDARD_CATALOG = ("square", "disk", "interval", "flat-standard")


def _wrap(name: str) -> str:
    return f"({name})" if "," in name else name


def _split_product_args(body: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise CatalogError(f"cannot split product operands in {body!r}")


def _strip_parens(s: str) -> str:
    if s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


def resolve(name: str) -> Model:
    """Look a model up by its catalog name; ``@w`` selects the Wajsberg view."""
    name = name.strip()
    if name in _CACHE:
        return _CACHE[name]
    m = _build(name)
    _CACHE[name] = m
    return m


def _build(name: str) -> Model:
    if name.endswith("@w"):
        base = resolve(name[:-2])
        if base.signature is not Sig.MV:
            raise CatalogError(f"{name[:-2]} is already in the implicational signature")
        if isinstance(base, PairModel):
            return PairModel(base.kind, Sig.W)
        if isinstance(base, IntervalModel):
            return IntervalModel(Sig.W)
        if isinstance(base, FlatStandardModel):
            return FlatStandardModel(Sig.W)
        return finite_w_view(base, name)
    if name == "square":
        return PairModel("square", Sig.MV)
    if name == "disk":
        return PairModel("disk", Sig.MV)
    if name == "interval":
        return IntervalModel(Sig.MV)
    if name == "flat-standard":
        return FlatStandardModel(Sig.MV)
    if name == "ex32-grid":
        return ex32_grid()
    if name.startswith("chain:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise CatalogError(f"bad chain size in {name!r}") from None
        return finite_chain(n)
    if name.startswith("flatten:"):
        body = name[len("flatten:"):]
        base_name, _, kpart = body.rpartition(":")
        if not base_name:
            raise CatalogError(f"flatten needs a base and an element: {name!r}")
        base = resolve(base_name)
        if not isinstance(base, FiniteModel):
            raise CatalogError("flattening is available for finite bases only")
        if kpart == "new":
            return flattening(base, None)
        try:
            k = Fraction(kpart)
        except ValueError:
            raise CatalogError(f"bad flattening element {kpart!r}") from None
        return flattening(base, k)
    if name.startswith("product:"):
        left, right = _split_product_args(name[len("product:"):])
        m1 = resolve(_strip_parens(left))
        m2 = resolve(_strip_parens(right))
        if not (isinstance(m1, FiniteModel) and isinstance(m2, FiniteModel)):
            raise CatalogError("product is available for finite factors only")
        return product(m1, m2)
    raise CatalogError(f"unknown model name {name!r}")
