"""Constructive proof transformers.

``replacement_proof`` turns an equivalence proof for a subformula into one
for the enclosing formula, walking the occurrence path with the registered
congruence lemmas.  ``lift_lstar_proof`` re-plays an L* derivation inside
sqL* under a reflexive prefix; ``deregularize_proof`` strips that prefix from
regular conclusions.  All outputs are ordinary scripts that the checker
verifies from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax import (
    Const1,
    Impl,
    Neg,
    Term,
    is_regular,
    subterm_at,
)
from .checker import check_proof
from .script import (
    AxiomRef,
    HypRef,
    Justification,
    LemmaRef,
    ProofLine,
    ProofScript,
    RuleRef,
    ScriptError,
)
from .systems import L_TO_SQ_AXIOM, LSTAR, SQL, instantiate_axiom


class PathMismatch(Exception):
    pass


class NotRegular(Exception):
    pass


class SourceProofInvalid(Exception):
    pass


ONE = Const1()


class ProofBuilder:
    """Accumulates proof lines; indices are 1-based, matching the file format."""

    def __init__(self, system: str = SQL, hypotheses: tuple[Term, ...] = ()):
        self.system = system
        self.hypotheses = tuple(hypotheses)
        self._lines: list[ProofLine] = []

    @classmethod
    def extending(cls, script: ProofScript) -> "ProofBuilder":
        b = cls(script.system, script.hypotheses)
        b._lines = list(script.lines)
        return b

    def add(self, formula: Term, just: Justification) -> int:
        self._lines.append(ProofLine(formula, just))
        return len(self._lines)

    def formula(self, index: int) -> Term:
        return self._lines[index - 1].formula

    def script(self) -> ProofScript:
        return ProofScript(self.system, self.hypotheses, tuple(self._lines))


@dataclass(frozen=True)
class EquivPair:
    """Two proof lines witnessing lhs -> rhs and rhs -> lhs."""

    lhs: Term
    rhs: Term
    fwd: int
    bwd: int


class EquivBuilder(ProofBuilder):
    """Proof builder with combinators for biconditional bookkeeping.

    The lemma ids used here (refl, contra, imp-cong, chain, dne-i, dne-e)
    must already be registered when the produced script is checked.
    """

    def __init__(self, system: str = SQL, hypotheses: tuple[Term, ...] = ()):
        super().__init__(system, hypotheses)
        self._refl_cache: dict[Term, int] = {}

    @classmethod
    def extending(cls, script: ProofScript) -> "EquivBuilder":
        b = cls(script.system, script.hypotheses)
        b._lines = list(script.lines)
        return b

    def refl(self, t: Term) -> int:
        if t not in self._refl_cache:
            self._refl_cache[t] = self.add(Impl(t, t), LemmaRef("refl"))
        return self._refl_cache[t]

    def axiom_pair(self, name: str, sigma: dict[str, Term]) -> EquivPair:
        forms = instantiate_axiom(self.system, name, sigma)
        if len(forms) != 2:
            raise ScriptError(f"axiom {name} is not a biconditional")
        fwd = self.add(forms[0], AxiomRef(name))
        bwd = self.add(forms[1], AxiomRef(name))
        return EquivPair(forms[0].left, forms[0].right, fwd, bwd)

    def lemma_pair(self, fwd_id: str, bwd_id: str, lhs: Term, rhs: Term) -> EquivPair:
        fwd = self.add(Impl(lhs, rhs), LemmaRef(fwd_id))
        bwd = self.add(Impl(rhs, lhs), LemmaRef(bwd_id))
        return EquivPair(lhs, rhs, fwd, bwd)

    def dne_pair(self, t: Term) -> EquivPair:
        """t <-> ~~t."""
        return self.lemma_pair("dne-i", "dne-e", t, Neg(Neg(t)))

    @staticmethod
    def flip(p: EquivPair) -> EquivPair:
        return EquivPair(p.rhs, p.lhs, p.bwd, p.fwd)

    def contra(self, p: EquivPair) -> EquivPair:
        fwd = self.add(Impl(Neg(p.lhs), Neg(p.rhs)), LemmaRef("contra", (p.bwd,)))
        bwd = self.add(Impl(Neg(p.rhs), Neg(p.lhs)), LemmaRef("contra", (p.fwd,)))
        return EquivPair(Neg(p.lhs), Neg(p.rhs), fwd, bwd)

    def impl_left(self, p: EquivPair, t: Term) -> EquivPair:
        """(lhs -> t) <-> (rhs -> t)."""
        r = self.refl(t)
        fwd = self.add(
            Impl(Impl(p.lhs, t), Impl(p.rhs, t)), LemmaRef("imp-cong", (p.bwd, r))
        )
        bwd = self.add(
            Impl(Impl(p.rhs, t), Impl(p.lhs, t)), LemmaRef("imp-cong", (p.fwd, r))
        )
        return EquivPair(Impl(p.lhs, t), Impl(p.rhs, t), fwd, bwd)

    def impl_right(self, t: Term, p: EquivPair) -> EquivPair:
        """(t -> lhs) <-> (t -> rhs)."""
        r = self.refl(t)
        fwd = self.add(
            Impl(Impl(t, p.lhs), Impl(t, p.rhs)), LemmaRef("imp-cong", (r, p.fwd))
        )
        bwd = self.add(
            Impl(Impl(t, p.rhs), Impl(t, p.lhs)), LemmaRef("imp-cong", (r, p.bwd))
        )
        return EquivPair(Impl(t, p.lhs), Impl(t, p.rhs), fwd, bwd)

    def chain(self, p1: EquivPair, p2: EquivPair) -> EquivPair:
        if p1.rhs != p2.lhs:
            raise ScriptError("equivalence chain does not compose")
        fwd = self.add(Impl(p1.lhs, p2.rhs), LemmaRef("chain", (p1.fwd, p2.fwd)))
        bwd = self.add(Impl(p2.rhs, p1.lhs), LemmaRef("chain", (p2.bwd, p1.bwd)))
        return EquivPair(p1.lhs, p2.rhs, fwd, bwd)

    def chain_forward(self, p1: EquivPair, p2: EquivPair) -> int:
        """Only the forward composite line; used to pin a script's conclusion."""
        if p1.rhs != p2.lhs:
            raise ScriptError("equivalence chain does not compose")
        return self.add(Impl(p1.lhs, p2.rhs), LemmaRef("chain", (p1.fwd, p2.fwd)))

    def chain_backward(self, p1: EquivPair, p2: EquivPair) -> int:
        if p1.rhs != p2.lhs:
            raise ScriptError("equivalence chain does not compose")
        return self.add(Impl(p2.rhs, p1.lhs), LemmaRef("chain", (p2.bwd, p1.bwd)))

    def replace_at(self, root: Term, path: tuple[int, ...], p: EquivPair) -> EquivPair:
        """root <-> root[path := p.rhs], built by walking the path outwards."""
        if subterm_at(root, path) != p.lhs:
            raise PathMismatch(
                f"subterm at {path} is {subterm_at(root, path)}, not {p.lhs}"
            )
        pair = p
        for depth in reversed(range(len(path))):
            node = subterm_at(root, path[:depth])
            step = path[depth]
            if isinstance(node, Neg):
                pair = self.contra(pair)
            elif isinstance(node, Impl) and step == 0:
                pair = self.impl_left(pair, node.right)
            elif isinstance(node, Impl) and step == 1:
                pair = self.impl_right(node.left, pair)
            else:
                raise PathMismatch(f"cannot rewrite under {type(node).__name__}")
        return pair

    def replace_everywhere(self, root: Term, p: EquivPair) -> EquivPair:
        """Replace every occurrence of p.lhs in root, one path at a time."""
        from ..syntax import positions

        pair_total: EquivPair | None = None
        cur = root
        while True:
            path = next(
                (pos for pos in positions(cur) if subterm_at(cur, pos) == p.lhs), None
            )
            if path is None:
                break
            step_pair = self.replace_at(cur, path, p)
            pair_total = step_pair if pair_total is None else self.chain(pair_total, step_pair)
            cur = step_pair.rhs
        if pair_total is None:
            raise PathMismatch(f"{p.lhs} does not occur in the target")
        return pair_total


def replacement_proof(
    target: Term, path: tuple[int, ...], equiv: ProofScript
) -> ProofScript:
    """From a proof of sub <-> sub' build one of target <-> target[path := sub'].

    ``equiv`` must end with the two implications, forward then backward; the
    output keeps that convention.  An empty path returns ``equiv`` itself.
    """
    if len(equiv.lines) < 2:
        raise PathMismatch("equivalence script must end with the two implications")
    f_fwd = equiv.lines[-2].formula
    f_bwd = equiv.lines[-1].formula
    if not (
        isinstance(f_fwd, Impl)
        and isinstance(f_bwd, Impl)
        and f_fwd.left == f_bwd.right
        and f_fwd.right == f_bwd.left
    ):
        raise PathMismatch("equivalence script must end with the two implications")
    if not path:
        return equiv
    sub, sub_new = f_fwd.left, f_fwd.right
    if subterm_at(target, path) != sub:
        raise PathMismatch(
            f"subterm at {path} does not match the proved equivalence"
        )
    b = EquivBuilder.extending(equiv)
    pair = EquivPair(sub, sub_new, len(equiv.lines) - 1, len(equiv.lines))
    b.replace_at(target, path, pair)
    return b.script()


def lift_lstar_proof(source: ProofScript, prefix: str = "p") -> ProofScript:
    """Re-play an L* derivation in sqL*, concluding (prefix->prefix) -> q."""
    if source.system != LSTAR:
        raise SourceProofInvalid("the source script is not an L* proof")
    report = check_proof(source)
    if not report.accepted:
        raise SourceProofInvalid(f"source does not check: {report.summary()}")
    from ..syntax import Var

    pp = Impl(Var(prefix), Var(prefix))
    b = ProofBuilder(SQL, source.hypotheses)
    lifted: dict[int, int] = {}
    for i, line in enumerate(source.lines, start=1):
        just = line.just
        f = line.formula
        if isinstance(just, AxiomRef):
            base = b.add(f, AxiomRef(L_TO_SQ_AXIOM[just.name]))
            lifted[i] = b.add(Impl(pp, f), RuleRef("Reg", (base,)))
        elif isinstance(just, HypRef):
            base = b.add(f, just)
            lifted[i] = b.add(Impl(pp, f), RuleRef("Reg", (base,)))
        elif isinstance(just, RuleRef) and just.name == "R1":
            j, k = just.premises
            lifted[i] = b.add(Impl(pp, f), RuleRef("qMP", (lifted[j], lifted[k])))
        elif isinstance(just, RuleRef) and just.name == "R2":
            j, k = just.premises
            # both premises are implications, hence regular: recover them bare
            pj = b.add(source.lines[j - 1].formula, RuleRef("AReg1", (lifted[j],)))
            pk = b.add(source.lines[k - 1].formula, RuleRef("AReg1", (lifted[k],)))
            bare = b.add(f, RuleRef("R2'", (pj, pk)))
            lifted[i] = b.add(Impl(pp, f), RuleRef("Reg", (bare,)))
        elif isinstance(just, RuleRef) and just.name == "R3":
            (j,) = just.premises
            bare = b.add(f, RuleRef("R3'", (lifted[j],)))
            lifted[i] = b.add(Impl(pp, f), RuleRef("Reg", (bare,)))
        else:
            raise SourceProofInvalid(f"unsupported justification {just!r}")
    return b.script()


def deregularize_proof(source: ProofScript, registry=None) -> ProofScript:
    """From a proof of (x->x) -> q with q regular, produce a proof of q.

    Double negations over the regular core are stripped with the registered
    double-negation lemma under the prefix, the matching de-regularisation
    rule removes the prefix, and Inv1 pumps the negations back.
    """
    if registry is None:
        from .registry import standard_registry

        registry = standard_registry()
    if source.system != SQL:
        raise SourceProofInvalid("the source script is not an sqL* proof")
    report = check_proof(source, registry)
    if not report.accepted:
        raise SourceProofInvalid(f"source does not check: {report.summary()}")
    concl = source.conclusion
    if not (
        isinstance(concl, Impl)
        and isinstance(concl.left, Impl)
        and concl.left.left == concl.left.right
    ):
        raise SourceProofInvalid("conclusion does not carry a reflexive prefix")
    pp, q = concl.left, concl.right
    if not is_regular(q):
        raise NotRegular(f"conclusion {q} is a negated variable")

    k = 0
    base = q
    while isinstance(base, Neg):
        k += 1
        base = base.arg

    b = ProofBuilder.extending(source)
    cur_line = len(source.lines)
    cur = k

    def nstack(n: int) -> Term:
        t = base
        for _ in range(n):
            t = Neg(t)
        return t

    while cur >= 2:
        tgt = nstack(cur - 2)
        lem = b.add(Impl(Neg(Neg(tgt)), tgt), LemmaRef("dne-e"))
        reg = b.add(Impl(pp, b.formula(lem)), RuleRef("Reg", (lem,)))
        cur_line = b.add(Impl(pp, tgt), RuleRef("qMP", (cur_line, reg)))
        cur -= 2

    if base == ONE:
        rule = "AReg3" if cur == 1 else "AReg4"
    else:
        rule = "AReg2" if cur == 1 else "AReg1"
    cur_line = b.add(nstack(cur), RuleRef(rule, (cur_line,)))

    while cur < k:
        cur_line = b.add(nstack(cur + 2), RuleRef("Inv1", (cur_line,)))
        cur += 2
    return b.script()
