"""Line-by-line verification of proof scripts.

Every justification must reconstruct the line's formula: axiom lines match
one direction of a schema (the direction is recorded), rule and lemma lines
are matched conclusion-first so that shared pattern pieces (the ``r -> r``
prefix of the regularisation rules) are forced to agree across the premises
and the conclusion of one application.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax import Term, match_schema
from .script import AxiomRef, HypRef, LemmaRef, ProofScript, RuleRef
from .systems import AXIOMS, RULES, SQL


@dataclass
class LineCheck:
    number: int
    ok: bool
    detail: str
    reason: str | None = None


@dataclass
class ProofReport:
    accepted: bool
    checks: list[LineCheck]
    failure_line: int | None = None
    failure_reason: str | None = None

    def summary(self) -> str:
        if self.accepted:
            return f"ACCEPT ({len(self.checks)} lines)"
        return f"REJECT at line {self.failure_line}: {self.failure_reason}"


def _match_application(
    premises: tuple[Term, ...],
    conclusion: Term,
    cited: list[Term],
    goal: Term,
) -> dict[str, Term] | None:
    sigma = match_schema(conclusion, goal)
    if sigma is None:
        return None
    for schema, formula in zip(premises, cited):
        sigma = match_schema(schema, formula, sigma)
        if sigma is None:
            return None
    return sigma


def check_proof(script: ProofScript, registry=None) -> ProofReport:
    """Verify ``script``; rejection is a verdict, not an exception."""
    checks: list[LineCheck] = []
    axioms = AXIOMS[script.system]
    rules = RULES[script.system]

    def reject(n: int, reason: str) -> ProofReport:
        checks.append(LineCheck(n, False, "", reason))
        return ProofReport(False, checks, n, reason)

    for n, line in enumerate(script.lines, start=1):
        just = line.just
        if isinstance(just, AxiomRef):
            forms = axioms.get(just.name)
            if forms is None:
                return reject(n, f"UnknownAxiom: {just.name}")
            direction = None
            for i, schema in enumerate(forms):
                if match_schema(schema, line.formula) is not None:
                    direction = "NA" if len(forms) == 1 else ("LR", "RL")[i]
                    break
            if direction is None:
                return reject(n, f"NoMatchingAxiomInstance: {just.name}")
            checks.append(LineCheck(n, True, f"{just.name} {direction}"))
            continue

        if isinstance(just, HypRef):
            if not 1 <= just.index <= len(script.hypotheses):
                return reject(n, f"NoSuchHypothesis: {just.index}")
            if script.hypotheses[just.index - 1] != line.formula:
                return reject(n, f"HypothesisMismatch: {just.index}")
            checks.append(LineCheck(n, True, f"hypothesis {just.index}"))
            continue

        # rule and lemma lines share premise-index validation
        for p in just.premises:
            if not 1 <= p < n:
                return reject(n, f"BadPremiseIndex: {p}")
        cited = [script.lines[p - 1].formula for p in just.premises]

        if isinstance(just, RuleRef):
            rule = rules.get(just.name)
            if rule is None:
                return reject(n, f"UnknownRule: {just.name}")
            if len(cited) != len(rule.premises):
                return reject(
                    n, f"ArityMismatch: {just.name} takes {len(rule.premises)} premises"
                )
            sigma = _match_application(rule.premises, rule.conclusion, cited, line.formula)
            if sigma is None:
                return reject(n, f"NoMatchingRuleInstance: {just.name}")
            checks.append(LineCheck(n, True, f"rule {just.name}"))
            continue

        if isinstance(just, LemmaRef):
            if script.system != SQL:
                return reject(n, "LemmasRequireRegistry: derived rules live in sqL*")
            entry = registry.get(just.rule_id) if registry is not None else None
            if entry is None:
                return reject(n, f"UnknownLemma: {just.rule_id}")
            if len(cited) != len(entry.hypotheses):
                return reject(
                    n,
                    f"ArityMismatch: {just.rule_id} takes {len(entry.hypotheses)} premises",
                )
            sigma = _match_application(entry.hypotheses, entry.conclusion, cited, line.formula)
            if sigma is None:
                return reject(n, f"NoMatchingLemmaInstance: {just.rule_id}")
            checks.append(LineCheck(n, True, f"lemma {just.rule_id}"))
            continue

        return reject(n, f"UnknownJustification: {just!r}")

    return ProofReport(True, checks)
