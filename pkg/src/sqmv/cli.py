"""Command-line front end.

Exit codes: 0 success / valid / ACCEPT, 1 countermodel found or proof
REJECTed, 2 usage, parse, or I/O errors.  Identical invocations produce
byte-identical output; every sampling verb takes a ``--seed`` (default 0).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import axioms as axioms_mod
from . import models as md
from . import semantics as sem
from . import transform
from .proofkit import (
    check_proof,
    deregularize_proof,
    format_script,
    lift_lstar_proof,
    parse_script,
    standard_registry,
)
from .syntax import (
    FormulaError,
    Sig,
    Term,
    children,
    parse,
    print_term,
)


class CliError(Exception):
    pass


def _sig(text: str) -> Sig:
    return Sig.MV if text == "mv" else Sig.W


def _model(name: str) -> md.Model:
    try:
        return md.resolve(name)
    except md.ModelError as exc:
        raise CliError(str(exc)) from None


def _default_strategy(m: md.Model, text: str | None) -> sem.Strategy:
    if text:
        return sem.parse_strategy(text)
    return sem.Exhaustive() if m.finite else sem.RandomSampling(10000)


def _apply_max_den(strategy: sem.Strategy, max_den: int | None) -> sem.Strategy:
    if max_den and isinstance(strategy, sem.RandomSampling):
        return sem.RandomSampling(strategy.count, max_den)
    return strategy


def _parse_element(m: md.Model, text: str):
    text = text.strip()
    if text == "k*":
        return md.ADJOINED
    if text.startswith("<") and text.endswith(">"):
        text = text[1:-1]
    if "," in text:
        parts = [_parse_element(m, p) for p in _split_top(text)]
        return tuple(parts)
    try:
        return Fraction(text)
    except ValueError:
        raise CliError(f"cannot read element {text!r}") from None


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "<":
            depth += 1
        elif ch == ">":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _ast(t: Term) -> dict:
    node = type(t).__name__
    if hasattr(t, "name"):
        return {"node": node, "name": t.name}
    kids = children(t)
    if not kids:
        return {"node": node}
    return {"node": node, "children": [_ast(c) for c in kids]}


def _ast_text(t: Term, indent: int = 0) -> str:
    pad = "  " * indent
    node = type(t).__name__
    if hasattr(t, "name"):
        return f"{pad}{node} {t.name}"
    lines = [pad + node]
    for c in children(t):
        lines.append(_ast_text(c, indent + 1))
    return "\n".join(lines)


def _emit_report(report: sem.CheckReport, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.as_json(), sort_keys=True))
    else:
        print(report.as_text())
    return 1 if report.found_countermodel else 0


def _resolve_script_path(path: str) -> str:
    if os.path.exists(path):
        return path
    base = os.environ.get("SQMV_FIXTURES")
    if base:
        candidate = os.path.join(base, path)
        if os.path.exists(candidate):
            return candidate
    raise CliError(f"no such proof script: {path}")


def _load_script(path: str):
    with open(_resolve_script_path(path), encoding="utf-8") as fh:
        return parse_script(fh.read())


# ---------------------------------------------------------------------------
# Verbs


def cmd_parse(args) -> int:
    t = parse(args.formula, _sig(args.sig))
    if args.json:
        print(json.dumps(_ast(t), sort_keys=True))
    else:
        print(_ast_text(t))
    return 0


def cmd_print(args) -> int:
    print(print_term(parse(args.formula, _sig(args.sig))))
    return 0


def cmd_eval(args) -> int:
    m = _model(args.model)
    t = parse(args.formula, m.signature)
    valuation = {}
    for binding in args.let or []:
        name, _, value = binding.partition("=")
        if not _:
            raise CliError(f"bindings look like x=1/2 or x=1/2,0 (got {binding!r})")
        valuation[name.strip()] = _parse_element(m, value)
    value = sem.evaluate(t, m, valuation)
    if args.json:
        print(json.dumps({"value": md.label_str(value)}))
    else:
        print(md.label_str(value))
    return 0


def cmd_check_eq(args) -> int:
    m = _model(args.model)
    lhs = parse(args.lhs, m.signature)
    rhs = parse(args.rhs, m.signature)
    strategy = _apply_max_den(_default_strategy(m, args.strategy), args.max_den)
    report = sem.check_equation(lhs, rhs, m, strategy, args.seed)
    return _emit_report(report, args.json)


def cmd_check_entail(args) -> int:
    m = _model(args.model)
    if m.signature is not Sig.W:
        raise CliError("entailment needs a Wajsberg view; pick a model with @w")
    premises = [parse(p, Sig.W) for p in args.premise or []]
    conclusion = parse(args.conclusion, Sig.W)
    strategy = _apply_max_den(_default_strategy(m, args.strategy), args.max_den)
    report = sem.check_entailment(premises, conclusion, m, strategy, args.seed)
    return _emit_report(report, args.json)


def cmd_find_countermodel(args) -> int:
    names = [n.strip() for n in args.models.split(",") if n.strip()]
    if not names:
        raise CliError("no models given")
    first = _model(names[0])
    lhs = parse(args.lhs, first.signature)
    rhs = parse(args.rhs, first.signature)
    strategy = _apply_max_den(
        sem.parse_strategy(args.strategy) if args.strategy else sem.RandomSampling(10000),
        args.max_den,
    )
    report = sem.search_countermodel(lhs, rhs, names, strategy, args.seed)
    return _emit_report(report, args.json)


def cmd_translate(args) -> int:
    source = Sig.MV if args.to == "w" else Sig.W
    t = parse(args.formula, source)
    out = transform.mv_to_w_term(t) if args.to == "w" else transform.w_to_mv_term(t)
    print(print_term(out))
    return 0


def cmd_classify(args) -> int:
    m = _model(args.model)
    if not isinstance(m, md.FiniteModel):
        raise CliError("classification sweeps require a finite model")
    flags = md.classify(m)
    if args.json:
        payload = {
            "model": m.name,
            "size": len(m.elements),
            "is_quasi": flags.is_quasi,
            "is_strong": flags.is_strong,
            "is_flat": flags.is_flat,
            "is_star": flags.is_star,
            "failed": sorted(k for k, v in flags.axiom_results.items() if not v),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"model: {m.name} ({len(m.elements)} elements)")
        print(flags.summary())
        for name in sorted(flags.witnesses):
            wit = flags.witnesses[name]
            pretty = ", ".join(f"{k}={md.label_str(v)}" for k, v in sorted(wit.items()))
            print(f"fails {name}" + (f" at {pretty}" if pretty else ""))
    if args.tables:
        print(m.table_text(), end="")
    return 0


def cmd_audit_axioms(args) -> int:
    m = _model(args.model)
    battery = axioms_mod.audit_battery(m.signature)
    strategy = _apply_max_den(_default_strategy(m, args.strategy), args.max_den)
    failures = 0
    for eq in battery:
        report = sem.check_equation(eq.lhs, eq.rhs, m, strategy, args.seed)
        ok = not report.found_countermodel
        failures += 0 if ok else 1
        print(f"{'PASS' if ok else 'FAIL'} {eq.name} [{report.samples_tried} samples]")
    print(f"{len(battery) - failures}/{len(battery)} axioms pass on {m.name}")
    return 0 if failures == 0 else 1


def cmd_check_proof(args) -> int:
    script = _load_script(args.file)
    report = check_proof(script, standard_registry())
    print(report.summary())
    if args.verbose:
        for c in report.checks:
            mark = "ok" if c.ok else "FAIL"
            print(f"  line {c.number}: {mark} {c.detail or c.reason}")
    return 0 if report.accepted else 1


def cmd_lift_proof(args) -> int:
    script = _load_script(args.file)
    lifted = lift_lstar_proof(script, args.prefix)
    print(format_script(lifted), end="")
    return 0


def cmd_deregularize(args) -> int:
    script = _load_script(args.file)
    out = deregularize_proof(script, standard_registry())
    print(format_script(out), end="")
    return 0


# ---------------------------------------------------------------------------
# Argument wiring


def _add_common(p: argparse.ArgumentParser, model: bool = True) -> None:
    if model:
        p.add_argument("--model", required=True, help="catalog model name")
    p.add_argument("--strategy", help="exhaustive | grid[:d] | random:n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-den", type=int, default=None, dest="max_den")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sqmv",
        description="Strong quasi-MV* / quasi-Wajsberg* algebra workbench",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("parse", help="parse a formula and show its tree")
    p.add_argument("--sig", choices=("mv", "w"), default="mv")
    p.add_argument("--json", action="store_true")
    p.add_argument("formula")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("print", help="parse and re-print a formula canonically")
    p.add_argument("--sig", choices=("mv", "w"), default="mv")
    p.add_argument("formula")
    p.set_defaults(fn=cmd_print)

    p = sub.add_parser("eval", help="evaluate a formula in a model")
    p.add_argument("--model", required=True)
    p.add_argument("--let", action="append", metavar="x=VALUE")
    p.add_argument("--json", action="store_true")
    p.add_argument("formula")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("check-eq", help="check an equation over a model")
    _add_common(p)
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(fn=cmd_check_eq)

    p = sub.add_parser("check-entail", help="designated-value entailment check")
    _add_common(p)
    p.add_argument("--premise", action="append")
    p.add_argument("conclusion")
    p.set_defaults(fn=cmd_check_entail)

    p = sub.add_parser("find-countermodel", help="search a family of models")
    p.add_argument("--models", required=True, help="comma-separated catalog names")
    p.add_argument("--strategy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-den", type=int, default=None, dest="max_den")
    p.add_argument("--json", action="store_true")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(fn=cmd_find_countermodel)

    p = sub.add_parser("translate", help="translate a formula between signatures")
    p.add_argument("--to", choices=("w", "mv"), required=True)
    p.add_argument("formula")
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("classify", help="exhaustive class flags of a finite model")
    p.add_argument("--model", required=True)
    p.add_argument("--tables", action="store_true", help="dump operation tables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("audit-axioms", help="run the axiom battery over a model")
    _add_common(p)
    p.set_defaults(fn=cmd_audit_axioms)

    p = sub.add_parser("check-proof", help="check a proof script file")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check_proof)

    p = sub.add_parser("lift-proof", help="re-play an L* proof inside sqL*")
    p.add_argument("--prefix", default="p", help="variable of the reflexive prefix")
    p.add_argument("file")
    p.set_defaults(fn=cmd_lift_proof)

    p = sub.add_parser("deregularize", help="strip the reflexive prefix")
    p.add_argument("file")
    p.set_defaults(fn=cmd_deregularize)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, FormulaError, md.ModelError, sem.SemanticsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # proofkit errors and the rest
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
