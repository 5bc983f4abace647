"""Terms of the two algebraic signatures, parsing, printing, and schema matching.

A single ``Term`` type covers both languages; which constructors are legal is
decided by a signature tag (``Sig.MV`` vs ``Sig.W``).  The join ``\\/`` is
surface sugar and is expanded while parsing; the unary parts ``^+`` / ``^-``
are primitive constructors that can be expanded away in strong algebras via
:func:`expand_abbreviations`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator


class Sig(enum.Enum):
    """Signature tag: additive language or implicational language."""

    MV = "mv"
    W = "w"


class FormulaError(Exception):
    """Base class for errors raised while handling formulas."""


class ParseError(FormulaError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position + 1})")
        self.position = position


class SignatureError(FormulaError):
    pass


class MissingBinding(FormulaError):
    pass


class ModeError(FormulaError):
    pass


# ---------------------------------------------------------------------------
# Term nodes


@dataclass(frozen=True)
class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Const0(Term):
    pass


@dataclass(frozen=True)
class Const1(Term):
    pass


@dataclass(frozen=True)
class OPlus(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class UMinus(Term):
    arg: Term


@dataclass(frozen=True)
class Impl(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class PosPart(Term):
    arg: Term


@dataclass(frozen=True)
class NegPart(Term):
    arg: Term


ZERO = Const0()
ONE = Const1()

# Constructor tags accepted by count_connective and friends.
CONNECTIVES = {
    "oplus": OPlus,
    "uminus": UMinus,
    "impl": Impl,
    "neg": Neg,
    "pos": PosPart,
    "npart": NegPart,
    "zero": Const0,
    "one": Const1,
    "var": Var,
}

_MV_ONLY = (Const0, OPlus, UMinus)
_W_ONLY = (Impl, Neg)


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (OPlus, Impl)):
        return (t.left, t.right)
    if isinstance(t, (UMinus, Neg, PosPart, NegPart)):
        return (t.arg,)
    return ()


def rebuild(t: Term, new_children: tuple[Term, ...]) -> Term:
    if isinstance(t, (OPlus, Impl)):
        return type(t)(new_children[0], new_children[1])
    if isinstance(t, (UMinus, Neg, PosPart, NegPart)):
        return type(t)(new_children[0])
    return t


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for c in children(t):
        yield from subterms(c)


def positions(t: Term) -> Iterator[tuple[int, ...]]:
    """All subterm positions of ``t`` in preorder, as child-index paths."""
    yield ()
    for i, c in enumerate(children(t)):
        for p in positions(c):
            yield (i,) + p


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    for i in path:
        t = children(t)[i]
    return t


def replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    cs = list(children(t))
    cs[path[0]] = replace_at(cs[path[0]], path[1:], new)
    return rebuild(t, tuple(cs))


def variables(t: Term) -> tuple[str, ...]:
    """Variable names in order of first occurrence."""
    seen: dict[str, None] = {}
    for s in subterms(t):
        if isinstance(s, Var):
            seen.setdefault(s.name, None)
    return tuple(seen)


def count_connective(t: Term, tag: str | type) -> int:
    cls = CONNECTIVES[tag] if isinstance(tag, str) else tag
    return sum(1 for s in subterms(t) if isinstance(s, cls))


def signature_ok(t: Term, sig: Sig) -> bool:
    bad = _W_ONLY if sig is Sig.MV else _MV_ONLY
    return not any(isinstance(s, bad) for s in subterms(t))


def check_signature(t: Term, sig: Sig) -> None:
    bad = _W_ONLY if sig is Sig.MV else _MV_ONLY
    for s in subterms(t):
        if isinstance(s, bad):
            raise SignatureError(
                f"connective {type(s).__name__} is not part of the "
                f"{sig.value.upper()}-STAR language"
            )


def is_regular(t: Term) -> bool:
    """False exactly for a (possibly empty) stack of unary minus/negation over a variable."""
    while isinstance(t, (Neg, UMinus)):
        t = t.arg
    return not isinstance(t, Var)


# ---------------------------------------------------------------------------
# Join sugar and abbreviation expansion


def join_term(x: Term, y: Term, sig: Sig) -> Term:
    """The lattice join as a term with primitive ``^+`` / ``^-`` parts."""
    if sig is Sig.MV:
        # (x^+ (+) (-x^+ (+) y^+)^+) (+) (x^- (+) (-x^- (+) y^-)^+)
        xp, yp, xn, yn = PosPart(x), PosPart(y), NegPart(x), NegPart(y)
        return OPlus(
            OPlus(xp, PosPart(OPlus(UMinus(xp), yp))),
            OPlus(xn, PosPart(OPlus(UMinus(xn), yn))),
        )
    # ((x^+ -> y^+)^+ -> (~x)^-) -> ((y^- -> x^-)^- -> x^-)
    xp, yp, xn, yn = PosPart(x), PosPart(y), NegPart(x), NegPart(y)
    return Impl(
        Impl(PosPart(Impl(xp, yp)), NegPart(Neg(x))),
        Impl(NegPart(Impl(yn, xn)), xn),
    )


def expand_abbreviations(
    t: Term, sig: Sig, mode: str = "strong", target_strong: bool = True
) -> Term:
    """Rewrite ``^+`` / ``^-`` into their defining terms.

    ``mode="strong"`` uses the forms that are valid in strong algebras
    ((x->1)->1 resp. 1(+)(-1(+)x) and duals); ``mode="primitive"`` keeps the
    parts as primitive constructors and returns the term unchanged.
    """
    if mode == "primitive":
        return t
    if mode != "strong":
        raise ModeError(f"unknown expansion mode {mode!r}")
    if not target_strong:
        raise ModeError("strong expansion requested for a non-strong target")
    check_signature(t, sig)

    def go(s: Term) -> Term:
        cs = tuple(go(c) for c in children(s))
        s = rebuild(s, cs)
        if isinstance(s, PosPart):
            if sig is Sig.W:
                return Impl(Impl(s.arg, ONE), ONE)
            return OPlus(ONE, OPlus(UMinus(ONE), s.arg))
        if isinstance(s, NegPart):
            if sig is Sig.W:
                return Impl(Impl(s.arg, Neg(ONE)), Neg(ONE))
            return OPlus(UMinus(ONE), OPlus(ONE, s.arg))
        return s

    return go(t)


# ---------------------------------------------------------------------------
# Parser

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<oplus>\(\+\))
      | (?P<iff><->)
      | (?P<arrow>->)
      | (?P<pospart>\^\+)
      | (?P<negpart>\^-)
      | (?P<join>\\/)
      | (?P<minus>-)
      | (?P<tilde>~)
      | (?P<lpar>\()
      | (?P<rpar>\))
      | (?P<zero>0)
      | (?P<one>1)
      | (?P<ident>[a-z][a-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Sig, allow_iff: bool):
        self.tokens = _tokenize(text)
        self.sig = sig
        self.allow_iff = allow_iff
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    # precedence, loosest first: <->, (-> | (+)), \/, prefix, postfix, atom

    def parse_iff(self) -> tuple[Term, ...]:
        lhs = self.parse_infix()
        if self.peek()[0] == "iff":
            tok = self.next()
            if not self.allow_iff:
                raise ParseError("'<->' is not allowed here", tok[2])
            if self.sig is not Sig.W:
                raise SignatureError("'<->' belongs to the W-STAR language")
            rhs = self.parse_infix()
            return (Impl(lhs, rhs), Impl(rhs, lhs))
        return (lhs,)

    def parse_infix(self) -> Term:
        lhs = self.parse_join()
        kind, _, pos = self.peek()
        if kind == "arrow":
            if self.sig is not Sig.MV:
                self.next()
                return Impl(lhs, self.parse_infix())
            raise SignatureError("'->' is not part of the MV-STAR language")
        while self.peek()[0] == "oplus":
            if self.sig is not Sig.MV:
                raise SignatureError("'(+)' is not part of the W-STAR language")
            self.next()
            lhs = OPlus(lhs, self.parse_join())
        return lhs

    def parse_join(self) -> Term:
        t = self.parse_prefix()
        while self.peek()[0] == "join":
            self.next()
            t = join_term(t, self.parse_prefix(), self.sig)
        return t

    def parse_prefix(self) -> Term:
        kind, _, pos = self.peek()
        if kind == "minus":
            if self.sig is not Sig.MV:
                raise SignatureError("unary '-' is not part of the W-STAR language")
            self.next()
            return UMinus(self.parse_prefix())
        if kind == "tilde":
            if self.sig is not Sig.W:
                raise SignatureError("'~' is not part of the MV-STAR language")
            self.next()
            return Neg(self.parse_prefix())
        return self.parse_postfix()

    def parse_postfix(self) -> Term:
        t = self.parse_atom()
        while True:
            kind = self.peek()[0]
            if kind == "pospart":
                self.next()
                t = PosPart(t)
            elif kind == "negpart":
                self.next()
                t = NegPart(t)
            else:
                return t

    def parse_atom(self) -> Term:
        kind, text, pos = self.next()
        if kind == "ident":
            return Var(text)
        if kind == "zero":
            if self.sig is not Sig.MV:
                raise SignatureError("constant '0' is not part of the W-STAR language")
            return ZERO
        if kind == "one":
            return ONE
        if kind == "lpar":
            inner = self.parse_infix()
            self.expect("rpar")
            return inner
        raise ParseError(f"expected a formula, found {text!r}", pos)


def parse(text: str, sig: Sig) -> Term:
    """Parse ``text`` as a single formula of the given signature."""
    p = _Parser(text, sig, allow_iff=False)
    terms = p.parse_iff()
    p.expect("eof")
    return terms[0]


def parse_iff(text: str, sig: Sig = Sig.W) -> tuple[Term, ...]:
    """Parse a formula that may carry a topmost ``<->``.

    Returns a 1-tuple for plain formulas and the pair of implications
    (forward, backward) if ``<->`` is present.
    """
    p = _Parser(text, sig, allow_iff=True)
    terms = p.parse_iff()
    p.expect("eof")
    return terms


# ---------------------------------------------------------------------------
# Printer

_LEVEL_INFIX = 1
_LEVEL_PREFIX = 2
_LEVEL_POSTFIX = 3
_LEVEL_ATOM = 4


def _level(t: Term) -> int:
    if isinstance(t, (OPlus, Impl)):
        return _LEVEL_INFIX
    if isinstance(t, (UMinus, Neg)):
        return _LEVEL_PREFIX
    if isinstance(t, (PosPart, NegPart)):
        return _LEVEL_POSTFIX
    return _LEVEL_ATOM


def print_term(t: Term) -> str:
    """Render ``t`` with minimal parentheses; ``parse(print_term(t))`` is ``t``."""

    def p(s: Term, minimum: int) -> str:
        text = _render(s)
        if _level(s) < minimum:
            return f"({text})"
        return text

    def _render(s: Term) -> str:
        if isinstance(s, Var):
            return s.name
        if isinstance(s, Const0):
            return "0"
        if isinstance(s, Const1):
            return "1"
        if isinstance(s, OPlus):
            return f"{p(s.left, _LEVEL_INFIX)} (+) {p(s.right, _LEVEL_INFIX + 1)}"
        if isinstance(s, Impl):
            return f"{p(s.left, _LEVEL_INFIX + 1)} -> {p(s.right, _LEVEL_INFIX)}"
        if isinstance(s, UMinus):
            return f"-{p(s.arg, _LEVEL_PREFIX)}"
        if isinstance(s, Neg):
            return f"~{p(s.arg, _LEVEL_PREFIX)}"
        if isinstance(s, PosPart):
            return f"{p(s.arg, _LEVEL_POSTFIX)}^+"
        return f"{p(s.arg, _LEVEL_POSTFIX)}^-"

    return _render(t)


# ---------------------------------------------------------------------------
# One-sided schema matching


@dataclass(frozen=True)
class Schema:
    """A term pattern whose variables act as metavariables."""

    pattern: Term
    sig: Sig = Sig.W

    @property
    def metavars(self) -> tuple[str, ...]:
        return variables(self.pattern)

    @property
    def arity(self) -> int:
        return len(self.metavars)

    def match(self, ground: Term) -> dict[str, Term] | None:
        return match_schema(self.pattern, ground)

    def substitute(self, assignment: dict[str, Term]) -> Term:
        return substitute(self.pattern, assignment, self.sig)


def match_schema(
    pattern: Term, ground: Term, bindings: dict[str, Term] | None = None
) -> dict[str, Term] | None:
    """Match ``ground`` against ``pattern``; repeated metavariables must agree.

    Returns the (unique) assignment or None.  Matching is one-sided: variables
    occurring in ``ground`` are treated as ordinary constants.
    """
    out = dict(bindings) if bindings else {}

    def go(pat: Term, g: Term) -> bool:
        if isinstance(pat, Var):
            bound = out.get(pat.name)
            if bound is None:
                out[pat.name] = g
                return True
            return bound == g
        if type(pat) is not type(g):
            return False
        return all(go(pc, gc) for pc, gc in zip(children(pat), children(g)))

    return out if go(pattern, ground) else None


def substitute(pattern: Term, assignment: dict[str, Term], sig: Sig | None = None) -> Term:
    """Homomorphic replacement of the pattern's metavariables."""
    if sig is not None:
        for name, image in assignment.items():
            check_signature(image, sig)

    def go(s: Term) -> Term:
        if isinstance(s, Var):
            try:
                return assignment[s.name]
            except KeyError:
                raise MissingBinding(f"no binding for metavariable {s.name!r}") from None
        return rebuild(s, tuple(go(c) for c in children(s)))

    result = go(pattern)
    if sig is not None:
        check_signature(result, sig)
    return result
