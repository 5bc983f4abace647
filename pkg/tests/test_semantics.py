from fractions import Fraction as F

import pytest

from conftest import (
    oracle_interval,
    oracle_pair,
    random_disk_valuation,
    random_interval_valuation,
    random_square_valuation,
    random_term,
)
from sqmv import corpus
from sqmv.models import resolve
from sqmv.semantics import (
    Exhaustive,
    Grid,
    RandomSampling,
    SemanticsError,
    StrategyError,
    UnboundVariable,
    Verdict,
    check_entailment,
    check_equation,
    designated_set,
    evaluate,
    parse_strategy,
    search_countermodel,
    zero_second_coordinates,
)
from sqmv.syntax import Sig, SignatureError, parse, variables


def mv(text):
    return parse(text, Sig.MV)


def w(text):
    return parse(text, Sig.W)


class TestEvaluate:
    def test_add_zero_collapses_second_coordinate(self):
        sq = resolve("square")
        out = evaluate(mv("p (+) 0"), sq, {"p": (F(3, 10), F(1, 2))})
        assert out == (F(3, 10), F(0))

    def test_double_negation_identity(self):
        for name in ("square@w", "disk@w", "interval@w", "chain:2@w"):
            m = resolve(name)
            el = m.const("one")
            assert evaluate(w("~~p"), m, {"p": el}) == el

    def test_self_implication_is_zero(self):
        sw = resolve("square@w")
        assert evaluate(w("1 -> 1"), sw, {}) == (F(0), F(0))

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariable):
            evaluate(mv("p (+) q"), resolve("square"), {"p": (F(0), F(0))})

    def test_signature_mismatch(self):
        with pytest.raises(SignatureError):
            evaluate(mv("p (+) q"), resolve("square@w"), {})

    def test_matches_reference_evaluator(self, rng):
        sq, dk = resolve("square"), resolve("disk")
        sw = resolve("square@w")
        iv, fl = resolve("interval"), resolve("flat-standard")
        for _ in range(400):
            t = random_term(rng, Sig.MV, 5)
            names = variables(t)
            v = random_square_valuation(rng, names)
            assert evaluate(t, sq, v) == oracle_pair(t, v)
            vd = random_disk_valuation(rng, names)
            assert evaluate(t, dk, vd) == oracle_pair(t, vd)
            vi = random_interval_valuation(rng, names)
            assert evaluate(t, iv, vi) == oracle_interval(t, vi)
            assert evaluate(t, fl, vi) == oracle_interval(t, vi, flat=True)
            s = random_term(rng, Sig.W, 5)
            vs = random_square_valuation(rng, variables(s))
            assert evaluate(s, sw, vs) == oracle_pair(s, vs)


class TestBatchAgreesWithScalar:
    def test_random_reports_recheck(self, rng):
        # countermodel construction re-evaluates through the scalar path,
        # so a run over many invalid equations cross-checks both evaluators
        sq = resolve("square")
        for eq in corpus.invalid_equations():
            if eq.sig is not Sig.MV:
                continue
            report = check_equation(eq.lhs, eq.rhs, sq, RandomSampling(300), seed=5)
            assert report.verdict is Verdict.COUNTERMODEL, eq.name


class TestCheckEquation:
    def test_commutativity_sampled(self):
        report = check_equation(
            mv("x (+) y"), mv("y (+) x"), resolve("square"), RandomSampling(10000), seed=7
        )
        assert report.verdict is Verdict.NO_COUNTEREXAMPLE_FOUND
        assert report.samples_tried == 10000

    def test_grid_finds_off_slice_witness(self):
        report = check_equation(
            mv("x (+) 0"), mv("x"), resolve("square"), Grid(4)
        )
        assert report.verdict is Verdict.COUNTERMODEL
        assert report.witness.valuation == {"x": (F(0), F(1, 2))}
        assert report.witness.lhs_value == (F(0), F(0))
        assert report.witness.rhs_value == (F(0), F(1, 2))

    def test_strong_law_everywhere(self):
        for name in ("square", "disk"):
            report = check_equation(
                mv("x^+"), mv("x^+ (+) 0"), resolve(name), RandomSampling(2000), seed=1
            )
            assert not report.found_countermodel
        report = check_equation(
            mv("x^+"), mv("x^+ (+) 0"), resolve("chain:2"), Exhaustive()
        )
        assert report.verdict is Verdict.VALID_EXHAUSTIVE

    def test_exhaustive_needs_finite_carrier(self):
        with pytest.raises(StrategyError):
            check_equation(mv("x"), mv("x"), resolve("square"), Exhaustive())

    def test_grid_rejected_on_finite(self):
        with pytest.raises(StrategyError):
            check_equation(mv("x"), mv("x"), resolve("chain:1"), Grid(2))

    def test_exhaustive_witness_on_chain(self):
        report = check_equation(mv("x (+) 1"), mv("1"), resolve("chain:2"), Exhaustive())
        assert report.verdict is Verdict.COUNTERMODEL
        assert report.witness.valuation == {"x": F(-1)}

    def test_determinism(self):
        args = (mv("x (+) y"), mv("-x (+) -y"), resolve("square"))
        r1 = check_equation(*args, RandomSampling(500), seed=99)
        r2 = check_equation(*args, RandomSampling(500), seed=99)
        assert r1.as_json() == r2.as_json()

    def test_no_variable_equation(self):
        report = check_equation(mv("0"), mv("1"), resolve("chain:1"), Exhaustive())
        assert report.verdict is Verdict.COUNTERMODEL
        report = check_equation(mv("-0"), mv("0"), resolve("square"), RandomSampling(10))
        assert not report.found_countermodel


class TestDesignated:
    def test_finite_sets(self):
        assert designated_set(resolve("chain:1@w")).elements == (F(0), F(1))
        assert designated_set(resolve("flatten:chain:1:0@w")).elements == (F(0),)

    def test_square_closed_form(self):
        ds = designated_set(resolve("square@w"))
        assert ds.contains((F(2, 5), F(0)))
        assert not ds.contains((F(2, 5), F(1, 3)))
        assert not ds.contains((F(-2, 5), F(0)))

    def test_closed_form_is_image_of_carrier(self, rng):
        sw = resolve("square@w")
        ds = designated_set(sw)
        for _ in range(1000):
            c = (F(rng.randint(-120, 120), 120), F(rng.randint(-120, 120), 120))
            d = evaluate(w("(c -> 1) -> 1"), sw, {"c": c})
            assert ds.contains(d)
            assert evaluate(w("(c -> 1) -> 1"), sw, {"c": d}) == d

    def test_needs_wajsberg_signature(self):
        with pytest.raises(SemanticsError):
            designated_set(resolve("square"))


class TestEntailment:
    def test_identity(self):
        report = check_entailment(
            [w("p")], w("p"), resolve("square@w"), RandomSampling(2000), seed=3
        )
        assert not report.found_countermodel

    def test_axiom_shape_always_designated(self):
        report = check_entailment(
            [], w("p -> 1"), resolve("square@w"), RandomSampling(2000), seed=3
        )
        assert not report.found_countermodel

    def test_vacuous_premise(self):
        report = check_entailment(
            [w("p"), w("~1")], w("~p"), resolve("square@w"), RandomSampling(2000), seed=3
        )
        assert not report.found_countermodel
        ds = designated_set(resolve("square@w"))
        assert not ds.contains(evaluate(w("~1"), resolve("square@w"), {}))

    def test_detachment_fails_without_prefix(self):
        report = check_entailment(
            [w("p"), w("p -> q")], w("q"), resolve("square@w"), RandomSampling(5000), seed=3
        )
        assert report.found_countermodel

    def test_detachment_holds_with_prefix(self):
        report = check_entailment(
            [w("p"), w("p -> q")],
            w("(x -> x) -> q"),
            resolve("square@w"),
            RandomSampling(5000),
            seed=3,
        )
        assert not report.found_countermodel

    def test_exhaustive_on_flat(self):
        report = check_entailment(
            [w("p"), w("~1")], w("~p"), resolve("flatten:chain:1:0@w"), Exhaustive()
        )
        assert report.verdict is Verdict.VALID_EXHAUSTIVE


class TestSearch:
    def test_constant_clash(self):
        report = search_countermodel(
            mv("0"), mv("1"), ["chain:1", "flat-standard"], RandomSampling(100)
        )
        assert report.found_countermodel
        assert report.witness.model_name == "chain:1"

    def test_absorption_fails_on_chain(self):
        report = search_countermodel(mv("x (+) 1"), mv("1"), ["chain:2"], RandomSampling(50))
        assert report.found_countermodel
        assert report.witness.valuation == {"x": F(-1)}

    def test_double_absorption_valid(self):
        report = search_countermodel(
            mv("(x (+) 1) (+) 1"), mv("1"), ["chain:2", "square"], RandomSampling(1000)
        )
        assert not report.found_countermodel


class TestProjection:
    def test_oplus_terms_live_on_the_zero_slice(self, rng):
        sq = resolve("square")
        for _ in range(1000):
            t = random_term(rng, Sig.MV, 5, force_oplus=True)
            v = random_square_valuation(rng, variables(t))
            full = evaluate(t, sq, v)
            flat = evaluate(t, sq, zero_second_coordinates(v))
            assert full == flat
            assert full[1] == 0


class TestRegularStability:
    def test_prefix_invisible_on_regular_terms(self, rng):
        models = [resolve(n) for n in ("square@w", "disk@w", "interval@w",
                                       "flat-standard@w")]
        checked = 0
        while checked < 1000:
            t = random_term(rng, Sig.W, 4)
            from sqmv.syntax import is_regular, Impl

            if not is_regular(t):
                continue
            r = random_term(rng, Sig.W, 2)
            prefixed = Impl(Impl(r, r), t)
            m = models[checked % len(models)]
            names = variables(prefixed)
            v = random_square_valuation(rng, names) if "square" in m.name or "disk" in m.name \
                else random_interval_valuation(rng, names)
            if "disk" in m.name:
                v = random_disk_valuation(rng, names)
            assert evaluate(prefixed, m, v) == evaluate(t, m, v)
            checked += 1


class TestStrongExpansionCorrectness:
    def test_expansion_invisible_in_strong_models(self, rng):
        from sqmv.syntax import expand_abbreviations

        cases = [
            ("square", Sig.MV, random_square_valuation),
            ("disk", Sig.MV, random_disk_valuation),
            ("interval", Sig.MV, random_interval_valuation),
            ("flat-standard", Sig.MV, random_interval_valuation),
            ("square@w", Sig.W, random_square_valuation),
            ("disk@w", Sig.W, random_disk_valuation),
        ]
        for name, sig, sampler in cases:
            m = resolve(name)
            for _ in range(150):
                t = random_term(rng, sig, 4)
                expanded = expand_abbreviations(t, sig)
                v = sampler(rng, variables(t))
                assert evaluate(t, m, v) == evaluate(expanded, m, v), name

    def test_expansion_invisible_in_finite_strong_models(self, rng):
        from sqmv.syntax import expand_abbreviations

        for name in ("chain:2", "flatten:chain:2:0",
                     "product:chain:1,flatten:chain:1:0", "ex32-grid"):
            m = resolve(name)
            for _ in range(150):
                t = random_term(rng, Sig.MV, 4)
                expanded = expand_abbreviations(t, Sig.MV)
                v = {n: rng.choice(m.elements) for n in variables(t)}
                assert evaluate(t, m, v) == evaluate(expanded, m, v), name


ENTAILMENT_CORPUS = [
    (["p"], "p", True),
    (["p", "p -> q"], "q", True),
    (["p -> q", "q -> r"], "p -> r", True),
    (["~(p -> q)"], "q -> p", True),
    ([], "p -> 1", True),
    ([], "p", False),
    (["p"], "q", False),
    (["p -> q"], "q", False),
]

PLAIN_W_MODELS = ("interval@w", "chain:1@w", "chain:2@w", "chain:3@w")
STRONG_W_MODELS = (
    "square@w", "disk@w", "interval@w", "flat-standard@w", "chain:2@w",
    "flatten:chain:2:0@w", "product:chain:2,flatten:chain:2:0@w", "ex32-grid@w",
)


class TestEntailmentTransfer:
    def _holds(self, premises, conclusion, names):
        for name in names:
            m = resolve(name)
            strat = Exhaustive() if m.finite else RandomSampling(3000)
            report = check_entailment(premises, conclusion, m, strat, seed=9)
            if report.found_countermodel:
                return False
        return True

    def test_plain_entailment_matches_prefixed_strong_entailment(self):
        for premises, conclusion, expected in ENTAILMENT_CORPUS:
            prem = [w(t) for t in premises]
            concl = w(conclusion)
            plain = self._holds(prem, concl, PLAIN_W_MODELS)
            prefixed = self._holds(
                prem, parse(f"(z -> z) -> ({conclusion})", Sig.W), STRONG_W_MODELS
            )
            assert plain == prefixed == expected, conclusion


class TestStrategyParsing:
    def test_round_trip(self):
        assert parse_strategy("exhaustive") == Exhaustive()
        assert parse_strategy("grid:4") == Grid(4)
        assert parse_strategy("grid") == Grid()
        assert parse_strategy("random:100") == RandomSampling(100)
        with pytest.raises(StrategyError):
            parse_strategy("montecarlo")

    def test_default_grid_denominator_scales(self):
        lhs, rhs = mv("(x (+) y) (+) 0"), mv("x (+) y")
        report = check_equation(lhs, rhs, resolve("square"), Grid())
        assert report.strategy == "grid"
        assert not report.found_countermodel
