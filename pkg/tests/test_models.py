import itertools
from fractions import Fraction as F

import pytest

from sqmv.models import (
    ADJOINED,
    ClosureError,
    DomainError,
    CatalogError,
    FINITE_CATALOG,
    STANDARD_CATALOG,
    SpecError,
    classify,
    embed_into_product,
    finite_chain,
    finite_model_from_ops,
    finite_restriction,
    find_isomorphism,
    flattening,
    join_op,
    label_str,
    mu_congruence,
    quotient,
    regular_elements,
    resolve,
    tau_congruence,
)
from sqmv.syntax import Sig


class TestStandardOps:
    def test_square_truncated_sum(self):
        sq = resolve("square")
        out = sq.apply("oplus", (F(1, 2), F(9, 10)), (F(7, 10), F(-1, 5)))
        assert out == (F(1), F(0))

    def test_square_parts(self):
        sq = resolve("square")
        assert sq.apply("pos", (F(-3, 4), F(1, 2))) == (F(0), F(0))
        assert sq.apply("npart", (F(-3, 4), F(1, 2))) == (F(-3, 4), F(0))

    def test_wajsberg_implication(self):
        sw = resolve("square@w")
        assert sw.apply("impl", (F(1, 2), F(0)), (F(-1, 4), F(0))) == (F(-3, 4), F(0))

    def test_flat_standard_sum_constant(self):
        flat = resolve("flat-standard")
        for a, b in [(F(1, 3), F(-1)), (F(0), F(0)), (F(1), F(1))]:
            assert flat.apply("oplus", a, b) == F(0)

    def test_minus_zero_fixed(self):
        for name in ("square", "disk", "interval", "flat-standard", "chain:2"):
            m = resolve(name)
            zero = m.const("zero")
            assert m.apply("uminus", zero) == zero

    def test_disk_membership(self):
        disk = resolve("disk")
        assert disk.contains((F(3, 5), F(4, 5)))
        assert not disk.contains((F(3, 5), F(81, 100)))
        with pytest.raises(DomainError):
            disk.apply("pos", (F(1), F(1)))


class TestFiniteConstructions:
    def test_chain_sum_clamps(self):
        c2 = resolve("chain:2")
        assert c2.apply("oplus", F(1, 2), F(1, 2)) == F(1)
        assert c2.apply("oplus", F(-1), F(1, 2)) == F(-1, 2)

    def test_chain_is_interval_subalgebra(self):
        c3 = resolve("chain:3")
        interval = resolve("interval")
        for op in ("oplus",):
            for x, y in itertools.product(c3.elements, repeat=2):
                assert c3.apply(op, x, y) == interval.apply(op, x, y)
        for op in ("uminus", "pos", "npart"):
            for x in c3.elements:
                assert c3.apply(op, x) == interval.apply(op, x)

    def test_flattening_collapses_sums(self):
        fl = resolve("flatten:chain:1:0")
        assert fl.const("zero") == fl.const("one") == F(0)
        for x, y in itertools.product(fl.elements, repeat=2):
            assert fl.apply("oplus", x, y) == F(0)
        assert fl.apply("uminus", F(-1)) == F(1)

    def test_flattening_requires_fixpoint(self):
        with pytest.raises(SpecError):
            flattening(finite_chain(1), F(1))
        with pytest.raises(SpecError):
            flattening(finite_chain(1), None)  # 0 is available, no fresh element

    def test_flattening_adjoins_fresh_point(self):
        # a two-element minus-swapped carrier has no fixpoint in its regular part
        els = (F(-1), F(1))
        base = finite_model_from_ops(
            "swap2",
            Sig.MV,
            els,
            {
                "oplus": lambda x, y: max(F(-1), min(F(1), x + y + 1)),
                "uminus": lambda x: -x,
                "pos": lambda x: F(1),
                "npart": lambda x: F(-1),
            },
            {"zero": F(-1), "one": F(1)},
        )
        fl = flattening(base, None)
        assert ADJOINED in fl.elements
        assert fl.const("zero") is ADJOINED
        assert label_str(ADJOINED) == "k*"

    def test_product_componentwise(self):
        pr = resolve("product:chain:1,flatten:chain:1:0")
        out = pr.apply("oplus", (F(1), F(1)), (F(1), F(-1)))
        assert out == (F(1), F(0))

    def test_closure_error_surfaces(self):
        sq = resolve("square")
        pts = [(F(0), F(0)), (F(1, 2), F(0))]  # not closed under minus
        with pytest.raises(ClosureError):
            finite_restriction(sq, pts, "bad-grid")

    def test_ex32_grid_builds_closed(self):
        g = resolve("ex32-grid")
        assert len(g.elements) == 15
        assert g.const("zero") == (F(0), F(1, 2))
        assert g.apply("uminus", (F(1, 2), F(0))) == (F(-1, 2), F(1))

    def test_table_text(self):
        c1 = resolve("chain:1")
        text = c1.table_text()
        assert "oplus 1 1 -> 1" in text
        assert "uminus -1 -> 1" in text
        assert text.splitlines()[0].startswith("model chain:1")


class TestClassification:
    def test_chain_is_plain_algebra(self):
        flags = classify(resolve("chain:1"))
        assert flags.is_quasi and flags.is_strong and flags.is_star
        assert not flags.is_flat

    def test_flattening_is_flat_not_plain(self):
        flags = classify(resolve("flatten:chain:1:0"))
        assert flags.is_flat and flags.is_strong
        assert not flags.is_star
        assert flags.axiom_results["MV*5"] is False

    def test_product_is_strong_only(self):
        flags = classify(resolve("product:chain:1,flatten:chain:1:0"))
        assert flags.is_strong and flags.is_quasi
        assert not flags.is_star and not flags.is_flat

    def test_grid_strong_with_witness(self):
        flags = classify(resolve("ex32-grid"))
        assert flags.is_strong and not flags.is_star
        witness = flags.witnesses["MV*5"]
        x = witness["x"]
        g = resolve("ex32-grid")
        assert g.apply("oplus", x, g.const("zero")) != x

    def test_wajsberg_views_classify(self):
        flags = classify(resolve("chain:2@w"))
        assert flags.is_quasi and flags.is_strong and flags.is_star
        flags = classify(resolve("flatten:chain:2:0@w"))
        assert flags.is_flat and not flags.is_star


class TestRegulars:
    def test_chain_all_regular(self):
        c2 = resolve("chain:2")
        assert regular_elements(c2) == c2.elements

    def test_flat_single_regular(self):
        assert regular_elements(resolve("flatten:chain:1:0")) == (F(0),)

    def test_product_regulars(self):
        pr = resolve("product:chain:1,flatten:chain:1:0")
        regs = regular_elements(pr)
        assert sorted(regs) == [(F(-1), F(0)), (F(0), F(0)), (F(1), F(0))]


class TestCongruences:
    def test_mu_groups_by_first_coordinate(self):
        pr = resolve("product:chain:1,flatten:chain:1:0")
        mu = mu_congruence(pr)
        assert sorted(len(c) for c in mu.classes) == [3, 3, 3]
        for cls in mu.classes:
            firsts = {x[0] for x in cls}
            assert len(firsts) == 1

    def test_tau_isolates_regulars(self):
        pr = resolve("product:chain:1,flatten:chain:1:0")
        tau = tau_congruence(pr)
        assert sorted(len(c) for c in tau.classes) == [1] * 6 + [3]

    def test_meet_is_identity_everywhere(self):
        for name in FINITE_CATALOG:
            m = resolve(name)
            assert mu_congruence(m).meet(tau_congruence(m)).is_identity(), name

    def test_join_matches_vector_table(self):
        m = resolve("chain:2")
        join = join_op(m)
        assert join(F(-1, 2), F(1, 2)) == F(1, 2)
        assert join(F(-1), F(0)) == F(0)


class TestQuotients:
    def test_mu_quotient_matches_chain(self):
        pr = resolve("product:chain:1,flatten:chain:1:0")
        q = quotient(pr, mu_congruence(pr))
        assert classify(q).is_star
        assert find_isomorphism(q, resolve("chain:1")) is not None

    def test_tau_quotient_flat_strong(self):
        pr = resolve("product:chain:1,flatten:chain:1:0")
        q = quotient(pr, tau_congruence(pr))
        assert len(q.elements) == 7
        flags = classify(q)
        assert flags.is_flat and flags.is_strong

    def test_identity_quotient_isomorphic(self):
        m = resolve("chain:2")
        mu = mu_congruence(m)  # chains are plain algebras: mu is the identity
        assert mu.is_identity()
        q = quotient(m, mu)
        assert find_isomorphism(q, m) is not None


class TestEmbedding:
    def test_product_embeds_properly(self):
        emb = embed_into_product(resolve("product:chain:1,flatten:chain:1:0"))
        assert emb.is_homomorphism and emb.is_injective
        assert not emb.is_surjective
        assert len(emb.prod.elements) == 21  # 3 x 7 > 9

    def test_plain_member_is_isomorphic(self):
        emb = embed_into_product(resolve("chain:1"))
        assert emb.is_isomorphism

    def test_flat_member_is_isomorphic(self):
        emb = embed_into_product(resolve("flatten:chain:1:0"))
        assert emb.is_isomorphism


class TestCatalog:
    def test_standard_names_resolve(self):
        for name in STANDARD_CATALOG:
            assert resolve(name).name == name
            assert resolve(name + "@w").signature is Sig.W

    def test_unknown_name(self):
        with pytest.raises(CatalogError):
            resolve("pentagon")
        with pytest.raises(CatalogError):
            resolve("chain:x")

    def test_nested_product_name_round_trip(self):
        name = FINITE_CATALOG[-2]
        m = resolve(name)
        assert len(m.elements) == 81
        assert m.name == name
