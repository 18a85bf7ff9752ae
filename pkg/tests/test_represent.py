"""Core membership, chain suprema, and the four-way equivalence."""

import random
from fractions import Fraction

import pytest

from chainrep import (
    Chain,
    DiscreteMeasure,
    GroundSet,
    NotNested,
    SetFunction,
    dual_transform,
    extremal_measure,
    in_lower_core,
    in_upper_core,
    inf_over_chains,
    local_core_attainment,
    local_core_sup,
    sup_over_chains,
    verify_submodular_equivalence,
    verify_supermodular_equivalence,
)
from chainrep.counterexample import GROUND, V0, V1_EXPECTED, V2_EXPECTED

import support


def g(m):
    return GroundSet.of_size(m)


class TestLowerCore:
    def test_table_chain_measure_escapes_core(self):
        mu = extremal_measure(V0, Chain.from_labels(GROUND, ["4", "1", "2", "3"]))
        ok, witness = in_lower_core(V0, mu)
        assert not ok
        # mu({1}) = 11 > 7 = v0({1}); first violation in bitmask order.
        assert witness == GROUND.mask_of(["1"])

    def test_submodular_chain_measures_in_core(self):
        v = SetFunction.from_callable(g(4), lambda s: min(2, bin(s).count("1")))
        from chainrep import all_chains
        for chain in all_chains(g(4)):
            ok, _ = in_lower_core(v, extremal_measure(v, chain))
            assert ok

    def test_zero_measure_zero_function(self):
        v = SetFunction(g(2), (Fraction(0),) * 4)
        ok, _ = in_lower_core(v, DiscreteMeasure.zero(g(2)))
        assert ok

    def test_mass_mismatch_witnessed_at_full(self):
        v = SetFunction.from_callable(g(2), lambda s: bin(s).count("1"))
        mu = DiscreteMeasure(g(2), (Fraction(1), Fraction(0)))
        ok, witness = in_lower_core(v, mu)
        assert not ok and witness == g(2).full_mask

    def test_upper_core_mirror(self):
        v = SetFunction.from_callable(g(3), lambda s: bin(s).count("1") ** 2)
        from chainrep import all_chains
        for chain in all_chains(g(3)):
            ok, _ = in_upper_core(v, extremal_measure(v, chain))
            assert ok


class TestSupOverChains:
    def test_table_values(self):
        assert sup_over_chains(V0, GROUND.mask_of(["1"]))[0] == 11
        assert sup_over_chains(V0, GROUND.mask_of(["1", "2"]))[0] == 17
        assert sup_over_chains(V0, GROUND.full_mask)[0] == 44

    def test_empty_subset(self):
        value, chain = sup_over_chains(V0, 0)
        assert value == 0
        assert chain.label_order() == ("1", "2", "3", "4")

    def test_witness_attains(self):
        rng = random.Random(13)
        for _ in range(30):
            v = support.random_monotone(rng, g(4))
            mask = rng.randrange(16)
            value, chain = sup_over_chains(v, mask)
            assert extremal_measure(v, chain).mass(mask) == value

    def test_matches_literal_sweep_including_witness(self):
        rng = random.Random(17)
        for m in (1, 2, 3, 4, 5):
            for _ in range(12):
                v = support.random_monotone(rng, g(m))
                mask = rng.randrange(1 << m)
                got_val, got_chain = sup_over_chains(v, mask)
                want_val, want_chain = support.brute_sup_over_chains(v, mask)
                assert got_val == want_val
                assert got_chain == want_chain
                got_inf, got_inf_chain = inf_over_chains(v, mask)
                want_inf, want_inf_chain = support.brute_inf_over_chains(v, mask)
                assert got_inf == want_inf
                assert got_inf_chain == want_inf_chain

    def test_sweep_cap(self):
        import pytest
        from chainrep import GroundSetTooLarge
        v = SetFunction(g(10), (Fraction(0),) * (1 << 10))
        with pytest.raises(GroundSetTooLarge):
            sup_over_chains(v, 1)

    def test_dominates_v_for_monotone_input(self):
        rng = random.Random(19)
        for _ in range(20):
            v = support.random_monotone(rng, g(4))
            for mask in g(4).subsets():
                assert sup_over_chains(v, mask)[0] >= v.values[mask]

    def test_submodular_any_prefix_chain_attains(self):
        from chainrep import all_chains
        rng = random.Random(23)
        for _ in range(10):
            v = support.random_submodular(rng, g(4))
            for mask in g(4).subsets():
                value, _ = sup_over_chains(v, mask)
                assert value == v.values[mask]
                for chain in all_chains(g(4)):
                    if chain.has_prefix(mask):
                        assert extremal_measure(v, chain).mass(mask) == value


class TestLocalCore:
    def test_submodular_example(self):
        v = SetFunction.from_callable(g(4), lambda s: min(2, bin(s).count("1")))
        a = g(4).mask_of(["1", "2", "3"])
        b = g(4).mask_of(["1", "2"])
        assert local_core_sup(v, a, b) == 2
        report = local_core_attainment(v, a, b)
        assert report.in_core
        assert report.measure.mass(b) == 2
        # Restriction to A: nothing outside A carries weight.
        assert report.measure.weights[3] == 0

    def test_equal_pair_gives_value_at_a(self):
        rng = random.Random(29)
        v = support.random_monotone(rng, g(4))
        for a in g(4).subsets():
            assert local_core_sup(v, a, a) == v.values[a]

    def test_empty_inner_set(self):
        rng = random.Random(31)
        v = support.random_monotone(rng, g(3))
        for a in g(3).subsets():
            assert local_core_sup(v, a, 0) == 0

    def test_rejects_non_nested(self):
        with pytest.raises(NotNested):
            local_core_sup(V0, 0b0001, 0b0010)

    def test_non_submodular_candidate_escapes_core(self):
        # The constructed measure fails the lower-core cap somewhere
        # exactly when the function is not submodular.
        report_fail = [
            local_core_attainment(V1_EXPECTED, a, b)
            for a in GROUND.subsets()
            for b in GROUND.subsets()
            if b & ~a == 0
        ]
        assert any(not r.in_core for r in report_fail)


class TestEquivalence:
    def test_table_rows(self):
        assert verify_submodular_equivalence(V1_EXPECTED).booleans == (
            False, False, False, False,
        )
        assert verify_submodular_equivalence(V2_EXPECTED).booleans == (
            True, True, True, True,
        )
        assert verify_submodular_equivalence(V0).booleans == (
            False, False, False, False,
        )

    def test_measure_satisfies_everything(self):
        rng = random.Random(37)
        v = support.random_modular(rng, g(3))
        assert verify_submodular_equivalence(v).all_hold
        assert verify_supermodular_equivalence(v).all_hold

    def test_booleans_always_agree(self):
        rng = random.Random(41)
        for m in (1, 2, 3, 4, 5):
            for _ in range(15):
                v = (
                    support.random_monotone(rng, g(m))
                    if rng.random() < 0.5
                    else support.random_submodular(rng, g(m))
                )
                report = verify_submodular_equivalence(v)
                assert report.consistent, (m, v.values, report)
                dual_report = verify_supermodular_equivalence(dual_transform(v))
                assert dual_report.consistent
                assert report.booleans == dual_report.booleans

    def test_supermodular_side_on_duals(self):
        assert verify_supermodular_equivalence(dual_transform(V2_EXPECTED)).all_hold
        assert not verify_supermodular_equivalence(
            dual_transform(V1_EXPECTED)
        ).booleans[0]

    def test_rejects_non_monotone(self):
        v = SetFunction(g(2), (Fraction(0), Fraction(2), Fraction(1), Fraction(1)))
        with pytest.raises(ValueError):
            verify_submodular_equivalence(v)

    def test_witnesses_reported_when_false(self):
        report = verify_submodular_equivalence(V0)
        assert report.a_witness is not None
        chain, mask = report.b_witness
        mu = extremal_measure(V0, chain)
        assert mu.mass(mask) > V0.values[mask]
        mask_c, chain_c = report.c_witness
        assert extremal_measure(V0, chain_c).mass(mask_c) != V0.values[mask_c]
        a, b, violated = report.d_witness
        assert b & ~a == 0
        rep = local_core_attainment(V0, a, b)
        assert not rep.in_core and rep.violated == violated
