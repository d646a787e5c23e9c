from fractions import Fraction

import pytest

import trideck as td
from trideck.determinacy import _canonical_mask, _wilson
from trideck.errors import BudgetError, DomainError


class TestExhaustive:
    def test_prime_modulus_unique(self):
        rep = td.exhaustive_determinacy(7, 3)
        assert rep.total_sets == 128
        assert rep.ambiguous_classes == ()

    def test_prime_power_unique(self):
        assert td.exhaustive_determinacy(9, 3).ambiguous_classes == ()

    def test_two_deck_is_weaker(self):
        # reflection pairs split 3-decks but not 2-decks
        rep2 = td.exhaustive_determinacy(8, 2)
        assert len(rep2.ambiguous_classes) > 0

    def test_budget_refusal(self):
        with pytest.raises(BudgetError):
            td.exhaustive_determinacy(7, 3, budget=100)

    def test_class_members_verified(self):
        rep = td.exhaustive_determinacy(8, 2)
        for cls in rep.ambiguous_classes:
            decks = [td.k_deck(td.CyclicFunction.indicator(8, s), 2)
                     for s in cls]
            for d in decks[1:]:
                assert td.deck_equal(decks[0], d)
            fs = [td.CyclicFunction.indicator(8, s) for s in cls]
            for i, f in enumerate(fs):
                for g in fs[i + 1:]:
                    assert td.equal_up_to_translation(f, g) is None

    def test_canonical_mask(self):
        assert _canonical_mask(0b100, 3) == 0b001
        assert _canonical_mask(0b110, 3) == 0b011

    def test_json(self):
        d = td.exhaustive_determinacy(5, 3).to_json_dict()
        assert d["total_sets"] == 32 and d["ambiguous_classes"] == []


class TestGmCounterexample:
    def test_pair_properties(self):
        pair = td.gm_counterexample(2, 3, 3)
        assert pair.n == 18
        f = td.CyclicFunction.indicator(18, pair.E)
        g = td.CyclicFunction.indicator(18, pair.F)
        assert td.deck_equal(td.k_deck(f, 3), td.k_deck(g, 3))
        assert td.equal_up_to_translation(f, g) is None
        assert td.equal_up_to_translation(g, f) is None
        assert not td.deck_equal(td.k_deck(f, 4), td.k_deck(g, 4))

    def test_antipodal_structure(self):
        pair = td.gm_counterexample(2, 3, 3)
        m = pair.n // 2
        assert {(x + m) % pair.n for x in pair.E} == \
            set(range(pair.n)) - pair.E
        assert pair.F == {(-x) % pair.n for x in pair.E}

    def test_n30(self):
        pair = td.gm_counterexample(2, 3, 5)
        assert pair.n == 30
        f = td.CyclicFunction.indicator(30, pair.E)
        g = td.CyclicFunction.indicator(30, pair.F)
        assert td.deck_equal(td.k_deck(f, 3), td.k_deck(g, 3))
        assert td.equal_up_to_translation(f, g) is None

    def test_preconditions(self):
        with pytest.raises(DomainError):
            td.gm_counterexample(2, 3, 2)  # r >= 3
        with pytest.raises(DomainError):
            td.gm_counterexample(3, 3, 3)  # distinct primes
        with pytest.raises(DomainError):
            td.gm_counterexample(4, 3, 3)  # prime check
        with pytest.raises(DomainError):
            td.gm_counterexample(3, 5, 3)  # odd modulus unsupported

    def test_deterministic(self):
        assert td.gm_counterexample(2, 3, 3) == td.gm_counterexample(2, 3, 3)


class TestSurvey:
    def test_exhaustive_exact_values(self):
        assert td.survey_zero_proportion(5).exact == Fraction(2, 32)
        assert td.survey_zero_proportion(7).exact == Fraction(2, 128)
        assert td.survey_zero_proportion(11).exact == Fraction(2, 2048)

    def test_n6_regression_value(self):
        # frozen on first run; composite moduli admit many vanishing spectra
        assert td.survey_zero_proportion(6).exact == Fraction(7, 16)

    def test_prime_only_trivial_sets(self):
        # for prime n only the empty and full sets can vanish somewhere
        r = td.survey_zero_proportion(13, mode="exhaustive")
        assert r.exact == Fraction(2, 2**13)

    def test_sampled_deterministic(self):
        a = td.survey_zero_proportion(26, samples=2000, seed=9)
        b = td.survey_zero_proportion(26, samples=2000, seed=9)
        assert (a.hits, a.ci_low, a.ci_high) == (b.hits, b.ci_low, b.ci_high)
        assert a.mode == "sampled"

    def test_sampled_needs_samples(self):
        with pytest.raises(DomainError):
            td.survey_zero_proportion(26, mode="sampled")

    def test_wilson_interval_sane(self):
        lo, hi = _wilson(50, 100)
        assert 0.4 < lo < 0.5 < hi < 0.6

    def test_monotone_trend_over_primes(self):
        vals = [td.survey_zero_proportion(n).proportion for n in (5, 7, 11)]
        s13 = td.survey_zero_proportion(13, samples=20000, seed=1,
                                        mode="sampled").proportion
        vals.append(s13)
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestAllK:
    def test_gm_pair_differs_at_four(self):
        pair = td.gm_counterexample(2, 3, 3)
        f = td.CyclicFunction.indicator(18, pair.E)
        g = td.CyclicFunction.indicator(18, pair.F)
        v = td.verify_all_k_uniqueness(f, g, 4)
        assert v.first_differing_k == 4
        assert v.translate_shift is None

    def test_translates_agree_for_all_k(self):
        f = td.CyclicFunction.of([2, 1, 0, 3, 1])
        v = td.verify_all_k_uniqueness(f, td.translate(f, 2), 5)
        assert v.decks_all_equal and v.translate_shift == 2

    def test_differ_at_two(self):
        f = td.CyclicFunction.indicator(5, [0, 1])
        g = td.CyclicFunction.indicator(5, [0, 2])
        assert td.verify_all_k_uniqueness(f, g, 4).first_differing_k == 2

    def test_validation(self):
        f = td.CyclicFunction.of([1, 1])
        with pytest.raises(DomainError):
            td.verify_all_k_uniqueness(f, td.CyclicFunction.of([1, 1, 1]), 3)
        with pytest.raises(DomainError):
            td.verify_all_k_uniqueness(f, f, 1)
