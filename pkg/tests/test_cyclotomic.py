import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import trideck as td
from trideck.cyclotomic import (ClassificationError, cyclotomic,
                                function_poly, poly_divides, poly_divmod,
                                zero_pattern_of_poly)
from trideck.errors import DomainError


class TestCyclotomic:
    def test_small_cases(self):
        assert cyclotomic(1) == (-1, 1)
        assert cyclotomic(2) == (1, 1)
        assert cyclotomic(6) == (1, -1, 1)

    def test_prime_form(self):
        for p in (2, 3, 5, 7, 11, 13):
            assert cyclotomic(p) == tuple([1] * p)

    def test_value_at_one_identity(self):
        # Phi_m(1) = p for prime powers, 1 otherwise (m > 1)
        for m in range(2, 201):
            val = sum(cyclotomic(m))
            fact = {}
            x = m
            d = 2
            while d * d <= x:
                while x % d == 0:
                    fact[d] = 1
                    x //= d
                d += 1
            if x > 1:
                fact[x] = 1
            expected = next(iter(fact)) if len(fact) == 1 else 1
            assert val == expected, m

    def test_product_identity(self):
        # prod over d | n of Phi_d = x^n - 1
        for n in (6, 12, 30):
            poly = (1,)
            from trideck.cyclotomic import poly_mul
            for d in range(1, n + 1):
                if n % d == 0:
                    poly = poly_mul(poly, cyclotomic(d))
            assert poly == tuple([-1] + [0] * (n - 1) + [1])

    def test_divmod_requires_unit_lead(self):
        with pytest.raises(DomainError):
            poly_divmod((1, 1), (1, 2))

    def test_divides(self):
        assert poly_divides(cyclotomic(3), (1, 1, 1))
        assert not poly_divides(cyclotomic(3), (1, 0, 1))


class TestZeroDetection:
    def test_spec_examples(self):
        assert td.spectrum_zero_exact(9, {0, 1, 2}, 3)
        assert not td.spectrum_zero_exact(7, {0}, 4)
        assert td.spectrum_zero_exact(6, range(6), 1)

    def test_zero_set_examples(self):
        zp = td.zero_set(6, {0, 2, 4})
        assert zp.zeros == {1, 2, 4, 5} and zp.support == {0, 3}
        assert td.zero_set(9, {0, 1, 2}).zeros == {3, 6}
        assert td.zero_set(7, {0}).zeros == set()

    @given(st.integers(2, 24), st.data())
    @settings(max_examples=500, deadline=None)
    def test_exact_agrees_with_float_dft(self, n, data):
        E = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
        fh = td.dft(td.CyclicFunction.indicator(n, E)).values
        for l in range(n):
            exact = td.spectrum_zero_exact(n, E, l)
            assert exact == (abs(fh[l]) < 1e-8 * max(len(E), 1)), (n, E, l)

    @given(st.integers(2, 30), st.data())
    @settings(max_examples=120, deadline=None)
    def test_fact2_galois_closure(self, n, data):
        E = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
        zeros = td.zero_set(n, E).zeros
        for l in zeros - {0}:
            d = n // math.gcd(n, l)
            # the whole class {j : n/gcd(n,j) = d} vanishes with l
            for j in range(1, n):
                if n // math.gcd(n, j) == d:
                    assert j in zeros

    def test_fact1_periodic_extension(self):
        # q-fold extension of E in Z/pZ: spectrum on qZ with values q*chi_hat
        p, q = 5, 3
        E = {0, 1, 3}
        ext = {j for j in range(p * q) if j % p in E}
        base = td.dft(td.CyclicFunction.indicator(p, E)).values
        lifted = td.dft(td.CyclicFunction.indicator(p * q, ext)).values
        for l in range(p * q):
            want = q * base[(l // q) % p] if l % q == 0 else 0.0
            assert abs(lifted[l] - want) < 1e-8

    def test_function_poly_clears_denominators(self):
        vals = td.CyclicFunction.of(["1/2", "1/3", 0]).values
        assert function_poly(3, vals) == (3, 2)


class TestPeriodicityAndClassification:
    def test_periodicity(self):
        assert td.periodicity(6, {0, 2, 4}) == 2
        assert td.periodicity(6, {0, 1}) == 6
        assert td.periodicity(6, range(6)) == 1

    def test_prime_power_cases(self):
        assert td.classify_zero_pattern(
            25, td.zero_set(25, {0, 1})).tag == "NoZeros"
        case = td.classify_zero_pattern(9, td.zero_set(9, {0, 1, 2}))
        assert case.tag == "PrimePowerGapCase" and case.gap_exponent == 1
        case = td.classify_zero_pattern(9, td.zero_set(9, {0, 3, 6}))
        assert case.tag == "PeriodicSubcase" and case.period == 3
        assert td.classify_zero_pattern(
            9, td.zero_set(9, range(9))).tag == "FullSetOnly"

    def test_two_prime_cases(self):
        case = td.classify_zero_pattern(6, td.zero_set(6, {0, 2, 4}))
        assert case.tag == "TwoPrimePeriodic" and case.period == 2
        assert td.classify_zero_pattern(
            6, td.zero_set(6, {0})).tag == "NoZeros"
        # {0,1} on Z/6: P = 1 + x vanishes exactly at zeta^3 = -1
        zp = td.zero_set(6, {0, 1})
        assert zp.zeros == {3}
        assert td.classify_zero_pattern(6, zp).tag == "TwoPrimeMixedCase"

    def test_mixed_case_concrete(self):
        # {0,1,2} on Z/6: P = Phi_3 vanishes exactly at the primitive cube
        # roots zeta^2, zeta^4
        zp = td.zero_set(6, {0, 1, 2})
        assert zp.zeros == {2, 4}
        assert td.classify_zero_pattern(6, zp).tag == "TwoPrimeMixedCase"

    def test_unclassified_for_three_factors(self):
        assert td.classify_zero_pattern(
            12, td.zero_set(12, {0, 1})).tag == "Unclassified"

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_exhaustive_case_lists_never_error(self, data):
        n = data.draw(st.sampled_from([4, 8, 9, 25, 27, 6, 10, 15, 21]))
        E = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
        td.classify_zero_pattern(n, td.zero_set(n, E))  # must not raise

    def test_rational_function_patterns(self):
        vals = td.CyclicFunction.of([1, 1, 0, 2, 0, 1]).values
        pat = zero_pattern_of_poly(6, function_poly(6, vals))
        assert pat.support <= {l for l in range(6) if l % 2 == 0 or l % 3 == 0}
