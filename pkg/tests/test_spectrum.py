"""Spectrum module tests.

The enumeration oracle here deliberately ignores the package's ball
bound: it scans the full cube [-R-1, R+1]^(m-1), one step larger than
any vector that could matter, and tallies Q(n) directly.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slcones import _kernels
from slcones.errors import IncompleteSpectrumError, InputError
from slcones.spectrum import (
    ConeSpectrum,
    enumerate_spectrum,
    exponents,
    hl_eigenvalue,
    n_sigma,
    stability_index,
)

# Table of (m, n_sigma2, m_sigma2, s_ind) for m = 3..12
TABLE1 = [
    (3, 13, 6, 0),
    (4, 27, 12, 6),
    (5, 51, 20, 20),
    (6, 93, 30, 50),
    (7, 169, 42, 112),
    (8, 311, 126, 238),
    (9, 331, 240, 240),
    (10, 201, 90, 90),
    (11, 243, 110, 110),
    (12, 289, 132, 132),
]


def box_oracle(m: int, cutoff: int) -> dict[int, int]:
    """Count Q(n) <= cutoff by scanning a strictly larger box."""
    r = math.isqrt(cutoff) + 1
    counts: dict[int, int] = {}
    for n in itertools.product(range(-r, r + 1), repeat=m - 1):
        q = m * sum(v * v for v in n) - sum(n) ** 2
        if q <= cutoff:
            counts[q] = counts.get(q, 0) + 1
    return counts


class TestEigenvalue:
    def test_zero_vector(self):
        assert hl_eigenvalue(3, (0, 0)) == 0

    def test_unit_vector(self):
        assert hl_eigenvalue(3, (1, 0)) == 2

    def test_m4_vector(self):
        assert hl_eigenvalue(4, (2, 1, 1)) == 8

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            hl_eigenvalue(3, (1, 0, 0))
        with pytest.raises(InputError):
            hl_eigenvalue(2, (1,))

    @given(
        st.integers(min_value=3, max_value=8).flatmap(
            lambda m: st.tuples(
                st.just(m),
                st.lists(
                    st.integers(min_value=-30, max_value=30),
                    min_size=m - 1,
                    max_size=m - 1,
                ),
            )
        )
    )
    def test_ball_bound(self, m_and_n):
        # Q(n) >= ||n||^2, the inequality that makes ball enumeration complete
        m, n = m_and_n
        assert hl_eigenvalue(m, n) >= sum(v * v for v in n)


class TestEnumerate:
    def test_m3_cutoff6(self):
        spec = enumerate_spectrum(3, 6)
        assert spec.entries == ((0, 1), (2, 6), (6, 6))

    def test_m4_cutoff8(self):
        spec = enumerate_spectrum(4, 8)
        assert spec.entries == ((0, 1), (3, 8), (4, 6), (8, 12))

    def test_cutoff_zero(self):
        assert enumerate_spectrum(3, 0).entries == ((0, 1),)

    def test_negative_cutoff(self):
        with pytest.raises(InputError):
            enumerate_spectrum(3, -1)

    def test_small_m(self):
        with pytest.raises(InputError):
            enumerate_spectrum(2, 5)

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    @pytest.mark.parametrize("cutoff", [0, 7, 19, 30])
    def test_against_box_oracle(self, m, cutoff):
        spec = enumerate_spectrum(m, cutoff)
        assert {int(lam): mult for lam, mult in spec.entries} == box_oracle(
            m, cutoff
        )

    def test_backends_agree(self):
        if not _kernels.HAVE_NUMBA:
            pytest.skip("numba unavailable")
        for m, cutoff in [(3, 40), (5, 17), (7, 14), (12, 24)]:
            enum = _kernels._counts_enum(m, cutoff)
            dp = _kernels._counts_dp(m, cutoff)
            assert np.array_equal(enum, dp)

    def test_env_flag_selects_numpy_path(self, monkeypatch):
        monkeypatch.setenv(_kernels.ENV_NO_NUMBA, "1")
        flagged = enumerate_spectrum(5, 12)
        monkeypatch.delenv(_kernels.ENV_NO_NUMBA)
        assert flagged.entries == enumerate_spectrum(5, 12).entries

    def test_deterministic(self):
        a = enumerate_spectrum(6, 25)
        b = enumerate_spectrum(6, 25)
        assert a == b


class TestGenericTable:
    def test_merges_duplicate_eigenvalues(self):
        spec = ConeSpectrum(3, [(2, 4), (2, 2), (0, 1)], 6)
        assert spec.entries == ((0, 1), (2, 6))

    def test_rational_eigenvalues(self):
        spec = ConeSpectrum(3, [(0, 1), (Fraction(5, 2), 3)], 4)
        assert spec.multiplicity(Fraction(5, 2)) == 3

    def test_rejects_bad_rows(self):
        with pytest.raises(InputError):
            ConeSpectrum(3, [(-1, 2)], 6)
        with pytest.raises(InputError):
            ConeSpectrum(3, [(1, 0)], 6)
        with pytest.raises(InputError):
            ConeSpectrum(3, [(7, 1)], 6)  # exceeds cutoff


class TestExponents:
    def test_m3_lambda2(self):
        data = exponents(enumerate_spectrum(3, 6))
        assert data.multiplicity_at(1) == 6
        assert data.multiplicity_at(-2) == 6
        plus = [e for e in data.entries if e.lam == 2 and e.branch == 1]
        assert len(plus) == 1 and plus[0].alpha == pytest.approx(1.0)

    def test_lambda_zero_roots(self):
        data = exponents(enumerate_spectrum(3, 6))
        assert data.multiplicity_at(0) == 1
        assert data.multiplicity_at(2 - 3) == 1

    def test_m4_irrational_root(self):
        data = exponents(enumerate_spectrum(4, 8))
        entry = [e for e in data.entries if e.lam == 4 and e.branch == 1][0]
        assert entry.alpha == pytest.approx(math.sqrt(5) - 1, abs=1e-12)
        assert entry.multiplicity == 6

    def test_gap_interval_empty(self):
        # no exponents fall strictly between 2-m and 0
        for m in (3, 4, 5):
            data = exponents(enumerate_spectrum(m, 2 * m))
            for e in data.entries:
                assert not (2 - m + 1e-9 < e.alpha < -1e-9)


class TestNSigma:
    def test_table1_values(self):
        for m, n2 in [(3, 13), (7, 169)]:
            data = exponents(enumerate_spectrum(m, 2 * m))
            assert n_sigma(data, 2) == n2

    def test_zero_on_gap_interval(self):
        data = exponents(enumerate_spectrum(3, 6))
        assert n_sigma(data, -0.5) == 0
        assert n_sigma(data, Fraction(-99, 100)) == 0

    def test_refuses_insufficient_cutoff(self):
        data = exponents(enumerate_spectrum(3, 6))
        with pytest.raises(IncompleteSpectrumError):
            n_sigma(data, 2.001)
        # delta = 2 needs lambda up to exactly 6: fine
        assert n_sigma(data, 2) == 13

    def test_exact_threshold_semantics(self):
        # alpha = 1 occurs for m = 3 (lam = 2); the count jumps there
        data = exponents(enumerate_spectrum(3, 6))
        assert n_sigma(data, 1) - n_sigma(data, Fraction(999, 1000)) == 6

    @given(
        st.fractions(
            min_value=0, max_value=2, max_denominator=50
        ),
        st.fractions(
            min_value=0, max_value=2, max_denominator=50
        ),
    )
    @settings(max_examples=60, deadline=None)
    def test_monotone_increasing(self, d1, d2):
        data = exponents(enumerate_spectrum(4, 8))
        lo, hi = sorted([d1, d2])
        assert n_sigma(data, lo) <= n_sigma(data, hi)

    def test_negative_branch_counts_negatively(self):
        # in a generic table with exponents inside (delta, 0), the count
        # is minus the multiplicity sum
        m = 3
        # pick lam so that the lower root is -1/2: alpha(alpha+1) = -1/4 is
        # negative, not a valid eigenvalue; instead use a table with an
        # eigenvalue whose *lower* root lands in (-1, 0): impossible for
        # m = 3 since lower roots are <= -1.  Use delta < 2-m to capture
        # lower roots of small eigenvalues instead.
        data = exponents(enumerate_spectrum(m, 6))
        # lower roots: lam=0 -> -1, lam=2 -> -2, lam=6 -> -3
        assert n_sigma(data, Fraction(-3, 2)) == -1
        assert n_sigma(data, Fraction(-5, 2)) == -7


class TestStability:
    @pytest.mark.parametrize("m,n2,m2,sind", TABLE1)
    def test_table1(self, m, n2, m2, sind):
        rep = stability_index(m)
        assert (rep.n_sigma2, rep.m_sigma2, rep.s_ind) == (n2, m2, sind)

    @pytest.mark.parametrize("m", [10, 11, 12])
    def test_asymptotic_identities(self, m):
        rep = stability_index(m)
        assert rep.n_sigma2 == 2 * m * m + 1
        assert rep.m_sigma2 == m * m - m

    def test_rigid_iff_not_8_9(self):
        for m in range(3, 13):
            assert stability_index(m).rigid == (m not in (8, 9))

    def test_stable_only_m3(self):
        for m in range(3, 13):
            rep = stability_index(m)
            assert rep.stable == (m == 3)
            if rep.stable:
                assert rep.rigid  # stability implies rigidity

    def test_multiplicity_bounds(self):
        for m in range(3, 10):
            spec = enumerate_spectrum(m, 2 * m)
            data = exponents(spec)
            assert data.multiplicity_at(0) == 1
            # alpha = 1 corresponds to lam = m-1
            assert data.multiplicity_at(1) >= 2 * m
            assert stability_index(m).m_sigma2 >= m * m - 1 - (m - 1)

    def test_s_ind_nonnegative(self):
        for m in range(3, 13):
            assert stability_index(m).s_ind >= 0

    def test_rejects_small_m(self):
        with pytest.raises(InputError):
            stability_index(2)
