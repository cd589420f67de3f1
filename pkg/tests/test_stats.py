"""Signed-rank test tests"""

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from vbmo.bench.stats import significant, wilcoxon_signed_rank
from vbmo.exceptions import UsageError


def test_exact_golden():
    a = [1, 2, 3, 4, 5, 6, 7, -8, 9, 10]
    assert wilcoxon_signed_rank(a, [0] * 10) == pytest.approx(50 / 1024)

    a[-3] = 8
    a[-2] = -9
    assert wilcoxon_signed_rank(a, [0] * 10) == pytest.approx(66 / 1024)


def test_symmetric():
    a = [3.0, 1.5, 4.0, 2.0, 6.5, 2.5, 7.0]
    b = [1.0, 2.0, 1.0, 0.5, 2.0, 2.0, 1.0]
    assert wilcoxon_signed_rank(a, b) == pytest.approx(
        wilcoxon_signed_rank(b, a))


def test_zero_differences_dropped():
    a = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 5, 5]
    b = [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 5, 5]
    assert wilcoxon_signed_rank(a, b) == pytest.approx(2 / 1024)


def test_identical_samples():
    assert wilcoxon_signed_rank([1.0] * 8, [1.0] * 8) == 1.0


def test_constant_shift_is_significant():
    a = [i + 1.0 for i in range(50)]
    b = [i + 0.5 * (1 + (i % 7) / 10) for i in range(50)]

    p = wilcoxon_signed_rank(a, b)
    assert p < 0.001
    assert significant(p)


def test_normal_approximation():
    a = [float(i % 9) for i in range(30)]
    b = [a[i] + (i * 7) % 11 - 5.5 for i in range(30)]

    expected = stats.wilcoxon(a, b, correction=False, method='approx').pvalue
    assert wilcoxon_signed_rank(a, b) == pytest.approx(expected)


@given(st.permutations(range(1, 16)), st.lists(st.booleans(), min_size=15,
                                                  max_size=15))
def test_exact_matches_scipy(magnitudes, negative):
    differences = [-m if n else m for m, n in zip(magnitudes, negative)]

    expected = stats.wilcoxon(differences, method='exact').pvalue
    assert wilcoxon_signed_rank(differences, [0] * 15) == pytest.approx(
        expected)


def test_too_few_pairs():
    with pytest.raises(UsageError):
        wilcoxon_signed_rank([1, 2, 3, 4, 5], [0] * 5)


def test_unpaired():
    with pytest.raises(UsageError):
        wilcoxon_signed_rank([1] * 7, [0] * 6)


def test_significant():
    assert significant(0.01)
    assert not significant(0.05)
    assert not significant(None)
