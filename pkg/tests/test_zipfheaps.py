"""Rank-frequency, binning, growth curves, and regression exactness."""

import numpy as np
import pytest

from textlaws.corpus import RawText
from textlaws.tokens import count_ngrams, tokenize
from textlaws.zipfheaps import (
    BinnedSeries,
    FitError,
    GrowthCurve,
    exponent_trend,
    find_crossing,
    fit_power_law,
    log_bin,
    rank_frequency,
    vocabulary_growth,
)


def table_from_text(text, n=1):
    return rank_frequency(count_ngrams(tokenize(RawText(text), "character"), n))


class TestRankFrequency:
    def test_simple(self):
        t = table_from_text("aaab")
        assert list(t.ranks) == [1, 2]
        assert list(t.freqs) == [3, 1]
        assert t.surfaces == ("a", "b")

    def test_ties_break_lexicographically(self):
        t = table_from_text("baba")
        assert list(t.freqs) == [2, 2]
        assert t.surfaces == ("a", "b")

    def test_total_preserved(self):
        t = table_from_text("mississippi")
        assert int(t.freqs.sum()) == len("mississippi")


class TestLogBin:
    def test_single_row(self):
        t = table_from_text("a")
        b = log_bin(t)
        assert len(b.centers) == 1
        assert b.centers[0] == pytest.approx(1.0)
        assert b.values[0] == pytest.approx(1.0)

    def test_bin_count_bound(self):
        # ranks 1..1000 span three decades: at most 31 occupied bins
        x = np.arange(1, 1001, dtype=float)
        b = log_bin((x, 1.0 / x), bins_per_decade=10)
        assert len(b.centers) <= 31

    def test_exact_power_law_slope_survives_binning(self):
        # slope of the binned curve must stay within 1% of the true exponent
        x = np.arange(1, 1001, dtype=float)
        b = log_bin((x, x**-1.0), bins_per_decade=10)
        fit = fit_power_law(b, law="decay")
        assert fit.exponent == pytest.approx(1.0, rel=0.01)

    def test_every_point_in_exactly_one_bin(self):
        x = np.arange(1, 301, dtype=float)
        b = log_bin((x, x**-0.5), bins_per_decade=7)
        # re-derive membership: each abscissa maps to exactly one listed bin id
        idx = np.floor(np.log10(x) * 7 + 1e-9).astype(int)
        assert set(idx) == set(int(i) for i in b.bin_ids)

    def test_centers_increasing(self):
        x = np.arange(1, 5000, dtype=float)
        b = log_bin((x, x**-1.2))
        assert np.all(np.diff(b.centers) > 0)


class TestFitPowerLaw:
    def test_decay_exact(self):
        u = np.logspace(0, 3, 50)
        fit = fit_power_law((u, 1000.0 * u**-1.0))
        assert fit.exponent == pytest.approx(1.0, abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_growth_exact(self):
        m = np.logspace(0, 5, 50)
        curve = GrowthCurve(m=m, v=m**0.773)
        fit = fit_power_law(curve)
        assert fit.exponent == pytest.approx(0.773, abs=1e-12)

    def test_scaling_only_shifts_intercept(self):
        u = np.logspace(0, 3, 40)
        y = u**-0.8
        f1 = fit_power_law((u, y))
        f2 = fit_power_law((u, 100.0 * y))
        assert f2.exponent == pytest.approx(f1.exponent, abs=1e-12)
        assert f2.log_intercept - f1.log_intercept == pytest.approx(2.0, abs=1e-9)

    def test_range_restriction(self):
        u = np.logspace(0, 3, 100)
        y = u**-1.0
        y[u < 10] = 5.0  # corrupt the head; fit beyond it must be clean
        fit = fit_power_law((u, y), fit_range=(10, 1000))
        assert fit.exponent == pytest.approx(1.0, abs=1e-9)

    def test_too_few_points(self):
        with pytest.raises(FitError):
            fit_power_law(([1.0, 10.0], [1.0, 0.1]))

    def test_nonpositive_rejected(self):
        with pytest.raises(FitError):
            fit_power_law(([1.0, 2.0, 3.0], [1.0, 0.0, -1.0]))

    def test_semilog_exponential_rate(self):
        s = np.arange(1.0, 40.0)
        fit = fit_power_law((s, np.exp(-s / 5.0)), scale="semi-log")
        assert fit.exponent == pytest.approx(0.2, abs=1e-9)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


class TestVocabularyGrowth:
    def test_tiny_example(self):
        curve = vocabulary_growth(tokenize(RawText("a b a b a b"), "word"))
        expected = {1: 1, 2: 2, 3: 2, 4: 2, 5: 2, 6: 2}
        for m, v in zip(curve.m, curve.v):
            assert expected[int(m)] == int(v)

    def test_against_brute_force(self):
        rng = np.random.default_rng(11)
        words = " ".join(rng.choice(list("abcdefgh"), size=500))
        stream = tokenize(RawText(words), "word")
        curve = vocabulary_growth(stream, samples_per_decade=30)
        toks = words.split(" ")
        for m, v in zip(curve.m, curve.v):
            assert int(v) == len(set(toks[: int(m)]))

    def test_final_v_is_vocab_size(self):
        stream = tokenize(RawText("the cat sat on the mat the end"), "word")
        curve = vocabulary_growth(stream)
        assert int(curve.m[-1]) == len(stream)
        assert int(curve.v[-1]) == stream.vocab_size

    def test_first_sample_at_one(self):
        stream = tokenize(RawText("x y z"), "word")
        curve = vocabulary_growth(stream)
        assert int(curve.m[0]) == 1 and int(curve.v[0]) == 1

    def test_fitted_zeta_at_most_one(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            words = " ".join(rng.choice(list("abcdefghijklmnop"), size=2000))
            stream = tokenize(RawText(words), "word")
            curve = vocabulary_growth(stream)
            fit = fit_power_law(curve)
            assert 0.0 < fit.exponent <= 1.0

    def test_requires_word_mode(self):
        with pytest.raises(ValueError):
            vocabulary_growth(tokenize(RawText("abc"), "character"))


class TestExponentTrend:
    def test_constant_is_flat(self):
        fit = exponent_trend([(e, 0.9) for e in (1, 2, 4, 8, 16)])
        assert fit.exponent == pytest.approx(0.0, abs=1e-12)

    def test_exact_semilog_recovery(self):
        a, b = 0.95, -0.06
        pairs = [(e, a + b * np.log10(e)) for e in (1, 3, 10, 30, 100, 300)]
        fit = exponent_trend(pairs)
        assert fit.exponent == pytest.approx(b, abs=1e-12)
        assert fit.log_intercept == pytest.approx(a, abs=1e-12)

    def test_decreasing_gives_negative_slope(self):
        pairs = [(1, 1.0), (10, 0.9), (100, 0.82), (1000, 0.80)]
        assert exponent_trend(pairs).exponent < 0

    def test_needs_three_epochs(self):
        with pytest.raises(FitError):
            exponent_trend([(1, 1.0), (2, 0.9)])


class TestCrossing:
    def test_detects_crossing(self):
        a = BinnedSeries(
            centers=np.array([1.0, 10.0, 100.0]),
            values=np.array([100.0, 10.0, 1.0]),
            bin_ids=np.array([0, 10, 20]),
            bins_per_decade=10,
        )
        b = BinnedSeries(
            centers=np.array([1.0, 10.0, 100.0]),
            values=np.array([50.0, 8.0, 2.0]),
            bin_ids=np.array([0, 10, 20]),
            bins_per_decade=10,
        )
        assert find_crossing(a, b) == pytest.approx(100.0)

    def test_no_crossing(self):
        a = BinnedSeries(
            centers=np.array([1.0, 10.0]), values=np.array([10.0, 5.0]),
            bin_ids=np.array([0, 10]), bins_per_decade=10,
        )
        b = BinnedSeries(
            centers=np.array([1.0, 10.0]), values=np.array([5.0, 2.0]),
            bin_ids=np.array([0, 10]), bins_per_decade=10,
        )
        assert find_crossing(a, b) is None
