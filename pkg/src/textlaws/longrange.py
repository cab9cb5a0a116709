"""Long-range correlation measures: mutual information and rare-word ACF.

Two complementary probes of order beyond n-grams. Mutual information asks how
much a symbol tells you about the symbol a fixed distance away, from the
empirical joint distribution of such pairs (plug-in estimator, no bias
correction, log base 2). The autocorrelation probe follows the intervals
between occurrences of rare words: power decay of the interval ACF marks
long-range correlation, exponential decay marks short memory.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from textlaws.tokens import TokenStream
from textlaws.zipfheaps import FitError, PowerLawFit, fit_power_law


@dataclass(frozen=True)
class CorrelationSeries:
    """(distance, value) samples of either MI (bits) or ACF (dimensionless)."""

    kind: str
    distances: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in ("mutual_information", "autocorrelation"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if np.any(np.diff(self.distances) <= 0):
            raise ValueError("distances must be strictly increasing")

    @property
    def unit(self) -> str:
        return "bits" if self.kind == "mutual_information" else "dimensionless"


@dataclass(frozen=True)
class IntervalSequence:
    """Gaps between successive rare-word occurrences.

    ``threshold_rank`` is the highest (most frequent) descending-frequency
    rank that still belongs to the rare set; everything from that rank down
    to the rarest type is "rare".
    """

    values: np.ndarray
    rare_fraction: Fraction
    threshold_rank: int
    rare_type_count: int

    def __post_init__(self):
        if len(self.values) and self.values.min() < 1:
            raise ValueError("intervals must be positive")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DecayVerdict:
    """Power-versus-exponential comparison of a decaying series.

    ``preferred`` is "power" only when the log-log r-squared beats the
    semi-log r-squared by the margin; "indeterminate" when both fits are poor
    or there were too few positive points; otherwise "exponential".
    """

    preferred: str
    power_fit: PowerLawFit | None
    exp_fit: PowerLawFit | None
    compare_range: tuple[float, float]
    excluded_points: int


def default_distances(length: int, per_decade: int = 20, s_max: int | None = None) -> np.ndarray:
    """Log-spaced integer distances, 1 .. min(10^4, length/10) by default."""
    if s_max is None:
        s_max = min(10_000, max(1, length // 10))
    s_max = max(1, min(s_max, length - 1))
    k = max(2, int(round(per_decade * math.log10(max(s_max, 2)))) + 1)
    grid = np.unique(np.round(np.logspace(0, math.log10(s_max), k)).astype(np.int64))
    return grid[(grid >= 1) & (grid <= s_max)]


def mutual_information(stream: TokenStream, s: int) -> float:
    """Plug-in mutual information between symbols at distance ``s``, in bits.

    All (i, i+s) pairs contribute; joint and marginal distributions both come
    from the pair table, so the estimate is a Kullback-Leibler divergence and
    never negative.
    """
    if s < 1:
        raise ValueError("distance must be >= 1")
    n = len(stream)
    if n <= s:
        raise ValueError(f"stream length {n} too short for distance {s}")
    k = stream.vocab_size
    a = stream.ids[:-s]
    b = stream.ids[s:]
    codes = a * k + b
    uniq, counts = np.unique(codes, return_counts=True)
    total = counts.sum()
    row = uniq // k
    col = uniq % k
    cx = np.bincount(row, weights=counts, minlength=k)
    cy = np.bincount(col, weights=counts, minlength=k)
    p = counts / total
    ratio = counts.astype(float) * total / (cx[row] * cy[col])
    mi = float(np.sum(p * np.log2(ratio)))
    return max(mi, 0.0)  # clip float round-off just below zero


def mi_curve(stream: TokenStream, distances=None) -> CorrelationSeries:
    """Mutual information over a distance grid (log-spaced by default)."""
    if distances is None:
        distances = default_distances(len(stream))
    distances = np.asarray(sorted(set(int(s) for s in distances)), dtype=np.int64)
    values = np.array([mutual_information(stream, int(s)) for s in distances])
    return CorrelationSeries(kind="mutual_information", distances=distances, values=values)


def rare_word_intervals(
    stream: TokenStream, rare_fraction: Fraction | float = Fraction(1, 16)
) -> IntervalSequence:
    """Intervals between occurrences of the rarest fraction of word types.

    Types are taken in ascending frequency, whole frequency classes at a
    time, until the included type count first reaches ceil(fraction * V);
    including whole classes makes the boundary deterministic. The sequence is
    the gaps between consecutive positions of rare-set tokens.
    """
    if stream.mode != "word":
        raise ValueError("rare-word intervals are defined on word streams")
    if not isinstance(rare_fraction, Fraction):
        rare_fraction = Fraction(rare_fraction).limit_denominator(10**9)
    counts = np.bincount(stream.ids, minlength=stream.vocab_size)
    vocab_size = int((counts > 0).sum())
    quota = math.ceil(vocab_size * rare_fraction)

    rare_types = np.zeros(stream.vocab_size, dtype=bool)
    included = 0
    for freq in np.unique(counts[counts > 0]):
        cls = counts == freq
        rare_types |= cls
        included += int(cls.sum())
        if included >= quota:
            break
    positions = np.flatnonzero(rare_types[stream.ids])
    if len(positions) < 3:
        raise ValueError(
            f"only {len(positions)} rare-word occurrences; autocorrelation undefined"
        )
    return IntervalSequence(
        values=np.diff(positions).astype(np.int64),
        rare_fraction=rare_fraction,
        threshold_rank=vocab_size - included + 1,
        rare_type_count=included,
    )


def autocorrelation(seq: IntervalSequence, s: int) -> float:
    """ACF of the interval sequence at lag ``s``.

    Uses the global mean and population variance of the whole sequence and
    normalizes the lag-s sum by (N - s) * variance, so C(0) = 1 identically.
    """
    r = seq.values.astype(float)
    n = len(r)
    if not 0 <= s < n:
        raise ValueError(f"lag must be in [0, {n}), got {s}")
    mu = r.mean()
    var = r.var()
    if var == 0.0:
        raise ValueError("constant interval sequence: variance is zero")
    if s == 0:
        return 1.0
    d = r - mu
    return float(np.dot(d[: n - s], d[s:]) / ((n - s) * var))


def acf_curve(seq: IntervalSequence, distances=None) -> CorrelationSeries:
    """Autocorrelation over a lag grid (log-spaced from 1 by default)."""
    if distances is None:
        distances = default_distances(len(seq), s_max=min(10_000, len(seq) - 1))
    distances = np.asarray(sorted(set(int(s) for s in distances)), dtype=np.int64)
    values = np.array([autocorrelation(seq, int(s)) for s in distances])
    return CorrelationSeries(kind="autocorrelation", distances=distances, values=values)


def classify_decay(
    series: CorrelationSeries,
    compare_range: tuple[float, float] | None = None,
    margin: float = 0.05,
    r2_floor: float = 0.5,
) -> DecayVerdict:
    """Decide whether a series decays as a power law or exponentially.

    Both candidate fits use only positive values inside ``compare_range``
    (log of a non-positive value is undefined; the number of excluded points
    is reported). Power wins when its r-squared exceeds the exponential fit's
    by ``margin``; if both r-squared are below ``r2_floor``, or fewer than 5
    usable points remain, the verdict is indeterminate.
    """
    if compare_range is None:
        compare_range = (float(series.distances.min()), float(series.distances.max()))
    lo, hi = compare_range
    mask = (series.distances >= lo) & (series.distances <= hi)
    x = series.distances[mask].astype(float)
    y = series.values[mask]
    pos = y > 0
    excluded = int((~pos).sum())
    x, y = x[pos], y[pos]
    if len(x) < 5:
        return DecayVerdict(
            preferred="indeterminate",
            power_fit=None,
            exp_fit=None,
            compare_range=(lo, hi),
            excluded_points=excluded,
        )
    try:
        power = fit_power_law((x, y), scale="log-log", law="decay")
        exp = fit_power_law((x, y), scale="semi-log", law="decay")
    except FitError:
        return DecayVerdict(
            preferred="indeterminate",
            power_fit=None,
            exp_fit=None,
            compare_range=(lo, hi),
            excluded_points=excluded,
        )
    if power.r_squared < r2_floor and exp.r_squared < r2_floor:
        preferred = "indeterminate"
    elif power.r_squared >= exp.r_squared + margin:
        preferred = "power"
    else:
        preferred = "exponential"
    return DecayVerdict(
        preferred=preferred,
        power_fit=power,
        exp_fit=exp,
        compare_range=(lo, hi),
        excluded_points=excluded,
    )


def verdict_to_dict(v: DecayVerdict) -> dict:
    return {
        "preferred": v.preferred,
        "gamma": v.power_fit.exponent if v.power_fit else None,
        "r2_power": v.power_fit.r_squared if v.power_fit else None,
        "r2_exp": v.exp_fit.r_squared if v.exp_fit else None,
        "excluded_points": v.excluded_points,
        "compare_range": list(v.compare_range),
    }


def write_series_csv(series: CorrelationSeries, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["kind", "s", "value"])
        for s, val in zip(series.distances, series.values):
            w.writerow([series.kind, int(s), repr(float(val))])
