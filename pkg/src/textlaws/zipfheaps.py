"""Rank-frequency tables, vocabulary growth, log binning, and power-law fits.

A rank-frequency table sorts n-gram counts into the classic Zipf form
F(u) against rank u; vocabulary growth tracks distinct types V(m) against
tokens seen m. Exponents come from ordinary least squares on the
log-transformed coordinates, optionally after logarithmic binning, which is
how the measured curves are turned into single numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import csv
import math
from pathlib import Path

import numpy as np

from textlaws.tokens import NgramCountTable, TokenStream


class FitError(ValueError):
    """Raised when a regression has too few or invalid points."""


@dataclass(frozen=True)
class RankFrequencyTable:
    """Frequencies sorted descending; rank u = position + 1.

    Ties in frequency are ordered lexicographically by surface form, so the
    table is a deterministic function of the counts.
    """

    n: int
    freqs: np.ndarray
    surfaces: tuple[str, ...]

    def __post_init__(self):
        if len(self.freqs) and np.any(np.diff(self.freqs) > 0):
            raise ValueError("frequencies must be non-increasing")

    @property
    def ranks(self) -> np.ndarray:
        return np.arange(1, len(self.freqs) + 1, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.freqs)


@dataclass(frozen=True)
class GrowthCurve:
    """Sampled vocabulary growth: distinct types ``v`` after ``m`` tokens."""

    m: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.m) <= 0):
            raise ValueError("m must be strictly increasing")
        if np.any(np.diff(self.v) < 0):
            raise ValueError("v must be non-decreasing")
        if np.any(self.v > self.m):
            raise ValueError("v cannot exceed m")


@dataclass(frozen=True)
class BinnedSeries:
    """Log-binned curve: geometric bin centers and mean ordinates per bin."""

    centers: np.ndarray
    values: np.ndarray
    bin_ids: np.ndarray
    bins_per_decade: int


@dataclass(frozen=True)
class PowerLawFit:
    """Result of a straight-line fit in transformed coordinates.

    ``scale`` is "log-log" for power laws (exponent = |slope|, sign handled
    by the law kind) and "semi-log" for fits with one logarithmic axis
    (exponential decays and epoch trends).
    """

    exponent: float
    log_intercept: float
    fit_range: tuple[float, float]
    r_squared: float
    scale: str
    n_points: int


def _extract_xy(data) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(data, RankFrequencyTable):
        return data.ranks.astype(float), data.freqs.astype(float)
    if isinstance(data, BinnedSeries):
        return data.centers.astype(float), data.values.astype(float)
    if isinstance(data, GrowthCurve):
        return data.m.astype(float), data.v.astype(float)
    x, y = data
    return np.asarray(x, dtype=float), np.asarray(y, dtype=float)


def rank_frequency(counts: NgramCountTable) -> RankFrequencyTable:
    """Sort a count table into (rank, frequency) rows.

    Descending by count; ties broken lexicographically by surface form.
    """
    if not counts.entries:
        raise ValueError("empty count table")
    surfaces = [counts.surface(k) for k in counts.entries]
    freqs = list(counts.entries.values())
    order = sorted(range(len(freqs)), key=lambda i: (-freqs[i], surfaces[i]))
    return RankFrequencyTable(
        n=counts.n,
        freqs=np.array([freqs[i] for i in order], dtype=np.int64),
        surfaces=tuple(surfaces[i] for i in order),
    )


def log_bin(data, bins_per_decade: int = 10) -> BinnedSeries:
    """Bin a positive-abscissa curve into logarithmic bins.

    Bin k covers abscissas in [10^(k/bpd), 10^((k+1)/bpd)). Each bin yields
    one point: the geometric mean of its member abscissas against the
    arithmetic mean of their ordinates. Empty bins are omitted.
    """
    if bins_per_decade < 1:
        raise ValueError("bins_per_decade must be >= 1")
    x, y = _extract_xy(data)
    if np.any(x <= 0):
        raise ValueError("abscissas must be positive for log binning")
    # nudge exact bin-edge values into the upper bin deterministically
    idx = np.floor(np.log10(x) * bins_per_decade + 1e-9).astype(np.int64)
    uniq = np.unique(idx)
    centers = np.empty(len(uniq))
    values = np.empty(len(uniq))
    for j, b in enumerate(uniq):
        sel = idx == b
        centers[j] = math.exp(np.mean(np.log(x[sel])))
        values[j] = float(np.mean(y[sel]))
    return BinnedSeries(
        centers=centers, values=values, bin_ids=uniq, bins_per_decade=bins_per_decade
    )


def fit_power_law(
    data,
    fit_range: tuple[float, float] | None = None,
    scale: str = "log-log",
    law: str | None = None,
) -> PowerLawFit:
    """OLS straight-line fit in transformed coordinates.

    "log-log" fits log10(y) against log10(x): the power-law exponent, negated
    for decaying laws so that F(u) ~ u^-xi reports xi > 0, and raw for growth
    laws so that V(m) ~ m^zeta reports zeta directly. "semi-log" fits log10(y)
    against x and reports the e-folding decay rate (for exponential decays).

    ``law`` is "decay" or "growth"; the default is "growth" for GrowthCurve
    inputs and "decay" otherwise.
    """
    if scale not in ("log-log", "semi-log"):
        raise ValueError(f"unknown scale {scale!r}")
    if law is None:
        law = "growth" if isinstance(data, GrowthCurve) else "decay"
    if law not in ("decay", "growth"):
        raise ValueError(f"unknown law {law!r}")

    x, y = _extract_xy(data)
    if fit_range is not None:
        lo, hi = fit_range
        mask = (x >= lo) & (x <= hi)
        x, y = x[mask], y[mask]
    else:
        lo, hi = (float(x.min()), float(x.max())) if len(x) else (0.0, 0.0)
    if len(x) < 3:
        raise FitError(f"need at least 3 points in range, got {len(x)}")
    if np.any(y <= 0):
        raise FitError("non-positive ordinates cannot be fit on a log scale")

    ly = np.log10(y)
    lx = np.log10(x) if scale == "log-log" else x
    if scale == "log-log" and np.any(x <= 0):
        raise FitError("non-positive abscissas in log-log mode")

    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (intercept + slope * lx)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res < 1e-20 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot

    if scale == "log-log":
        exponent = -slope if law == "decay" else slope
    else:
        # e-folding rate of exp(-r s): slope of log10 y is -r/ln(10)
        rate = -slope * math.log(10)
        exponent = rate if law == "decay" else -rate
    return PowerLawFit(
        exponent=float(exponent),
        log_intercept=float(intercept),
        fit_range=(float(lo), float(hi)),
        r_squared=float(r2),
        scale=scale,
        n_points=len(x),
    )


def vocabulary_growth(stream: TokenStream, samples_per_decade: int = 20) -> GrowthCurve:
    """Exact V(m) at log-spaced m, plus the final length. Single pass.

    V(m) counts distinct types among the first m tokens; it is computed from
    first-occurrence positions, so the curve is exact at every sample.
    """
    if stream.mode != "word":
        raise ValueError("vocabulary growth is defined on word streams")
    n = len(stream)
    if n == 0:
        raise ValueError("empty stream")
    _, first = np.unique(stream.ids, return_index=True)
    first = np.sort(first)
    decades = math.log10(n) if n > 1 else 1.0
    k = max(2, int(round(samples_per_decade * decades)) + 1)
    ms = np.unique(
        np.concatenate(
            [np.round(np.logspace(0, math.log10(n), k)).astype(np.int64), [n]]
        )
    )
    ms = ms[(ms >= 1) & (ms <= n)]
    vs = np.searchsorted(first, ms, side="left")
    return GrowthCurve(m=ms, v=vs.astype(np.int64))


def exponent_trend(fits) -> PowerLawFit:
    """Fit an exponent-versus-epoch trend on a semi-log scale.

    ``fits`` is a sequence of (epoch, PowerLawFit-or-float) pairs with
    epoch >= 1. The regression is exponent against log10(epoch); the returned
    ``exponent`` is the raw slope (negative when exponents shrink with
    training), ``log_intercept`` the value extrapolated to epoch 1.
    """
    epochs, ys = [], []
    for epoch, f in fits:
        if epoch < 1:
            raise ValueError("epochs must be >= 1 for a log-scale trend")
        epochs.append(float(epoch))
        ys.append(float(f.exponent if isinstance(f, PowerLawFit) else f))
    if len(epochs) < 3:
        raise FitError(f"need at least 3 epochs, got {len(epochs)}")
    lx = np.log10(np.array(epochs))
    y = np.array(ys)
    slope, intercept = np.polyfit(lx, y, 1)
    resid = y - (intercept + slope * lx)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 and ss_res < 1e-20 else (1.0 - ss_res / ss_tot if ss_tot else 0.0)
    return PowerLawFit(
        exponent=float(slope),
        log_intercept=float(intercept),
        fit_range=(min(epochs), max(epochs)),
        r_squared=float(r2),
        scale="semi-log",
        n_points=len(epochs),
    )


def find_crossing(a: BinnedSeries, b: BinnedSeries) -> float | None:
    """First shared bin where curve ``b`` reaches or exceeds curve ``a``.

    Returns that bin's center (rank scale) or None. Used to detect the
    characteristic tail intersection of unigram and 2-gram curves.
    """
    vb = {int(i): v for i, v in zip(b.bin_ids, b.values)}
    for bin_id, center, va in zip(a.bin_ids, a.centers, a.values):
        other = vb.get(int(bin_id))
        if other is not None and other >= va:
            return float(center)
    return None


def write_rankfreq_csv(table: RankFrequencyTable, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "rank", "ngram", "freq"])
        for rank, surface, freq in zip(table.ranks, table.surfaces, table.freqs):
            w.writerow([table.n, int(rank), surface, int(freq)])


def write_growth_csv(curve: GrowthCurve, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "V"])
        for m, v in zip(curve.m, curve.v):
            w.writerow([int(m), int(v)])


def fit_row(quantity: str, n: int | None, fit: PowerLawFit) -> dict:
    """One fits-CSV/JSON row: (quantity, n, exponent, intercept, lo, hi, r2)."""
    return {
        "quantity": quantity,
        "n": n,
        "exponent": fit.exponent,
        "intercept": fit.log_intercept,
        "lo": fit.fit_range[0],
        "hi": fit.fit_range[1],
        "r2": fit.r_squared,
    }


def write_fits_csv(rows, path: str | Path) -> None:
    cols = ["quantity", "n", "exponent", "intercept", "lo", "hi", "r2"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(cols)
        for r in rows:
            w.writerow([r[c] for c in cols])
