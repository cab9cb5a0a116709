"""Assemble per-law results for one text into a machine-readable report.

A report bundles the Zipf fits per n, the Heaps fit, the mutual-information
and autocorrelation curves with their decay verdicts, and provenance
(input digest, configuration, tool version). Reports for two texts can be
compared side by side, with the qualitative expectations expressed as named
boolean checks.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from textlaws import longrange, tokens, zipfheaps
from textlaws.corpus import RawText


@dataclass
class AnalysisConfig:
    """Knobs for a full single-text analysis."""

    ngrams: tuple[int, ...] = (1, 2, 3, 4, 5)
    zipf_fit_range: tuple[float, float] = (10.0, 10_000.0)
    heaps_fit_lo: float = 100.0
    bins_per_decade: int = 10
    rare_fraction_num: int = 1
    rare_fraction_den: int = 16
    samples_per_decade: int = 20
    mi_distances: tuple[int, ...] | None = None
    acf_distances: tuple[int, ...] | None = None
    decay_margin: float = 0.05

    def to_dict(self) -> dict:
        return {
            "ngrams": list(self.ngrams),
            "zipf_fit_range": list(self.zipf_fit_range),
            "heaps_fit_lo": self.heaps_fit_lo,
            "bins_per_decade": self.bins_per_decade,
            "rare_fraction": f"{self.rare_fraction_num}/{self.rare_fraction_den}",
            "samples_per_decade": self.samples_per_decade,
            "decay_margin": self.decay_margin,
        }


def provenance(text: RawText, config: AnalysisConfig) -> dict:
    data = text.content if isinstance(text.content, bytes) else text.content.encode("utf-8")
    return {
        "tool": "textlaws",
        "source_id": text.source_id,
        "sha256": hashlib.sha256(data).hexdigest(),
        "length": len(text.content),
        "config": config.to_dict(),
    }


def analyze(text: RawText, config: AnalysisConfig | None = None) -> dict:
    """Run every law on one (already preprocessed) text; returns plain dicts."""
    from fractions import Fraction

    cfg = config or AnalysisConfig()
    word_stream = tokens.tokenize(text, "word")
    char_stream = tokens.tokenize(text, "character")

    zipf = {}
    binned = {}
    for n in cfg.ngrams:
        table = zipfheaps.rank_frequency(tokens.count_ngrams(word_stream, n))
        series = zipfheaps.log_bin(table, cfg.bins_per_decade)
        binned[n] = series
        fit = zipfheaps.fit_power_law(series, fit_range=cfg.zipf_fit_range, law="decay")
        zipf[str(n)] = zipfheaps.fit_row("zipf", n, fit)

    growth = zipfheaps.vocabulary_growth(word_stream, cfg.samples_per_decade)
    heaps_fit = zipfheaps.fit_power_law(
        growth, fit_range=(cfg.heaps_fit_lo, float(len(word_stream))), law="growth"
    )

    crossing = None
    if 1 in binned and 2 in binned:
        crossing = zipfheaps.find_crossing(binned[1], binned[2])

    mi = longrange.mi_curve(char_stream, cfg.mi_distances)
    mi_verdict = longrange.classify_decay(mi, margin=cfg.decay_margin)

    intervals = longrange.rare_word_intervals(
        word_stream, Fraction(cfg.rare_fraction_num, cfg.rare_fraction_den)
    )
    acf = longrange.acf_curve(intervals, cfg.acf_distances)
    acf_verdict = longrange.classify_decay(acf, margin=cfg.decay_margin)

    return {
        "provenance": provenance(text, cfg),
        "tokens": {"words": len(word_stream), "chars": len(char_stream),
                   "vocabulary": word_stream.vocab_size},
        "zipf": zipf,
        "heaps": zipfheaps.fit_row("heaps", None, heaps_fit),
        "unigram_2gram_crossing_rank": crossing,
        "mutual_information": {
            "s": [int(s) for s in mi.distances],
            "value": [float(v) for v in mi.values],
            "verdict": longrange.verdict_to_dict(mi_verdict),
        },
        "autocorrelation": {
            "s": [int(s) for s in acf.distances],
            "value": [float(v) for v in acf.values],
            "verdict": longrange.verdict_to_dict(acf_verdict),
            "n_intervals": len(intervals),
            "rare_types": intervals.rare_type_count,
        },
    }


def compare(original: dict, other: dict) -> dict:
    """Exponent deltas plus the named qualitative checks between two reports."""
    dz = {
        n: other["zipf"][n]["exponent"] - original["zipf"][n]["exponent"]
        for n in original["zipf"]
        if n in other["zipf"]
    }
    dh = other["heaps"]["exponent"] - original["heaps"]["exponent"]
    acf_b = np.array(other["autocorrelation"]["value"])
    checks = {
        "unigram_zipf_within_0.1": abs(dz.get("1", np.inf)) <= 0.1,
        "heaps_exponent_above_original": dh > 0,
        "other_acf_flat": bool(np.max(np.abs(acf_b)) < 0.05),
        "original_acf_power_preferred": original["autocorrelation"]["verdict"]["preferred"]
        == "power",
        "mi_verdicts_match": original["mutual_information"]["verdict"]["preferred"]
        == other["mutual_information"]["verdict"]["preferred"],
    }
    return {
        "zipf_exponent_delta": dz,
        "heaps_exponent_delta": dh,
        "checks": checks,
    }
