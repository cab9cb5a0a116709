"""Encoding-rate decay via an external compressor, and the power-ansatz fit.

The encoding rate r(n) is the compressed size in bits of the first n
characters divided by n; the more predictable the text, the faster it decays.
Rates depend on the compressor binary, so its identity and version are
recorded with every curve; the decay *ordering* between differently shuffled
versions of a text is what the analysis relies on, not absolute sizes.
"""

from __future__ import annotations

import csv
import math
import os
import shutil
import subprocess
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import least_squares

from textlaws.corpus import RawText

COMPRESSOR_ENV = "TEXTLAWS_COMPRESSOR"

# PPM-family compressors are the reference configuration; none ships with
# most systems, so the default falls back through common general compressors.
_FALLBACK_TEMPLATES = (
    "xz -6 -T1 -c {input} > {output}",
    "bzip2 -9 -c {input} > {output}",
    "gzip -9 -c {input} > {output}",
)


class CompressorError(RuntimeError):
    """Raised when the external compressor cannot be run or produced nothing."""


@dataclass(frozen=True)
class EncodingRateCurve:
    """Compressed sizes of text prefixes: (n chars, compressed bytes)."""

    lengths: np.ndarray
    compressed_bytes: np.ndarray
    compressor_id: str

    @property
    def rates(self) -> np.ndarray:
        """Bits per character at each prefix length."""
        return 8.0 * self.compressed_bytes / self.lengths


@dataclass(frozen=True)
class AnsatzFit:
    """Parameters of f(n) = A * n^(beta-1) + h fitted to a rate curve."""

    A: float
    beta: float
    h: float
    residual: float

    def __call__(self, n) -> np.ndarray:
        return self.A * np.asarray(n, dtype=float) ** (self.beta - 1.0) + self.h


def resolve_compressor(template: str | None = None) -> tuple[str, str]:
    """Pick the compressor command template and identify it for provenance.

    Precedence: explicit argument, then the TEXTLAWS_COMPRESSOR environment
    variable, then the first available fallback binary. The returned id pins
    template plus binary version so runs are comparable.
    """
    if template is None:
        template = os.environ.get(COMPRESSOR_ENV)
    if template is None:
        for cand in _FALLBACK_TEMPLATES:
            if shutil.which(cand.split()[0]):
                template = cand
                break
        else:
            raise CompressorError("no compressor binary found (tried xz, bzip2, gzip)")
    binary = template.split()[0]
    version = "unknown"
    try:
        out = subprocess.run(
            [binary, "--version"], capture_output=True, text=True, timeout=10
        )
        first = (out.stdout or out.stderr).strip().splitlines()
        if first:
            version = first[0]
    except (OSError, subprocess.TimeoutExpired):
        pass
    return template, f"{template} [{version}]"


def _compress_size(data: bytes, template: str, workdir: str, tag: int) -> int:
    src = Path(workdir) / f"prefix-{tag}.txt"
    dst = Path(workdir) / f"prefix-{tag}.cmp"
    src.write_bytes(data)
    cmd = template.format(input=str(src), output=str(dst))
    proc = subprocess.run(cmd, shell=True, capture_output=True, text=True)
    if proc.returncode != 0:
        raise CompressorError(f"compressor failed ({proc.returncode}): {proc.stderr.strip()}")
    if not dst.exists() or dst.stat().st_size == 0:
        raise CompressorError(f"compressor produced no output for {cmd!r}")
    size = dst.stat().st_size
    src.unlink()
    dst.unlink()
    return size


def default_prefix_lengths(total: int, points: int = 20, lo: int = 1000) -> np.ndarray:
    lo = min(lo, total)
    grid = np.unique(
        np.round(np.logspace(math.log10(lo), math.log10(total), points)).astype(np.int64)
    )
    return grid[(grid >= 1) & (grid <= total)]


def encoding_rate_curve(
    text: RawText,
    prefix_lengths=None,
    compressor: str | None = None,
    max_workers: int = 4,
) -> EncodingRateCurve:
    """Compress prefixes of a text and record bits per character.

    Unicode texts must be single-byte encodable (the preprocessed a-z+space
    alphabet is), so one character is one byte on disk for the compressor.
    """
    if text.encoding_mode == "byte":
        data = text.content
    else:
        try:
            data = text.content.encode("latin-1")
        except UnicodeEncodeError:
            raise ValueError("text has characters outside the single-byte range; preprocess first")
    total = len(data)
    if prefix_lengths is None:
        prefix_lengths = default_prefix_lengths(total)
    lengths = sorted(set(int(n) for n in prefix_lengths))
    if not lengths or lengths[0] < 1:
        raise ValueError("prefix lengths must be positive")
    if lengths[-1] > total:
        raise ValueError(f"prefix length {lengths[-1]} exceeds text length {total}")

    template, compressor_id = resolve_compressor(compressor)
    with tempfile.TemporaryDirectory(prefix="textlaws-encrate-") as workdir:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = [
                pool.submit(_compress_size, data[:n], template, workdir, i)
                for i, n in enumerate(lengths)
            ]
            sizes = [f.result() for f in futures]
    return EncodingRateCurve(
        lengths=np.array(lengths, dtype=np.int64),
        compressed_bytes=np.array(sizes, dtype=np.int64),
        compressor_id=compressor_id,
    )


def fit_ansatz(curve: EncodingRateCurve) -> AnsatzFit:
    """Nonlinear least squares for f(n) = A n^(beta-1) + h, h >= 0.

    Deterministic multi-start: beta over {0.1..0.9}, h over {0, min r / 2,
    0.9 min r}, A from the conditional closed form at each start. The best
    converged candidate by residual wins; if nothing converges the best grid
    point is reported.
    """
    n = curve.lengths.astype(float)
    r = curve.rates
    if len(n) < 4:
        raise ValueError(f"need at least 4 points to fit the ansatz, got {len(n)}")
    rmin = float(r.min())

    def residuals(params):
        a, beta, h = params
        return a * n ** (beta - 1.0) + h - r

    best = None
    for beta0 in np.arange(0.1, 0.95, 0.1):
        w = n ** (beta0 - 1.0)
        for h0 in (0.0, rmin / 2.0, 0.9 * rmin):
            a0 = max(float(np.dot(w, r - h0) / np.dot(w, w)), 1e-9)
            start = (a0, beta0, h0)
            sse0 = float(np.sum(residuals(start) ** 2))
            if best is None or sse0 < best[1]:
                best = (start, sse0)
            try:
                sol = least_squares(
                    residuals,
                    x0=start,
                    bounds=([0.0, 1e-9, 0.0], [np.inf, 1.0, np.inf]),
                    method="trf",
                )
            except Exception:
                continue
            sse = float(np.sum(sol.fun**2))
            if sse < best[1]:
                best = (tuple(sol.x), sse)
    (a, beta, h), sse = best
    return AnsatzFit(A=float(a), beta=float(beta), h=float(h), residual=sse)


def is_prefix_monotone(curve: EncodingRateCurve) -> bool:
    """Sanity check: compressed size should not shrink as the prefix grows."""
    return bool(np.all(np.diff(curve.compressed_bytes) >= 0))


def write_curve_csv(curve: EncodingRateCurve, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "bytes", "r"])
        for n, b, rate in zip(curve.lengths, curve.compressed_bytes, curve.rates):
            w.writerow([int(n), int(b), repr(float(rate))])
