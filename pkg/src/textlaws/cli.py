"""Command-line surface for the toolkit.

Each subcommand reads plain-text files, writes CSV curves and JSON fits into
an output directory, and is deterministic given (inputs, flags, seeds).
Outputs are written to a temporary file and renamed into place, so a failed
run never leaves partial files behind.

Exit codes: 0 success, 2 usage error, 3 data error, 4 fit failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from textlaws import corpus, encrate, generators, longrange, report, tokens, zipfheaps
from textlaws.corpus import EmptyCorpusError, MarkerCollisionError, RawText, ShuffleSpec
from textlaws.encrate import CompressorError
from textlaws.zipfheaps import FitError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_FIT = 4


@contextmanager
def atomic_path(final: Path):
    """Yield a temp path in the target directory; rename over `final` on success."""
    final.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=final.parent, prefix=f".{final.name}.")
    os.close(fd)
    try:
        yield Path(tmp)
        os.replace(tmp, final)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def write_json(obj, final: Path) -> None:
    with atomic_path(final) as tmp:
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _load(args, attr="input") -> RawText:
    return corpus.read_text(getattr(args, attr), byte_mode=getattr(args, "byte", False))


def _parse_ints(spec: str) -> list[int]:
    return [int(x) for x in spec.split(",") if x.strip()]


def cmd_preprocess(args) -> int:
    text = _load(args)
    out = corpus.preprocess_english(text)
    if args.rare_symbol_cutoff is not None:
        out = corpus.filter_rare_symbols(out, args.rare_symbol_cutoff)
    with atomic_path(Path(args.output)) as tmp:
        corpus.write_text(out, tmp)
    return EXIT_OK


def cmd_shuffle(args) -> int:
    text = _load(args)
    spec = ShuffleSpec(level=args.level, rng_seed=args.seed, document_delimiter=args.delimiter)
    out = corpus.shuffle(text, spec)
    with atomic_path(Path(args.output)) as tmp:
        corpus.write_text(out, tmp)
    return EXIT_OK


def cmd_zipf(args) -> int:
    text = _load(args)
    stream = tokens.tokenize(text, args.mode)
    outdir = Path(args.out)
    rows = []
    for n in _parse_ints(args.n):
        table = zipfheaps.rank_frequency(tokens.count_ngrams(stream, n))
        with atomic_path(outdir / f"rankfreq-{n}.csv") as tmp:
            zipfheaps.write_rankfreq_csv(table, tmp)
        series = zipfheaps.log_bin(table, args.bins_per_decade)
        fit = zipfheaps.fit_power_law(series, fit_range=(args.fit_lo, args.fit_hi), law="decay")
        rows.append(zipfheaps.fit_row("zipf", n, fit))
    with atomic_path(outdir / "fits.csv") as tmp:
        zipfheaps.write_fits_csv(rows, tmp)
    write_json(rows, outdir / "fits.json")
    return EXIT_OK


def cmd_heaps(args) -> int:
    text = _load(args)
    stream = tokens.tokenize(text, "word")
    curve = zipfheaps.vocabulary_growth(stream, args.samples_per_decade)
    hi = args.fit_hi if args.fit_hi is not None else float(len(stream))
    fit = zipfheaps.fit_power_law(curve, fit_range=(args.fit_lo, hi), law="growth")
    outdir = Path(args.out)
    with atomic_path(outdir / "growth.csv") as tmp:
        zipfheaps.write_growth_csv(curve, tmp)
    write_json(zipfheaps.fit_row("heaps", None, fit), outdir / "heaps.json")
    return EXIT_OK


def cmd_mi(args) -> int:
    text = _load(args)
    stream = tokens.tokenize(text, args.mode)
    distances = _parse_ints(args.distances) if args.distances else None
    curve = longrange.mi_curve(stream, distances)
    rng = (args.compare_lo, args.compare_hi) if args.compare_hi else None
    verdict = longrange.classify_decay(curve, compare_range=rng)
    outdir = Path(args.out)
    with atomic_path(outdir / "mi.csv") as tmp:
        longrange.write_series_csv(curve, tmp)
    write_json(longrange.verdict_to_dict(verdict), outdir / "mi_verdict.json")
    return EXIT_OK


def cmd_acf(args) -> int:
    text = _load(args)
    stream = tokens.tokenize(text, "word")
    intervals = longrange.rare_word_intervals(stream, Fraction(args.rare_fraction))
    distances = _parse_ints(args.distances) if args.distances else None
    curve = longrange.acf_curve(intervals, distances)
    rng = (args.compare_lo, args.compare_hi) if args.compare_hi else None
    verdict = longrange.classify_decay(curve, compare_range=rng)
    outdir = Path(args.out)
    with atomic_path(outdir / "acf.csv") as tmp:
        longrange.write_series_csv(curve, tmp)
    write_json(longrange.verdict_to_dict(verdict), outdir / "acf_verdict.json")
    return EXIT_OK


def cmd_encrate(args) -> int:
    text = _load(args)
    lengths = _parse_ints(args.lengths) if args.lengths else None
    curve = encrate.encoding_rate_curve(
        text, prefix_lengths=lengths, compressor=args.compressor_cmd
    )
    outdir = Path(args.out)
    with atomic_path(outdir / "encrate.csv") as tmp:
        encrate.write_curve_csv(curve, tmp)
    fit = encrate.fit_ansatz(curve)
    write_json(
        {
            "A": fit.A, "beta": fit.beta, "h": fit.h, "residual": fit.residual,
            "compressor_id": curve.compressor_id,
        },
        outdir / "ansatz.json",
    )
    return EXIT_OK


def cmd_generate(args) -> int:
    outdir = Path(args.out)
    if args.generator == "monkey":
        spec = generators.MonkeySpec(
            alphabet_size=args.alphabet_size,
            space_prob=args.space_prob,
            rng_seed=args.seed,
            length=args.length,
        )
        text = generators.monkey_generate(spec)
        meta = generators.sidecar_metadata(
            "monkey",
            {"alphabet_size": args.alphabet_size, "space_prob": args.space_prob},
            args.seed,
            args.length,
        )
    else:
        training = _load(args)
        stream = tokens.tokenize(training, args.mode)
        model = generators.markov_train(stream, args.order)
        text = generators.markov_generate(model, args.length, rng_seed=args.seed)
        meta = generators.sidecar_metadata(
            "markov",
            {"order": args.order, "mode": args.mode, "training": str(args.input)},
            args.seed,
            args.length,
        )
    out_file = outdir / args.name
    with atomic_path(out_file) as tmp:
        corpus.write_text(text, tmp)
    write_json(meta, out_file.with_suffix(out_file.suffix + ".meta.json"))
    return EXIT_OK


def cmd_report(args) -> int:
    cfg = report.AnalysisConfig()
    text = _load(args)
    if args.preprocess:
        text = corpus.preprocess_english(text)
    result = report.analyze(text, cfg)
    payload = {"original": result}
    if args.compare:
        other_raw = corpus.read_text(args.compare)
        if args.preprocess:
            other_raw = corpus.preprocess_english(other_raw)
        other = report.analyze(other_raw, cfg)
        payload["comparison"] = other
        payload["delta"] = report.compare(result, other)
    write_json(payload, Path(args.out) / "report.json")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="textlaws", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, input_required=True):
        sp.add_argument("--input", required=input_required, help="input text file")
        sp.add_argument("--byte", action="store_true", help="read input as raw bytes")
        sp.add_argument("--out", default=".", help="output directory")

    sp = sub.add_parser("preprocess", help="lowercase a-z + single spaces")
    sp.add_argument("--input", required=True)
    sp.add_argument("--byte", action="store_true")
    sp.add_argument("--output", required=True, help="output file")
    sp.add_argument("--rare-symbol-cutoff", type=float, default=None,
                    help="drop symbols with relative frequency below this")
    sp.set_defaults(func=cmd_preprocess)

    sp = sub.add_parser("shuffle", help="character/word/document shuffle")
    sp.add_argument("--input", required=True)
    sp.add_argument("--byte", action="store_true")
    sp.add_argument("--output", required=True)
    sp.add_argument("--level", choices=corpus.SHUFFLE_LEVELS, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--delimiter", default="\n\n", help="document delimiter")
    sp.set_defaults(func=cmd_shuffle)

    sp = sub.add_parser("zipf", help="rank-frequency tables and exponent fits")
    add_common(sp)
    sp.add_argument("--mode", choices=tokens.TOKEN_MODES, default="word")
    sp.add_argument("--n", default="1,2,3,4,5", help="comma-separated n-gram sizes")
    sp.add_argument("--fit-lo", type=float, default=10.0)
    sp.add_argument("--fit-hi", type=float, default=10_000.0)
    sp.add_argument("--bins-per-decade", type=int, default=10)
    sp.set_defaults(func=cmd_zipf)

    sp = sub.add_parser("heaps", help="vocabulary growth and exponent fit")
    add_common(sp)
    sp.add_argument("--fit-lo", type=float, default=100.0)
    sp.add_argument("--fit-hi", type=float, default=None)
    sp.add_argument("--samples-per-decade", type=int, default=20)
    sp.set_defaults(func=cmd_heaps)

    sp = sub.add_parser("mi", help="mutual information over distance")
    add_common(sp)
    sp.add_argument("--mode", choices=tokens.TOKEN_MODES, default="character")
    sp.add_argument("--distances", default=None, help="comma-separated distances")
    sp.add_argument("--compare-lo", type=float, default=1.0)
    sp.add_argument("--compare-hi", type=float, default=None)
    sp.set_defaults(func=cmd_mi)

    sp = sub.add_parser("acf", help="rare-word interval autocorrelation")
    add_common(sp)
    sp.add_argument("--rare-fraction", default="1/16")
    sp.add_argument("--distances", default=None)
    sp.add_argument("--compare-lo", type=float, default=1.0)
    sp.add_argument("--compare-hi", type=float, default=None)
    sp.set_defaults(func=cmd_acf)

    sp = sub.add_parser("encrate", help="encoding-rate decay via a compressor")
    add_common(sp)
    sp.add_argument("--compressor-cmd", default=None,
                    help="command template with {input} and {output}")
    sp.add_argument("--lengths", default=None, help="comma-separated prefix lengths")
    sp.set_defaults(func=cmd_encrate)

    sp = sub.add_parser("generate", help="monkey or Markov pseudo-text")
    sp.add_argument("--generator", choices=("monkey", "markov"), required=True)
    sp.add_argument("--input", default=None, help="training text (markov)")
    sp.add_argument("--byte", action="store_true")
    sp.add_argument("--out", default=".")
    sp.add_argument("--name", default="pseudo.txt", help="output file name")
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--alphabet-size", type=int, default=26)
    sp.add_argument("--space-prob", type=float, default=0.2)
    sp.add_argument("--order", type=int, default=5)
    sp.add_argument("--mode", choices=tokens.TOKEN_MODES, default="character")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("report", help="all laws for one text, or a comparison")
    add_common(sp)
    sp.add_argument("--compare", default=None, help="second text (pseudo-text)")
    sp.add_argument("--no-preprocess", dest="preprocess", action="store_false",
                    help="input is already preprocessed")
    sp.set_defaults(func=cmd_report)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate" and args.generator == "markov" and not args.input:
        print("error: --input required for markov generation", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except FitError as e:
        print(f"fit failure: {e}", file=sys.stderr)
        return EXIT_FIT
    except (EmptyCorpusError, MarkerCollisionError, CompressorError, ValueError, OSError) as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
