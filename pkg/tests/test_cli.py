"""End-to-end CLI behavior: outputs, determinism, exit codes."""

import json

import numpy as np
import pytest

from textlaws.cli import EXIT_DATA, EXIT_FIT, EXIT_OK, main


def _build_sample() -> str:
    # Zipf-ish sampling over 120 two-letter types: enough ranks past 10 for
    # the default fit windows, plus punctuation and case for the preprocessor
    import itertools
    import string

    rng = np.random.default_rng(2024)
    pairs = itertools.product(string.ascii_lowercase[:11], repeat=2)
    vocab = np.array(["".join(p) for p in pairs][:120])
    probs = 1.0 / np.arange(1, 121)
    probs /= probs.sum()
    words = rng.choice(vocab, size=3000, p=probs)
    chunks = []
    for i in range(0, len(words), 12):
        chunks.append(" ".join(words[i : i + 12]).capitalize() + ".")
    return "\n".join(chunks)


SAMPLE = _build_sample()


@pytest.fixture
def sample_file(tmp_path):
    p = tmp_path / "sample.txt"
    p.write_text(SAMPLE)
    return p


@pytest.fixture
def clean_file(tmp_path, sample_file):
    out = tmp_path / "clean.txt"
    assert main(["preprocess", "--input", str(sample_file), "--output", str(out)]) == EXIT_OK
    return out


class TestPreprocess:
    def test_output_alphabet(self, clean_file):
        text = clean_file.read_text()
        assert set(text) <= set("abcdefghijklmnopqrstuvwxyz ")
        assert "  " not in text

    def test_missing_input(self, tmp_path):
        rc = main(["preprocess", "--input", str(tmp_path / "no.txt"),
                   "--output", str(tmp_path / "o.txt")])
        assert rc == EXIT_DATA


class TestShuffle:
    def test_word_shuffle_writes_permutation(self, tmp_path, clean_file):
        out = tmp_path / "shuf.txt"
        rc = main(["shuffle", "--input", str(clean_file), "--output", str(out),
                   "--level", "word", "--seed", "5"])
        assert rc == EXIT_OK
        assert sorted(out.read_text().split(" ")) == sorted(clean_file.read_text().split(" "))

    def test_document_needs_delimiter(self, tmp_path, clean_file):
        rc = main(["shuffle", "--input", str(clean_file), "--output",
                   str(tmp_path / "x.txt"), "--level", "document", "--seed", "1"])
        assert rc == EXIT_DATA  # preprocessed text has no blank lines


class TestZipfHeaps:
    def test_zipf_outputs(self, tmp_path, clean_file):
        out = tmp_path / "zipf"
        rc = main(["zipf", "--input", str(clean_file), "--out", str(out),
                   "--n", "1,2", "--fit-lo", "1", "--fit-hi", "100"])
        assert rc == EXIT_OK
        assert (out / "rankfreq-1.csv").exists()
        assert (out / "rankfreq-2.csv").exists()
        fits = json.loads((out / "fits.json").read_text())
        assert [f["n"] for f in fits] == [1, 2]

    def test_zipf_deterministic_bytes(self, tmp_path, clean_file):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            main(["zipf", "--input", str(clean_file), "--out", str(out),
                  "--n", "1", "--fit-lo", "1", "--fit-hi", "100"])
            outs.append((out / "rankfreq-1.csv").read_bytes()
                        + (out / "fits.json").read_bytes())
        assert outs[0] == outs[1]

    def test_fit_failure_exit_code(self, tmp_path, clean_file):
        rc = main(["zipf", "--input", str(clean_file), "--out", str(tmp_path / "z"),
                   "--n", "1", "--fit-lo", "90000", "--fit-hi", "99000"])
        assert rc == EXIT_FIT

    def test_heaps_outputs(self, tmp_path, clean_file):
        out = tmp_path / "heaps"
        rc = main(["heaps", "--input", str(clean_file), "--out", str(out), "--fit-lo", "1"])
        assert rc == EXIT_OK
        fit = json.loads((out / "heaps.json").read_text())
        assert 0 < fit["exponent"] <= 1


class TestLongrangeCommands:
    def test_mi_outputs(self, tmp_path, clean_file):
        out = tmp_path / "mi"
        rc = main(["mi", "--input", str(clean_file), "--out", str(out),
                   "--distances", "1,2,4,8,16,32"])
        assert rc == EXIT_OK
        verdict = json.loads((out / "mi_verdict.json").read_text())
        assert verdict["preferred"] in ("power", "exponential", "indeterminate")

    def test_acf_outputs(self, tmp_path, clean_file):
        out = tmp_path / "acf"
        rc = main(["acf", "--input", str(clean_file), "--out", str(out),
                   "--distances", "1,2,4"])
        assert rc == EXIT_OK
        assert (out / "acf.csv").exists()


class TestGenerate:
    def test_monkey_with_sidecar(self, tmp_path):
        out = tmp_path / "gen"
        rc = main(["generate", "--generator", "monkey", "--out", str(out),
                   "--name", "m.txt", "--length", "5000", "--seed", "4"])
        assert rc == EXIT_OK
        assert len((out / "m.txt").read_text()) == 5000
        meta = json.loads((out / "m.txt.meta.json").read_text())
        assert meta["generator"] == "monkey" and meta["seed"] == 4

    def test_markov_requires_input(self, tmp_path):
        rc = main(["generate", "--generator", "markov", "--out", str(tmp_path),
                   "--length", "100"])
        assert rc == 2

    def test_markov_generation(self, tmp_path, clean_file):
        out = tmp_path / "gen"
        rc = main(["generate", "--generator", "markov", "--input", str(clean_file),
                   "--out", str(out), "--name", "mk.txt", "--length", "300",
                   "--order", "2", "--seed", "8"])
        assert rc == EXIT_OK
        text = (out / "mk.txt").read_text()
        assert len(text) == 300
        assert set(text) <= set(clean_file.read_text())


class TestReport:
    def test_self_comparison_has_zero_deltas(self, tmp_path, sample_file):
        out = tmp_path / "rep"
        rc = main(["report", "--input", str(sample_file), "--compare", str(sample_file),
                   "--out", str(out)])
        assert rc == EXIT_OK
        payload = json.loads((out / "report.json").read_text())
        assert payload["delta"]["heaps_exponent_delta"] == 0.0
        assert all(v == 0.0 for v in payload["delta"]["zipf_exponent_delta"].values())
        assert payload["delta"]["checks"]["unigram_zipf_within_0.1"] is True
        assert payload["delta"]["checks"]["mi_verdicts_match"] is True
        prov = payload["original"]["provenance"]
        assert prov["sha256"] == payload["comparison"]["provenance"]["sha256"]

    def test_report_deterministic(self, tmp_path, sample_file):
        blobs = []
        for name in ("r1", "r2"):
            out = tmp_path / name
            assert main(["report", "--input", str(sample_file), "--out", str(out)]) == EXIT_OK
            blobs.append((out / "report.json").read_bytes())
        assert blobs[0] == blobs[1]
