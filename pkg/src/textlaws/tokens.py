"""Tokenization and exact n-gram counting.

Streams are arrays of integer token ids with a vocabulary mapping back to
surface forms. Counting is an exact sliding window (stride 1); tables from
disjoint chunks merge additively, so large corpora can be counted in pieces.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from textlaws.corpus import RawText

TOKEN_MODES = ("character", "word", "byte")

# joiner for word n-gram surfaces in CSV output (U+2420 SYMBOL FOR SPACE)
WORD_JOINER = "␠"


@dataclass(frozen=True)
class TokenStream:
    """A tokenized text: ids into a vocabulary, plus the tokenization mode."""

    ids: np.ndarray
    vocab: tuple[str, ...]
    mode: str

    def __post_init__(self):
        if self.mode not in TOKEN_MODES:
            raise ValueError(f"mode must be one of {TOKEN_MODES}, got {self.mode!r}")
        if len(self.ids) and int(self.ids.max()) >= len(self.vocab):
            raise ValueError("token id out of vocabulary range")

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    def surfaces(self) -> list[str]:
        """Token sequence as surface forms (round-trips the source tokens)."""
        v = np.asarray(self.vocab, dtype=object)
        return list(v[self.ids])

    def to_text(self) -> str:
        joiner = " " if self.mode == "word" else ""
        return joiner.join(self.surfaces())


@dataclass
class NgramCountTable:
    """Exact counts of length-``n`` sliding windows over a stream.

    ``entries`` maps tuples of token ids to counts; ``vocab`` resolves ids
    back to surfaces. ``total_windows`` equals the sum of all counts.
    """

    n: int
    entries: dict[tuple[int, ...], int]
    total_windows: int
    vocab: tuple[str, ...]
    mode: str

    def surface(self, key: tuple[int, ...]) -> str:
        toks = [self.vocab[i] for i in key]
        return WORD_JOINER.join(toks) if self.mode == "word" else "".join(toks)


def tokenize(text: RawText, mode: str) -> TokenStream:
    """Tokenize a text in character, word, or byte mode.

    Character mode yields one token per character (space included); word mode
    splits on spaces, dropping empty words; byte mode yields one token per
    byte. Vocabularies are sorted, so ids are deterministic.
    """
    if mode == "character":
        if text.encoding_mode != "unicode":
            raise ValueError("character mode requires a unicode text")
        codes = np.frombuffer(text.content.encode("utf-32-le"), dtype=np.uint32)
        uniq, ids = np.unique(codes, return_inverse=True)
        vocab = tuple(chr(int(c)) for c in uniq)
    elif mode == "word":
        if text.encoding_mode != "unicode":
            raise ValueError("word mode requires a unicode text")
        words = np.array([w for w in text.content.split(" ") if w], dtype=object)
        if len(words) == 0:
            raise ValueError("no words in text")
        uniq, ids = np.unique(words, return_inverse=True)
        vocab = tuple(str(w) for w in uniq)
    elif mode == "byte":
        if text.encoding_mode != "byte":
            raise ValueError("byte mode requires a byte-mode text")
        arr = np.frombuffer(text.content, dtype=np.uint8)
        uniq, ids = np.unique(arr, return_inverse=True)
        vocab = tuple(chr(int(b)) for b in uniq)
    else:
        raise ValueError(f"mode must be one of {TOKEN_MODES}, got {mode!r}")
    return TokenStream(ids=ids.astype(np.int64), vocab=vocab, mode=mode)


def words_from_chars(stream: TokenStream, delimiter: str = " ") -> TokenStream:
    """Split a character or byte stream on a delimiter into a word stream.

    Empty words (consecutive delimiters) are dropped. For byte-mode texts
    pass the boundary-marker character as ``delimiter``.
    """
    if stream.mode == "word":
        raise ValueError("stream is already word mode")
    text = "".join(stream.surfaces())
    words = np.array([w for w in text.split(delimiter) if w], dtype=object)
    if len(words) == 0:
        raise ValueError("no words after splitting on delimiter")
    uniq, ids = np.unique(words, return_inverse=True)
    return TokenStream(ids=ids.astype(np.int64), vocab=tuple(map(str, uniq)), mode="word")


def count_ngrams(stream: TokenStream, n: int) -> NgramCountTable:
    """Count all length-``n`` sliding windows of a stream, exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    length = len(stream)
    if length < n:
        raise ValueError(f"stream length {length} < n {n}")
    ids = stream.ids
    if n == 1:
        counts = np.bincount(ids, minlength=0)
        nz = np.flatnonzero(counts)
        entries = {(int(i),): int(counts[i]) for i in nz}
    else:
        windows = np.lib.stride_tricks.sliding_window_view(ids, n)
        uniq, counts = np.unique(windows, axis=0, return_counts=True)
        entries = {tuple(map(int, row)): int(c) for row, c in zip(uniq, counts)}
    return NgramCountTable(
        n=n,
        entries=entries,
        total_windows=length - n + 1,
        vocab=stream.vocab,
        mode=stream.mode,
    )


def merge_counts(*tables: NgramCountTable) -> NgramCountTable:
    """Additively merge count tables from chunks of the same stream.

    Chunks must share n, vocabulary, and mode. Windows straddling a chunk
    boundary belong to the chunk they start in; cover them by extending each
    chunk n-1 tokens past its end before counting.
    """
    if not tables:
        raise ValueError("nothing to merge")
    first = tables[0]
    merged: dict[tuple[int, ...], int] = dict(first.entries)
    total = first.total_windows
    for t in tables[1:]:
        if t.n != first.n or t.vocab != first.vocab or t.mode != first.mode:
            raise ValueError("tables disagree on n, vocabulary, or mode")
        for k, v in t.entries.items():
            merged[k] = merged.get(k, 0) + v
        total += t.total_windows
    return NgramCountTable(
        n=first.n, entries=merged, total_windows=total, vocab=first.vocab, mode=first.mode
    )


def write_counts_csv(table: NgramCountTable, path: str | Path) -> None:
    """Write (ngram, count) rows; word n-grams join tokens with U+2420."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["ngram", "count"])
        for key in sorted(table.entries):
            w.writerow([table.surface(key), table.entries[key]])
