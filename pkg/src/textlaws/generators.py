"""Baseline pseudo-text generators: monkey typing and character Markov models.

Monkey typing hits one of n characters or the space bar i.i.d.; its
rank-probability law has a closed form (a stepwise power law), implemented
here alongside the sampler so measured curves can be checked against theory.
The Markov generator reproduces n-gram statistics up to its order but carries
no long memory, which is exactly the contrast the correlation measures need.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from textlaws.corpus import RawText
from textlaws.tokens import TokenStream

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class MonkeySpec:
    """I.i.d. typing over ``alphabet_size`` letters plus space.

    Space has probability ``space_prob``; each letter has probability
    (1 - space_prob) / alphabet_size.
    """

    alphabet_size: int = 26
    space_prob: float = 0.2
    rng_seed: int = 0
    length: int = 1_000_000

    def __post_init__(self):
        if not 1 <= self.alphabet_size <= len(_LETTERS):
            raise ValueError(f"alphabet_size must be in 1..{len(_LETTERS)}")
        if not 0.0 < self.space_prob < 1.0:
            raise ValueError("space_prob must be in (0, 1)")
        if self.length < 1:
            raise ValueError("length must be >= 1")


def monkey_generate(spec: MonkeySpec) -> RawText:
    """Sample a monkey-typed text; deterministic for a given spec."""
    rng = np.random.default_rng(spec.rng_seed)
    n = spec.alphabet_size
    probs = np.full(n + 1, (1.0 - spec.space_prob) / n)
    probs[n] = spec.space_prob
    symbols = rng.choice(n + 1, size=spec.length, p=probs)
    lut = np.frombuffer((_LETTERS[:n] + " ").encode("ascii"), dtype=np.uint8)
    content = lut[symbols].tobytes().decode("ascii")
    return RawText(
        content,
        source_id=f"monkey-n{n}-q{spec.space_prob}-seed{spec.rng_seed}",
    )


@dataclass(frozen=True)
class AnalyticMonkeyLaw:
    """Closed-form rank-probability law of monkey typing.

    Words of length c each occur with probability q((1-q)/n)^c and occupy
    the rank bracket [S(c-1)+1, S(c)] with S(c) the total number of words of
    length at most c. Substituting rank for length gives the power form
    P(r) = q * r^(log_n(1-q) - 1), exact at r = n^c.
    """

    alphabet_size: int
    space_prob: float

    def word_probability(self, c: int) -> float:
        """Probability of one specific word of length ``c`` (c = 0: empty word)."""
        if c < 0:
            raise ValueError("word length must be >= 0")
        q, n = self.space_prob, self.alphabet_size
        return q * ((1.0 - q) / n) ** c

    def cumulative_words(self, c: int) -> int:
        """S(c): number of distinct non-empty words of length <= c. Exact."""
        if c < 0:
            raise ValueError("length must be >= 0")
        n = self.alphabet_size
        if n == 1:
            return c
        return n * (n**c - 1) // (n - 1)

    def rank_bracket(self, c: int) -> tuple[int, int]:
        """Rank interval [S(c-1)+1, S(c)] occupied by words of length ``c``."""
        if c < 1:
            raise ValueError("bracket is defined for word length >= 1")
        return self.cumulative_words(c - 1) + 1, self.cumulative_words(c)

    def probability(self, rank: int | float) -> float:
        """The closed-form P(rank); needs alphabet_size >= 2 (log base n)."""
        q, n = self.space_prob, self.alphabet_size
        if n < 2:
            raise ValueError(
                "closed form needs alphabet_size >= 2; use word_probability instead"
            )
        if rank < 1:
            raise ValueError("rank must be >= 1")
        exponent = math.log(1.0 - q, n) - 1.0
        return q * float(rank) ** exponent


class MarkovModel:
    """Order-k model with exact sliding-window context counts.

    Windows of length k+1 are stored sorted (packed big-endian rows), so a
    context's continuation distribution is one binary-search away. Lower
    backoff orders are built lazily the first time an unseen context forces
    a shorter context.
    """

    def __init__(self, ids: np.ndarray, vocab: tuple[str, ...], mode: str, k: int):
        self.k = k
        self.vocab = vocab
        self.mode = mode
        self._ids = ids
        self._tables: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
        self._table(k)  # build the top order eagerly

    def _table(self, order: int):
        if order not in self._tables:
            width = order + 1
            windows = np.lib.stride_tricks.sliding_window_view(self._ids, width)
            uniq, counts = np.unique(windows, axis=0, return_counts=True)
            packed = np.ascontiguousarray(uniq.astype(">i4")).view(f"V{4 * width}").ravel()
            self._tables[order] = (packed, uniq[:, -1].astype(np.int64), counts)
        return self._tables[order]

    def _lookup(self, context: tuple[int, ...], order: int):
        packed, next_ids, counts = self._table(order)
        width = order + 1
        ctx = list(context[len(context) - order :])
        qlo = np.array(ctx + [0], dtype=">i4").view(f"V{4 * width}").ravel()[0]
        qhi = np.array(ctx + [len(self.vocab)], dtype=">i4").view(f"V{4 * width}").ravel()[0]
        lo = int(np.searchsorted(packed, qlo, side="left"))
        hi = int(np.searchsorted(packed, qhi, side="left"))
        return next_ids[lo:hi], counts[lo:hi]

    def continuations(self, context: tuple[int, ...]) -> dict[int, int]:
        """Empirical next-token counts after ``context`` (len(context) == k)."""
        if len(context) != self.k:
            raise ValueError(f"context must have length {self.k}")
        nid, cnt = self._lookup(context, self.k)
        return {int(t): int(c) for t, c in zip(nid, cnt)}

    def sample_next(self, context: tuple[int, ...], rng: np.random.Generator) -> int:
        """Sample the next token, backing off to shorter contexts when unseen."""
        for order in range(self.k, -1, -1):
            nid, cnt = self._lookup(context, order)
            if len(nid):
                cum = np.cumsum(cnt)
                target = rng.random() * cum[-1]
                return int(nid[np.searchsorted(cum, target, side="right")])
        raise RuntimeError("empty model")  # unreachable: order 0 sees every token


def markov_train(stream: TokenStream, k: int) -> MarkovModel:
    """Count all (context, next) transitions of order ``k`` in a stream."""
    if k < 0:
        raise ValueError("order must be >= 0")
    if len(stream) <= k:
        raise ValueError(f"stream length {len(stream)} too short for order {k}")
    return MarkovModel(ids=stream.ids, vocab=stream.vocab, mode=stream.mode, k=k)


def markov_generate(
    model: MarkovModel,
    length: int,
    rng_seed: int = 0,
    seed_context: str | tuple[int, ...] | None = None,
) -> RawText:
    """Generate a pseudo-text by repeated conditional sampling.

    The seed context (k tokens) must exist in the training data; by default
    one is drawn from the training stream at a seeded random position.
    Deterministic for fixed (model, length, rng_seed, seed_context).
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    rng = np.random.default_rng(rng_seed)
    k = model.k

    if seed_context is None:
        pos = int(rng.integers(0, len(model._ids) - k)) if k else 0
        context = tuple(int(i) for i in model._ids[pos : pos + k])
    else:
        if isinstance(seed_context, str):
            index = {s: i for i, s in enumerate(model.vocab)}
            toks = seed_context.split(" ") if model.mode == "word" else list(seed_context)
            try:
                context = tuple(index[t] for t in toks)
            except KeyError as e:
                raise ValueError(f"seed context token {e.args[0]!r} not in vocabulary")
        else:
            context = tuple(int(i) for i in seed_context)
        if len(context) != k:
            raise ValueError(f"seed context must have exactly {k} tokens")
        if k and not model.continuations(context):
            raise ValueError("seed context does not occur in the training data")

    out = np.empty(length, dtype=np.int64)
    for i in range(length):
        nxt = model.sample_next(context, rng)
        out[i] = nxt
        if k:
            context = context[1:] + (nxt,)

    vocab_arr = np.asarray(model.vocab, dtype=object)
    joiner = " " if model.mode == "word" else ""
    content = joiner.join(vocab_arr[out])
    if model.mode == "byte":
        return RawText(content.encode("latin-1"), source_id="markov")
    return RawText(content, source_id=f"markov-k{k}-seed{rng_seed}")


def sidecar_metadata(generator: str, params: dict, seed: int, length: int, **extra) -> dict:
    """Sidecar JSON describing a generated text, shared by all generators."""
    meta = {"generator": generator, "params": params, "seed": seed, "length": length}
    meta.update(extra)
    return meta


def write_sidecar(meta: dict, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
