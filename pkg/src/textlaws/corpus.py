"""Text ingestion, preprocessing recipes, and shuffled control texts.

English texts are reduced to a 27-symbol alphabet (a-z plus space); Chinese
or other large-alphabet sources are handled as raw bytes with caller-supplied
word boundaries. Shuffling produces character-, word-, and document-level
controls that preserve the corresponding multisets exactly.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SHUFFLE_LEVELS = ("character", "word", "document")


class EmptyCorpusError(ValueError):
    """Raised when a text is empty, or becomes empty after preprocessing."""


class MarkerCollisionError(ValueError):
    """Raised when a requested boundary marker already occurs in the source."""


@dataclass(frozen=True)
class RawText:
    """A text plus its provenance label.

    ``content`` is a ``str`` for unicode-mode texts and ``bytes`` for
    byte-mode texts (the exact byte sequence of the source file).
    """

    content: str | bytes
    source_id: str = ""

    def __post_init__(self):
        if len(self.content) == 0:
            raise EmptyCorpusError(f"empty text (source_id={self.source_id!r})")

    @property
    def encoding_mode(self) -> str:
        return "byte" if isinstance(self.content, bytes) else "unicode"

    def __len__(self) -> int:
        return len(self.content)


@dataclass(frozen=True)
class ShuffleSpec:
    """How to shuffle a text: at which level, and with which seed.

    The seed fully determines the permutation. Document mode splits on
    ``document_delimiter`` (default: blank line), shuffles the blocks, and
    rejoins them with the same delimiter.
    """

    level: str
    rng_seed: int = 0
    document_delimiter: str = "\n\n"

    def __post_init__(self):
        if self.level not in SHUFFLE_LEVELS:
            raise ValueError(f"level must be one of {SHUFFLE_LEVELS}, got {self.level!r}")


def read_text(path: str | Path, byte_mode: bool = False) -> RawText:
    """Load a file as a RawText (UTF-8 in unicode mode, raw bytes otherwise)."""
    p = Path(path)
    if byte_mode:
        return RawText(p.read_bytes(), source_id=str(p))
    return RawText(p.read_text(encoding="utf-8"), source_id=str(p))


def write_text(text: RawText, path: str | Path) -> None:
    p = Path(path)
    if text.encoding_mode == "byte":
        p.write_bytes(text.content)
    else:
        p.write_text(text.content, encoding="utf-8")


_NON_ALPHA = re.compile(r"[^a-z ]+")
_MULTISPACE = re.compile(r" {2,}")


def preprocess_english(text: RawText) -> RawText:
    """Reduce an English text to lowercase a-z and single spaces.

    All alphabetical characters are lowercased, every other character except
    the space is removed, and runs of spaces collapse to one. Whitespace
    (newlines, tabs) is treated as a space first so that line breaks keep
    separating words. Idempotent.
    """
    if text.encoding_mode != "unicode":
        raise ValueError("preprocess_english requires a unicode-mode text")
    s = re.sub(r"\s", " ", text.content.lower())
    s = _NON_ALPHA.sub("", s)
    s = _MULTISPACE.sub(" ", s).strip()
    if not s:
        raise EmptyCorpusError(f"nothing left after preprocessing {text.source_id!r}")
    return RawText(s, source_id=text.source_id)


def filter_rare_symbols(text: RawText, min_relative_frequency: float = 1e-5) -> RawText:
    """Drop characters whose relative frequency falls below a cutoff.

    Used for sources with a long tail of stray symbols (e.g. wiki markup
    dumps) where the analysis alphabet should exclude rare symbols.
    """
    if text.encoding_mode != "unicode":
        raise ValueError("filter_rare_symbols requires a unicode-mode text")
    counts = Counter(text.content)
    total = len(text.content)
    keep = {c for c, k in counts.items() if k / total >= min_relative_frequency}
    s = "".join(c for c in text.content if c in keep)
    if not s:
        raise EmptyCorpusError(f"nothing left after symbol filtering {text.source_id!r}")
    return RawText(s, source_id=text.source_id)


def preprocess_byte_level(
    text: RawText, boundary_marker: int, split_offsets=()
) -> RawText:
    """Insert a word-boundary marker byte at caller-supplied split offsets.

    The toolkit performs no segmentation of its own: ``split_offsets`` comes
    from whatever segmenter the caller trusts. Splitting the output on the
    marker recovers word-level statistics from a byte-level text.
    """
    if text.encoding_mode != "byte":
        raise ValueError("preprocess_byte_level requires a byte-mode text")
    if not 0 <= boundary_marker <= 255:
        raise ValueError("boundary_marker must be a byte value (0..255)")
    data = text.content
    if bytes([boundary_marker]) in data:
        raise MarkerCollisionError(
            f"marker byte 0x{boundary_marker:02x} occurs in the source; choose another"
        )
    offsets = sorted(set(int(o) for o in split_offsets))
    if offsets and not (0 <= offsets[0] and offsets[-1] <= len(data)):
        raise ValueError("split offsets out of range")
    if not offsets:
        return RawText(data, source_id=text.source_id)
    marker = bytes([boundary_marker])
    pieces = []
    prev = 0
    for off in offsets:
        pieces.append(data[prev:off])
        prev = off
    pieces.append(data[prev:])
    return RawText(marker.join(pieces), source_id=text.source_id)


def shuffle(text: RawText, spec: ShuffleSpec) -> RawText:
    """Permute a text at character, word, or document level, seeded.

    Character mode permutes single characters (bytes in byte mode), word mode
    permutes space-delimited words, document mode permutes delimiter-separated
    blocks leaving each block's interior intact. The multiset at the chosen
    level is preserved exactly.
    """
    rng = np.random.default_rng(spec.rng_seed)
    content = text.content
    is_bytes = text.encoding_mode == "byte"

    if spec.level == "character":
        if is_bytes:
            arr = np.frombuffer(content, dtype=np.uint8)
            out = arr[rng.permutation(len(arr))].tobytes()
        else:
            arr = np.frombuffer(content.encode("utf-32-le"), dtype=np.uint32)
            out = arr[rng.permutation(len(arr))].tobytes().decode("utf-32-le")
        return RawText(out, source_id=text.source_id)

    if spec.level == "word":
        sep = b" " if is_bytes else " "
        words = content.split(sep)
        order = rng.permutation(len(words))
        return RawText(sep.join(words[i] for i in order), source_id=text.source_id)

    # document level
    delim = spec.document_delimiter.encode() if is_bytes else spec.document_delimiter
    blocks = content.split(delim)
    if len(blocks) < 2:
        raise ValueError(
            f"document delimiter {spec.document_delimiter!r} not found in text"
        )
    order = rng.permutation(len(blocks))
    return RawText(delim.join(blocks[i] for i in order), source_id=text.source_id)
