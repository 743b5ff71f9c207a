"""Words over a finite alphabet: the ground type for everything else.

A word is an immutable sequence of symbol ids drawn from ``range(k)``
for a declared alphabet size ``k``.  Small alphabets (k <= 26) render
as lowercase letters, larger ones as comma-separated decimal ids, and
both encodings round-trip through the one-words-per-line file format
with an ``alphabet k=<int>`` header.

Besides construction and slicing, this module owns the symmetry
machinery used by the extremal searches: first-occurrence relabelling
(a word's "restricted growth" normal form), reversal, and the
canonical key that is constant on orbits of the combined relabel +
reverse group action.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .errors import ContractError, WordRangeError

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Word:
    """An immutable word; ``symbols`` are ints in ``range(alphabet_size)``."""

    symbols: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise ContractError(f"alphabet_size must be >= 1, got {self.alphabet_size}")
        for s in self.symbols:
            if not (0 <= s < self.alphabet_size):
                raise ContractError(
                    f"symbol {s} out of range for alphabet of size {self.alphabet_size}"
                )

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i: int) -> int:
        return self.symbols[i]

    def __str__(self) -> str:
        return to_text(self)

    def is_empty(self) -> bool:
        return not self.symbols


@dataclass(frozen=True)
class Interval:
    """Closed index interval [lo, hi]; hi == lo - 1 encodes the empty interval."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.hi < self.lo - 1:
            raise ContractError(f"interval [{self.lo}, {self.hi}] has hi < lo - 1")

    def __len__(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class CanonicalKey:
    """Orbit invariant under alphabet relabelling and whole-word reversal.

    Two words get equal keys exactly when one can be turned into the
    other by renaming letters bijectively and/or reversing.  The
    ``from_reversed`` flag records which orientation won the tie-break
    and is deliberately excluded from equality.
    """

    symbols: tuple[int, ...]
    alphabet_size: int
    from_reversed: bool = dataclasses.field(compare=False, default=False)


def word(text: str, alphabet_size: int | None = None) -> Word:
    """Parse a word from text.

    Lowercase letters map to ids a=0 .. z=25; any digit in the input
    switches to comma-separated decimal parsing.  When ``alphabet_size``
    is omitted it is inferred as one past the largest symbol used.
    """
    text = text.strip()
    if text == "":
        syms: tuple[int, ...] = ()
    elif any(c.isdigit() for c in text):
        syms = tuple(int(p) for p in text.split(","))
    else:
        for c in text:
            if c not in _LETTERS:
                raise ContractError(f"cannot parse symbol {c!r}")
        syms = tuple(_LETTERS.index(c) for c in text)
    if alphabet_size is None:
        alphabet_size = max(syms, default=0) + 1
    return Word(syms, alphabet_size)


def from_ids(ids, alphabet_size: int | None = None) -> Word:
    syms = tuple(int(s) for s in ids)
    if alphabet_size is None:
        alphabet_size = max(syms, default=0) + 1
    return Word(syms, alphabet_size)


def to_text(w: Word) -> str:
    """Render a word: letters when the alphabet allows, else decimal CSV."""
    if w.alphabet_size <= 26:
        return "".join(_LETTERS[s] for s in w.symbols)
    return ",".join(str(s) for s in w.symbols)


def subword(w: Word, iv: Interval) -> Word:
    """Contiguous (not scattered) subword on the closed interval ``iv``."""
    if iv.lo < 0 or iv.hi >= len(w) or iv.lo > len(w):
        raise WordRangeError(f"interval [{iv.lo}, {iv.hi}] out of range for |w|={len(w)}")
    return Word(w.symbols[iv.lo : iv.hi + 1], w.alphabet_size)


def concat(w1: Word, w2: Word) -> Word:
    if w1.alphabet_size != w2.alphabet_size:
        raise ContractError(
            f"alphabet mismatch: {w1.alphabet_size} vs {w2.alphabet_size}"
        )
    return Word(w1.symbols + w2.symbols, w1.alphabet_size)


def power(w: Word, m: int) -> Word:
    """m-fold repetition of w; m = 0 gives the empty word."""
    if m < 0:
        raise ContractError(f"power exponent must be >= 0, got {m}")
    return Word(w.symbols * m, w.alphabet_size)


def reverse(w: Word) -> Word:
    return Word(w.symbols[::-1], w.alphabet_size)


def relabel(w: Word, mapping) -> Word:
    """Apply a symbol bijection given as a sequence: new_id = mapping[old_id]."""
    mapping = tuple(mapping)
    if sorted(mapping) != list(range(w.alphabet_size)):
        raise ContractError("mapping must be a permutation of range(alphabet_size)")
    return Word(tuple(mapping[s] for s in w.symbols), w.alphabet_size)


def normalize(w: Word) -> Word:
    """First-occurrence normal form: rename letters in order of first appearance.

    The result is the restricted-growth representative of w's class
    under alphabet relabelling (first symbol becomes 0, each previously
    unseen symbol takes the next free id).
    """
    seen: dict[int, int] = {}
    out = []
    for s in w.symbols:
        if s not in seen:
            seen[s] = len(seen)
        out.append(seen[s])
    return Word(tuple(out), w.alphabet_size)


def canonical_key(w: Word) -> CanonicalKey:
    """Lexicographic minimum over {normalize(w), normalize(reverse(w))}."""
    fwd = normalize(w).symbols
    bwd = normalize(reverse(w)).symbols
    if bwd < fwd:
        return CanonicalKey(bwd, w.alphabet_size, from_reversed=True)
    return CanonicalKey(fwd, w.alphabet_size, from_reversed=False)


def is_subsequence(v: Word, w: Word) -> bool:
    """Two-pointer scattered-subsequence test (no counting)."""
    it = iter(w.symbols)
    return all(s in it for s in v.symbols)


# ---------------------------------------------------------------------------
# word files: one word per line under an "alphabet k=<int>" header


def dump_words(words: list[Word], path: str | Path) -> None:
    if not words:
        raise ContractError("refusing to write an empty word file")
    k = words[0].alphabet_size
    for w in words:
        if w.alphabet_size != k:
            raise ContractError("all words in a file must share one alphabet")
    lines = [f"alphabet k={k}"] + [to_text(w) for w in words]
    Path(path).write_text("\n".join(lines) + "\n")


def load_words(path: str | Path) -> list[Word]:
    raw = Path(path).read_text()
    lines = raw.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline, not an empty word
    if not lines or not lines[0].startswith("alphabet k="):
        raise ContractError(f"{path}: missing 'alphabet k=<int>' header")
    k = int(lines[0].split("=", 1)[1])
    return [word(line, alphabet_size=k) for line in lines[1:]]
