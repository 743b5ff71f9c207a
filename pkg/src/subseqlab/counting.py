"""Counting scattered-subsequence occurrences, and maximising them.

``count_occurrences(v, w)`` is the number of strictly increasing
position maps that embed ``v`` into ``w``.  On top of that single DP
sit the maximisers: the most frequent pattern of a given length, the
most frequent pattern overall, and the sum of the per-length maxima.
All counts are plain Python ints, so they are exact at any magnitude.

The maximisers run a depth-first search over *prefix-count states*:
the vector ``c`` with ``c[j]`` = number of embeddings of the current
pattern prefix into ``w[:j]``.  Appending a symbol transforms the
state linearly and monotonically, which yields two sound prunings:

* pointwise dominance -- a state that is <= an already-visited state
  of the same depth can be dropped (any extension would do at least
  as well from the earlier state, with a lexicographically smaller
  pattern);
* capacity bounds -- the count after appending any suffix is
  ``sum_j (c[j]-c[j-1]) * (best count achievable inside w[j:])``,
  so precomputed suffix capacities give an upper bound for cutoff.

Witness tie-breaks are always "lexicographically smallest pattern
among the maximisers", which the DFS order delivers for free.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from math import comb

from .errors import ContractError
from .words import Word

_DOMINANCE_STORE_CAP = 512  # per-depth cap on states kept for dominance tests


def _check_shared_alphabet(v: Word, w: Word) -> None:
    if v.alphabet_size != w.alphabet_size:
        raise ContractError(
            f"alphabet mismatch: {v.alphabet_size} vs {w.alphabet_size}"
        )


def count_occurrences(v: Word, w: Word) -> int:
    """Number of occurrences of v in w as a scattered subsequence.

    Classic prefix DP, O(|v| * |w|) additions; the empty pattern
    occurs exactly once in every word.
    """
    _check_shared_alphabet(v, w)
    m = len(v)
    c = [0] * (m + 1)
    c[0] = 1
    # touch only the v-positions matching each w-symbol, high to low
    by_sym: dict[int, list[int]] = {}
    for j, s in enumerate(v.symbols, start=1):
        by_sym.setdefault(s, []).append(j)
    for positions in by_sym.values():
        positions.reverse()
    empty: tuple[int, ...] = ()
    for s in w.symbols:
        for j in by_sym.get(s, empty):
            c[j] += c[j - 1]
    return c[m]


@dataclass(frozen=True)
class EmbeddingMap:
    """One occurrence: strictly increasing positions, one per pattern symbol."""

    positions: tuple[int, ...]
    source_length: int

    def __post_init__(self) -> None:
        if len(self.positions) != self.source_length:
            raise ContractError("positions/source_length mismatch")
        if any(a >= b for a, b in zip(self.positions, self.positions[1:])):
            raise ContractError("positions must be strictly increasing")


def validate_embedding(v: Word, w: Word, f: EmbeddingMap) -> None:
    """Raise ContractError unless f really embeds v into w."""
    if f.source_length != len(v):
        raise ContractError("embedding length does not match pattern length")
    for j, p in zip(v.symbols, f.positions):
        if not (0 <= p < len(w)):
            raise ContractError(f"position {p} out of range")
        if w.symbols[p] != j:
            raise ContractError(f"symbol mismatch at position {p}")


@dataclass
class EmbeddingEnumeration:
    maps: list[EmbeddingMap]
    truncated: bool

    def __iter__(self):
        return iter(self.maps)

    def __len__(self) -> int:
        return len(self.maps)


def enumerate_embeddings(v: Word, w: Word, cap: int | None = None) -> EmbeddingEnumeration:
    """All embeddings of v into w in lexicographic order of position tuples.

    With ``cap`` set, at most that many maps are returned and
    ``truncated`` reports whether more exist.
    """
    _check_shared_alphabet(v, w)
    if cap is not None and cap < 0:
        raise ContractError(f"cap must be >= 0, got {cap}")
    m = len(v)
    want = None if cap is None else cap + 1  # one extra to detect truncation
    out: list[EmbeddingMap] = []
    if m == 0:
        out.append(EmbeddingMap((), 0))
    else:
        occ: dict[int, list[int]] = {s: [] for s in set(v.symbols)}
        for p, s in enumerate(w.symbols):
            if s in occ:
                occ[s].append(p)
        # rightmost viable position per pattern index: choosing beyond it
        # strands the suffix, so the search never walks into dead subtrees
        limit = [0] * m
        horizon = len(w.symbols)
        feasible = True
        for i in range(m - 1, -1, -1):
            positions = occ[v.symbols[i]]
            t = bisect_left(positions, horizon) - 1
            if t < 0:
                feasible = False
                break
            limit[i] = horizon = positions[t]
        cur = [0] * m

        def rec(i: int, start: int) -> None:
            if want is not None and len(out) >= want:
                return
            positions = occ[v.symbols[i]]
            hi = limit[i]
            for t in range(bisect_left(positions, start), len(positions)):
                p = positions[t]
                if p > hi:
                    break
                cur[i] = p
                if i + 1 == m:
                    out.append(EmbeddingMap(tuple(cur), m))
                    if want is not None and len(out) >= want:
                        return
                else:
                    rec(i + 1, p + 1)
                    if want is not None and len(out) >= want:
                        return

        if feasible:
            rec(0, 0)
    truncated = cap is not None and len(out) > cap
    if truncated:
        out.pop()
    return EmbeddingEnumeration(out, truncated)


@dataclass(frozen=True)
class PrefixCountState:
    """c[j] = embeddings of the current pattern prefix into w[:j].

    For a real prefix the counts are nondecreasing in j and c[0] is 1
    for the empty prefix, 0 otherwise.
    """

    counts: tuple[int, ...]

    @classmethod
    def initial(cls, w_length: int) -> "PrefixCountState":
        return cls((1,) * (w_length + 1))

    def extend(self, w: Word, symbol: int) -> "PrefixCountState":
        c = self.counts
        out = [0] * len(c)
        syms = w.symbols
        for j in range(1, len(c)):
            out[j] = out[j - 1] + (c[j - 1] if syms[j - 1] == symbol else 0)
        return PrefixCountState(tuple(out))

    def dominates(self, other: "PrefixCountState") -> bool:
        return all(a >= b for a, b in zip(self.counts, other.counts))

    def value(self) -> int:
        return self.counts[-1]


# ---------------------------------------------------------------------------
# branch-and-bound maximisers


def _extend_counts(c: list[int], syms: tuple[int, ...], base: int, symbol: int) -> list[int]:
    # raw-list version of PrefixCountState.extend for the hot loops;
    # c[d] refers to the boundary after syms[base + d - 1]
    out = [0] * len(c)
    acc = 0
    for d in range(1, len(c)):
        if syms[base + d - 1] == symbol:
            acc += c[d - 1]
        out[d] = acc
    return out


def _dominated(stored: list[list[int]], cand: list[int]) -> bool:
    for s in stored:
        ok = True
        for a, b in zip(s, cand):
            if a < b:
                ok = False
                break
        if ok:
            return True
    return False


def _max_count_in_suffix(syms: tuple[int, ...], k: int, start: int, capacities: list[int]) -> int:
    """Best count of any pattern inside syms[start:], given capacities[j] for j > start."""
    n = len(syms)
    length = n - start
    best = 1  # the empty pattern
    root = [1] * (length + 1)
    by_depth: list[list[list[int]]] = [[] for _ in range(length + 1)]

    def rec(c: list[int], depth: int) -> None:
        nonlocal best
        for symbol in range(k):
            nc = _extend_counts(c, syms, start, symbol)
            v = nc[-1]
            if v > best:
                best = v
            # capacity bound over all nonempty continuations (and stopping here)
            bound = 0
            prev = 0
            for d in range(1, length + 1):
                cd = nc[d]
                if cd != prev:
                    bound += (cd - prev) * capacities[start + d]
                    prev = cd
            if bound <= best:
                continue
            store = by_depth[depth + 1]
            if _dominated(store, nc):
                continue
            if len(store) < _DOMINANCE_STORE_CAP:
                store.append(nc)
            rec(nc, depth + 1)

    if length > 0:
        rec(root, 0)
    return best


def _suffix_capacities(w: Word) -> list[int]:
    """capacities[j] = max over all patterns of their count inside w[j:]."""
    n = len(w)
    capacities = [1] * (n + 1)
    for start in range(n - 1, 0, -1):
        capacities[start] = _max_count_in_suffix(w.symbols, w.alphabet_size, start, capacities)
    return capacities


def _search_most_common(
    w: Word, abort_at: int | None = None
) -> tuple[int, tuple[int, ...] | None, bool]:
    """Core search for max_occurrences.

    Returns (value, witness symbols, aborted).  With ``abort_at`` set
    the search stops as soon as it proves value >= abort_at (witness
    is then None and the returned value is just the proof threshold).
    """
    n = len(w)
    if n == 0:
        return 1, (), False
    if abort_at is not None and abort_at <= 1:
        return 1, None, True
    syms = w.symbols
    k = w.alphabet_size
    capacities = _suffix_capacities(w)
    best = 1
    best_witness: tuple[int, ...] = ()
    by_depth: list[list[list[int]]] = [[] for _ in range(n + 1)]
    prefix: list[int] = []
    aborted = False

    def rec(c: list[int], depth: int) -> None:
        nonlocal best, best_witness, aborted
        for symbol in range(k):
            if aborted:
                return
            nc = _extend_counts(c, syms, 0, symbol)
            v = nc[-1]
            prefix.append(symbol)
            if v > best:
                best = v
                best_witness = tuple(prefix)
                if abort_at is not None and best >= abort_at:
                    aborted = True
                    prefix.pop()
                    return
            bound = 0
            prev = 0
            for d in range(1, n + 1):
                cd = nc[d]
                if cd != prev:
                    bound += (cd - prev) * capacities[d]
                    prev = cd
            if bound > best:
                store = by_depth[depth + 1]
                if not _dominated(store, nc):
                    if len(store) < _DOMINANCE_STORE_CAP:
                        store.append(nc)
                    rec(nc, depth + 1)
            prefix.pop()

    rec([1] * (n + 1), 0)
    if aborted:
        return best, None, True
    return best, best_witness, False


def max_occurrences(w: Word) -> tuple[int, Word]:
    """Most frequent scattered subsequence of w: (count, witness).

    The witness is the lexicographically smallest pattern among the
    maximisers (which is the empty pattern whenever no pattern occurs
    more than once).
    """
    value, witness, _ = _search_most_common(w)
    assert witness is not None
    return value, Word(witness, w.alphabet_size)


def max_occurrences_of_length(w: Word, length: int) -> tuple[int, Word]:
    """Most frequent pattern of exactly the given length: (count, witness)."""
    if length < 0:
        raise ContractError(f"length must be >= 0, got {length}")
    n = len(w)
    k = w.alphabet_size
    if length == 0:
        return 1, Word((), k)
    if length > n:
        return 0, Word((0,) * length, k)
    syms = w.symbols
    best = 0
    best_witness = (0,) * length
    by_depth: list[list[list[int]]] = [[] for _ in range(length + 1)]
    prefix: list[int] = []

    def rec(c: list[int], depth: int) -> None:
        nonlocal best, best_witness
        remaining = length - depth - 1
        for symbol in range(k):
            nc = _extend_counts(c, syms, 0, symbol)
            prefix.append(symbol)
            if remaining == 0:
                v = nc[-1]
                if v > best:
                    best = v
                    best_witness = tuple(prefix)
            else:
                # binomial capacity: a pattern of r symbols fits into a
                # window of length L at most C(L, r) ways
                bound = 0
                prev = 0
                for d in range(1, n + 1):
                    cd = nc[d]
                    if cd != prev:
                        bound += (cd - prev) * comb(n - d, remaining)
                        prev = cd
                if bound > best:
                    store = by_depth[depth + 1]
                    if not _dominated(store, nc):
                        if len(store) < _DOMINANCE_STORE_CAP:
                            store.append(nc)
                        rec(nc, depth + 1)
            prefix.pop()

    rec([1] * (n + 1), 0)
    return best, Word(best_witness, k)


def occurrence_profile(w: Word) -> list[tuple[int, Word]]:
    """(count, witness) of the most frequent pattern for every length 0..|w|."""
    return [max_occurrences_of_length(w, length) for length in range(len(w) + 1)]


def sum_over_lengths(w: Word) -> int:
    """Sum over all lengths of the per-length maximum occurrence counts."""
    return sum(value for value, _ in occurrence_profile(w))
