"""Signed-lexicographic permutation words over tuple alphabets.

A length-r vector of signs turns [t]^r into a totally ordered set: flip
each coordinate marked "-" and compare tuples lexicographically.
Listing all of [t]^r in that order gives a permutation word; cycling
through a fixed family of eight sign vectors and concatenating the
resulting permutations gives long words whose most-common-subsequence
count stays provably small.

This module builds those objects and brute-force checks the finite
combinatorial facts the analysis leans on: agreement patterns among the
eight sign vectors, the exact LCS value t^|J| for a family of
signed-lex permutations agreeing on the coordinate set J, and the
pairwise/triple/prefix-class LCS bounds for the concatenated blocks.
Every check returns a report of per-property results rather than
raising, so callers can surface which instance failed and by how much.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetError, ContractError
from .lcs import lcs2, lcs3, multi_lcs
from .words import Word

SignVector = tuple[int, ...]

PERMUTATION_BUDGET = 10**6
CONSTRUCTION_BUDGET = 4 * 10**6
TRIPLE_WORK_BUDGET = 10**7

_BASE_SIGNS: tuple[SignVector, ...] = (
    (+1, +1, +1, +1, +1, +1, +1, +1),
    (-1, -1, -1, +1, -1, +1, -1, -1),
    (+1, +1, +1, -1, -1, -1, -1, +1),
    (-1, +1, -1, -1, +1, +1, +1, -1),
    (+1, -1, -1, +1, -1, -1, +1, +1),
    (-1, +1, +1, +1, +1, -1, -1, -1),
    (+1, -1, -1, -1, +1, +1, -1, +1),
    (-1, -1, +1, -1, -1, -1, +1, -1),
)


def base_sign_vectors() -> tuple[SignVector, ...]:
    """The eight length-8 sign vectors driving the block construction."""
    return _BASE_SIGNS


def sign_vector_at(i: int, vectors: tuple[SignVector, ...] | None = None) -> SignVector:
    """Periodic block index (1-based) -> sign vector; i=8 maps to the
    eighth vector, i=9 back to the first."""
    if i < 1:
        raise ContractError(f"block index must be >= 1, got {i}")
    vs = _BASE_SIGNS if vectors is None else tuple(vectors)
    return vs[(i - 1) % len(vs)]


def parse_signs(text: str) -> SignVector:
    out = []
    for ch in text:
        if ch == "+":
            out.append(+1)
        elif ch == "-":
            out.append(-1)
        else:
            raise ContractError(f"sign vectors use only '+' and '-', got {ch!r}")
    return tuple(out)


def signs_to_text(u: SignVector) -> str:
    return "".join("+" if s > 0 else "-" for s in u)


def _check_sign_vector(u: SignVector) -> None:
    if not u or any(s not in (1, -1) for s in u):
        raise ContractError("a sign vector is a nonempty tuple over {+1, -1}")


class TupleAlphabet:
    """[t]^r packed into integer symbol ids, coordinate 1 most significant.

    id = sum (c_i - 1) * t^(r-i), so the all-plus signed-lex order of
    tuples coincides with ascending id order.
    """

    def __init__(self, t: int, r: int = 8):
        if t < 1 or r < 1:
            raise ContractError(f"need t >= 1 and r >= 1, got t={t}, r={r}")
        self.t = t
        self.r = r
        self.size = t**r

    def coords(self, symbol: int) -> tuple[int, ...]:
        if not 0 <= symbol < self.size:
            raise ContractError(f"symbol {symbol} outside [0, {self.size})")
        out = []
        for _ in range(self.r):
            symbol, digit = divmod(symbol, self.t)
            out.append(digit + 1)
        return tuple(reversed(out))

    def id_of(self, coords: tuple[int, ...]) -> int:
        if len(coords) != self.r:
            raise ContractError(f"expected {self.r} coordinates, got {len(coords)}")
        out = 0
        for c in coords:
            if not 1 <= c <= self.t:
                raise ContractError(f"coordinate {c} outside [1, {self.t}]")
            out = out * self.t + (c - 1)
        return out

    def prefix_class(self, symbol: int, x: int) -> int:
        """Packed value of the first x coordinates (0 <= x <= r)."""
        if not 0 <= x <= self.r:
            raise ContractError(f"prefix length {x} outside [0, {self.r}]")
        return symbol // self.t ** (self.r - x)


def signed_key(u: SignVector, coords: tuple[int, ...]) -> tuple[int, ...]:
    """Coordinatewise product; lexicographic comparison of these keys
    defines the signed order."""
    if len(u) != len(coords):
        raise ContractError(
            f"sign vector has {len(u)} coordinates, symbol has {len(coords)}"
        )
    return tuple(s * c for s, c in zip(u, coords))


def build_permutation(
    u: SignVector, t: int, max_symbols: int = PERMUTATION_BUDGET
) -> Word:
    """The permutation word listing all of [t]^r in signed-lex order."""
    _check_sign_vector(u)
    if t < 2:
        raise ContractError(f"need t >= 2, got {t}")
    alphabet = TupleAlphabet(t, len(u))
    if alphabet.size > max_symbols:
        raise BudgetError(
            f"permutation over [{t}]^{len(u)} has {alphabet.size} symbols, "
            f"over the budget of {max_symbols}"
        )
    order = sorted(range(alphabet.size), key=lambda s: signed_key(u, alphabet.coords(s)))
    return Word(tuple(order), alphabet.size)


def agreement_set(vectors) -> frozenset[int]:
    """1-based coordinates where every vector in the family agrees."""
    vs = list(vectors)
    if not vs:
        raise ContractError("agreement set of an empty family is undefined")
    length = len(vs[0])
    if any(len(v) != length for v in vs):
        raise ContractError("sign vectors must share one length")
    first = vs[0]
    return frozenset(
        j + 1 for j in range(length) if all(v[j] == first[j] for v in vs)
    )


@dataclass(frozen=True)
class PropertyResult:
    name: str
    ok: bool
    checked: bool
    worst: int | None
    failures: tuple
    note: str = ""


@dataclass(frozen=True)
class PropertyReport:
    results: tuple[PropertyResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results if r.checked)

    def result(self, name: str) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _agree_count(a: SignVector, b: SignVector) -> int:
    return sum(1 for x, y in zip(a, b) if x == y)


def verify_sign_properties(vectors) -> PropertyReport:
    """Brute-force check of the eight agreement facts the analysis needs
    from a period-8 family of length-8 sign vectors.

    Index-based facts quantify over the periodic sequence, so sweeping
    one period of start indices covers every instance; value-based
    facts quantify over distinct vectors of the family.
    """
    vs = tuple(tuple(v) for v in vectors)
    if len(vs) != 8 or any(len(v) != 8 for v in vs):
        raise ContractError("expected eight sign vectors of length 8")
    for v in vs:
        _check_sign_vector(v)

    def at(i):  # 1-based periodic
        return vs[(i - 1) % 8]

    results = []

    def record(name, cap, instances, note=""):
        # instances: iterable of (label, value); ok iff every value <= cap
        worst = None
        failures = []
        for label, value in instances:
            if worst is None or value > worst:
                worst = value
            if value > cap:
                failures.append((label, value))
        results.append(
            PropertyResult(name, not failures, True, worst, tuple(failures[:8]), note)
        )

    record(
        "adjacent-pairs-agree-le2",
        2,
        ((i, len(agreement_set([at(i), at(i + 1)]))) for i in range(1, 9)),
    )
    record(
        "distinct-pairs-agree-le4",
        4,
        (
            ((i, j), _agree_count(vs[i], vs[j]))
            for i, j in combinations(range(8), 2)
            if vs[i] != vs[j]
        ),
    )
    record(
        "consecutive-triples-agree-nowhere",
        0,
        ((i, len(agreement_set([at(i), at(i + 1), at(i + 2)]))) for i in range(1, 9)),
    )
    record(
        "adjacent-plus-outsider-agree-le1",
        1,
        (
            ((i, j), len(agreement_set([at(i), at(i + 1), vs[j]])))
            for i in range(1, 9)
            for j in range(8)
            if vs[j] != at(i) and vs[j] != at(i + 1)
        ),
    )
    record(
        "distinct-triples-agree-le2",
        2,
        (
            ((a, b, c), len(agreement_set([vs[a], vs[b], vs[c]])))
            for a, b, c in combinations(range(8), 3)
            if vs[a] != vs[b] and vs[a] != vs[c] and vs[b] != vs[c]
        ),
    )
    record(
        "last2-blocks-differ-within-gap3",
        1,
        (
            ((i, j), 2 if at(i)[6:] == at(i + j)[6:] else 0)
            for i in range(1, 9)
            for j in range(1, 4)
        ),
        note="value 2 flags an equal last-2 projection",
    )
    record(
        "last3-blocks-differ-within-gap7",
        1,
        (
            ((i, j), 2 if at(i)[5:] == at(i + j)[5:] else 0)
            for i in range(1, 9)
            for j in range(1, 8)
        ),
        note="value 2 flags an equal last-3 projection",
    )
    record(
        "last5-blocks-agree-le3-within-gap7",
        3,
        (
            ((i, j), _agree_count(at(i)[3:], at(i + j)[3:]))
            for i in range(1, 9)
            for j in range(1, 8)
        ),
    )
    return PropertyReport(tuple(results))


def single_sign_mutations(vectors):
    """All 64 families obtained by flipping exactly one sign; yields
    ((vector index, coordinate), mutated family), both 0-based."""
    vs = [tuple(v) for v in vectors]
    for vi in range(len(vs)):
        for ci in range(len(vs[vi])):
            mutated = list(vs)
            row = list(mutated[vi])
            row[ci] = -row[ci]
            mutated[vi] = tuple(row)
            yield (vi, ci), tuple(mutated)


@dataclass(frozen=True)
class ConstructionWord:
    t: int
    r: int
    block_count: int
    block_length: int
    word: Word

    def block(self, i: int) -> Word:
        """1-based block; equals the signed-lex permutation of its index."""
        if not 1 <= i <= self.block_count:
            raise ContractError(f"block {i} outside [1, {self.block_count}]")
        lo = (i - 1) * self.block_length
        return Word(self.word.symbols[lo : lo + self.block_length], self.word.alphabet_size)

    @property
    def alphabet(self) -> TupleAlphabet:
        return TupleAlphabet(self.t, self.r)


def build_construction_word(
    t: int, blocks: int, max_symbols: int = CONSTRUCTION_BUDGET
) -> ConstructionWord:
    """Concatenate `blocks` signed-lex permutations of [t]^8, cycling
    through the eight base sign vectors with period 8."""
    if blocks < 1:
        raise ContractError(f"need at least one block, got {blocks}")
    if t < 2:
        raise ContractError(f"need t >= 2, got {t}")
    block_length = t**8
    total = blocks * block_length
    if total > max_symbols:
        raise BudgetError(
            f"construction word would have {total} symbols, "
            f"over the budget of {max_symbols}"
        )
    perms = [build_permutation(u, t, max_symbols) for u in _BASE_SIGNS]
    syms: list[int] = []
    for i in range(1, blocks + 1):
        syms.extend(perms[(i - 1) % 8].symbols)
    return ConstructionWord(t, 8, blocks, block_length, Word(tuple(syms), block_length))


@dataclass(frozen=True)
class IntermediateReport:
    t: int
    r: int
    family_size: int
    agreement: frozenset[int]
    expected: int
    computed: int

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def verify_lemma_intermediate(r: int, t: int, family) -> IntermediateReport:
    """For signed-lex permutations of [t]^r agreeing exactly on the
    coordinate set J, the joint LCS must equal t^|J|.  Computed by the
    independent product-space DP, not the permutation fast path."""
    vs = [tuple(v) for v in family]
    if not vs:
        raise ContractError("need a nonempty family of sign vectors")
    if any(len(v) != r for v in vs):
        raise ContractError(f"every sign vector must have length {r}")
    unique = []
    for v in vs:
        if v not in unique:
            unique.append(v)
    J = agreement_set(unique)
    perms = [build_permutation(u, t) for u in unique]
    computed = multi_lcs(perms)
    return IntermediateReport(t, r, len(unique), J, t ** len(J), computed)


def restrict_to_prefix_class(w: Word, x: int, cls: int, alphabet: TupleAlphabet) -> Word:
    """Subsequence of w keeping symbols whose first x coordinates pack to cls."""
    kept = tuple(s for s in w.symbols if alphabet.prefix_class(s, x) == cls)
    return Word(kept, w.alphabet_size)


def verify_permutation_properties(
    t: int,
    vectors=None,
    triple_work_budget: int = TRIPLE_WORK_BUDGET,
) -> PropertyReport:
    """LCS bounds for the signed-lex blocks: adjacent and distinct pairs,
    consecutive and mixed triples, and the fixed-prefix-class bounds.

    Triples cost ~length^2 work each; when that exceeds the budget the
    triple results are reported as unchecked rather than guessed.
    """
    vs = tuple(tuple(v) for v in (vectors if vectors is not None else _BASE_SIGNS))
    if len(vs) != 8 or any(len(v) != 8 for v in vs):
        raise ContractError("expected eight sign vectors of length 8")
    alphabet = TupleAlphabet(t, 8)
    perms = [build_permutation(u, t) for u in vs]

    def at(i):  # 1-based periodic
        return perms[(i - 1) % 8]

    results = []

    def sweep(name, cap, instances, exact=False, note=""):
        worst = None
        failures = []
        for label, value in instances:
            if worst is None or value > worst:
                worst = value
            bad = (value != cap) if exact else (value > cap)
            if bad:
                failures.append((label, value))
        results.append(
            PropertyResult(name, not failures, True, worst, tuple(failures[:8]), note)
        )

    sweep(
        "adjacent-lcs-le-t2",
        t**2,
        ((i, lcs2(at(i), at(i + 1))[0]) for i in range(1, 9)),
    )
    sweep(
        "distinct-pair-lcs-le-t4",
        t**4,
        (
            ((i, j), lcs2(perms[i], perms[j])[0])
            for i, j in combinations(range(8), 2)
            if perms[i] != perms[j]
        ),
    )

    triples_affordable = alphabet.size**2 <= triple_work_budget
    if triples_affordable:
        sweep(
            "consecutive-triple-lcs-eq-1",
            1,
            ((i, lcs3(at(i), at(i + 1), at(i + 2))[0]) for i in range(1, 9)),
            exact=True,
        )
        sweep(
            "adjacent-plus-outsider-lcs-le-t",
            t,
            (
                ((i, j), lcs3(at(i), at(i + 1), perms[j])[0])
                for i in range(1, 9)
                for j in range(8)
                if perms[j] != at(i) and perms[j] != at(i + 1)
            ),
        )
        sweep(
            "distinct-triple-lcs-le-t2",
            t**2,
            (
                ((a, b, c), lcs3(perms[a], perms[b], perms[c])[0])
                for a, b, c in combinations(range(8), 3)
                if perms[a] != perms[b] and perms[a] != perms[c] and perms[b] != perms[c]
            ),
        )
    else:
        skip_note = (
            f"triple LCS needs ~{alphabet.size**2} work per instance, "
            f"over the budget of {triple_work_budget}"
        )
        for name in (
            "consecutive-triple-lcs-eq-1",
            "adjacent-plus-outsider-lcs-le-t",
            "distinct-triple-lcs-le-t2",
        ):
            results.append(PropertyResult(name, True, False, None, (), skip_note))

    bucket_cache: dict[tuple[int, int], list[tuple[int, ...]]] = {}

    def class_buckets(perm_index: int, prefix_len: int) -> list[tuple[int, ...]]:
        # one pass per (block, prefix length): symbols grouped by the
        # packed value of their first prefix_len coordinates
        key = (perm_index, prefix_len)
        if key not in bucket_cache:
            groups: list[list[int]] = [[] for _ in range(t**prefix_len)]
            for s in perms[perm_index].symbols:
                groups[alphabet.prefix_class(s, prefix_len)].append(s)
            bucket_cache[key] = [tuple(g) for g in groups]
        return bucket_cache[key]

    def class_sweep(name, prefix_len, gaps, cap):
        def instances():
            for i in range(1, 9):
                for j in gaps:
                    ia, ib = (i - 1) % 8, (i + j - 1) % 8
                    if perms[ia] == perms[ib]:
                        continue
                    ga = class_buckets(ia, prefix_len)
                    gb = class_buckets(ib, prefix_len)
                    worst_cls = 0
                    for cls in range(t**prefix_len):
                        ra = Word(ga[cls], alphabet.size)
                        rb = Word(gb[cls], alphabet.size)
                        value = lcs2(ra, rb)[0]
                        if value > worst_cls:
                            worst_cls = value
                    yield (i, j), worst_cls

        sweep(name, cap, instances())

    class_sweep("fixed-prefix6-lcs-le-t", 6, range(1, 4), t)
    class_sweep("fixed-prefix5-lcs-le-t2", 5, range(1, 8), t**2)
    class_sweep("fixed-prefix3-lcs-le-t3", 3, range(1, 8), t**3)
    return PropertyReport(tuple(results))
