"""Independent reference implementations used to pin expected values.

Everything here is deliberately naive and self-contained: counting by
enumerating position combinations, maximising by sweeping every
pattern, orbits by applying every group element.  None of it shares
code with the package, so agreement is evidence, not tautology.
"""

from itertools import combinations, permutations, product


def count_by_combinations(v_syms, w_syms):
    m = len(v_syms)
    return sum(
        1
        for pos in combinations(range(len(w_syms)), m)
        if all(w_syms[p] == v_syms[i] for i, p in enumerate(pos))
    )


def count_by_plain_dp(v_syms, w_syms):
    m = len(v_syms)
    c = [1] + [0] * m
    for s in w_syms:
        for j in range(m, 0, -1):
            if v_syms[j - 1] == s:
                c[j] += c[j - 1]
    return c[m]


def brute_most_common(w_syms, k):
    """(max count, witness) over every pattern length; witness is the
    lexicographically smallest maximiser under tuple comparison."""
    n = len(w_syms)
    best, witness = 1, ()
    for length in range(1, n + 1):
        for v in product(range(k), repeat=length):
            c = count_by_plain_dp(v, w_syms)
            if c > best or (c == best and v < witness):
                best, witness = c, v
    return best, witness


def brute_most_common_of_length(w_syms, k, length):
    best, witness = -1, None
    for v in product(range(k), repeat=length):
        c = count_by_plain_dp(v, w_syms)
        if c > best:
            best, witness = c, v
    return best, witness


def brute_profile(w_syms, k):
    return [
        brute_most_common_of_length(w_syms, k, length)[0]
        for length in range(len(w_syms) + 1)
    ]


def brute_max_over_patterns(w_syms, k):
    """Plain M(w) without any witness bookkeeping (for speed)."""
    n = len(w_syms)
    best = 1
    for length in range(1, n + 1):
        for v in product(range(k), repeat=length):
            c = count_by_plain_dp(v, w_syms)
            if c > best:
                best = c
    return best


def orbit_of(syms, k):
    """All words reachable by relabelling symbols and/or reversing."""
    out = set()
    for perm in permutations(range(k)):
        fwd = tuple(perm[s] for s in syms)
        out.add(fwd)
        out.add(fwd[::-1])
    return out


def subsequence_by_two_pointer(v_syms, w_syms):
    i = 0
    for s in w_syms:
        if i < len(v_syms) and v_syms[i] == s:
            i += 1
    return i == len(v_syms)


def brute_lcs(all_syms):
    """(length, lex-min witness) common to every word, by enumerating
    every subsequence of the first word.  Exponential; keep |first| small."""
    base = all_syms[0]
    n = len(base)
    best_len, best = 0, ()
    for mask in range(1 << n):
        cand = tuple(base[i] for i in range(n) if mask >> i & 1)
        if len(cand) < best_len:
            continue
        if all(subsequence_by_two_pointer(cand, s) for s in all_syms[1:]):
            if len(cand) > best_len or (len(cand) == best_len and cand < best):
                best_len, best = len(cand), cand
    return best_len, best


def lis_by_patience(values):
    """Classic patience-sorting LIS length over distinct integers."""
    from bisect import bisect_left

    piles = []
    for v in values:
        t = bisect_left(piles, v)
        if t == len(piles):
            piles.append(v)
        else:
            piles[t] = v
    return len(piles)


def profile_by_definitions(v_syms, positions, w_syms, block_count, block_length):
    """(entries, reaches, overlaps) straight from the definitions.

    entry_i: first pattern index landing at or after block i's start
    (block_count-past-the-end convention when none does).  reach_i:
    largest j such that the pattern slice entry_i..j embeds in block i
    alone, found by testing every candidate.  overlap_i: reach_i minus
    entry_{i+1}.
    """
    m = len(v_syms)
    entries, reaches = [], []
    for i in range(1, block_count + 1):
        start = (i - 1) * block_length
        g = m + 1
        for j in range(1, m + 1):
            if positions[j - 1] >= start:
                g = j
                break
        block = w_syms[start : start + block_length]
        h = g - 1
        for cand in range(g - 1, m + 1):
            if subsequence_by_two_pointer(v_syms[g - 1 : cand], block):
                h = cand
        entries.append(g)
        reaches.append(h)
    overlaps = [reaches[i] - entries[i + 1] for i in range(block_count - 1)]
    return tuple(entries), tuple(reaches), tuple(overlaps)
