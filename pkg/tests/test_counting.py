import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from subseqlab.counting import (
    EmbeddingMap,
    PrefixCountState,
    count_occurrences,
    enumerate_embeddings,
    max_occurrences,
    max_occurrences_of_length,
    occurrence_profile,
    sum_over_lengths,
    validate_embedding,
)
from subseqlab.errors import ContractError
from subseqlab.words import Word, concat, from_ids, power, relabel, reverse, word

from oracles import (
    brute_most_common,
    brute_most_common_of_length,
    brute_profile,
    count_by_combinations,
)


def rand_word(rng, k, n):
    return from_ids((rng.randrange(k) for _ in range(n)), alphabet_size=k)


# ---------------------------------------------------------------------------
# counting


def test_count_classic_example():
    assert count_occurrences(word("abra", 18), word("abracadabra")) == 9


def test_count_empty_pattern_and_overlong_pattern():
    assert count_occurrences(word("", 2), word("abab")) == 1
    assert count_occurrences(word("aaa", 2), word("ab")) == 0


def test_count_alphabet_mismatch():
    with pytest.raises(ContractError):
        count_occurrences(word("ab"), word("abc"))


def test_count_matches_combination_oracle():
    rng = random.Random(11)
    for _ in range(250):
        k = rng.choice([2, 3])
        w = rand_word(rng, k, rng.randrange(0, 11))
        v = rand_word(rng, k, rng.randrange(0, 5))
        assert count_occurrences(v, w) == count_by_combinations(v.symbols, w.symbols)


@settings(max_examples=200)
@given(
    st.lists(st.integers(0, 1), max_size=4),
    st.lists(st.integers(0, 1), max_size=10),
)
def test_count_matches_combination_oracle_hypothesis(v_ids, w_ids):
    v, w = from_ids(v_ids, 2), from_ids(w_ids, 2)
    assert count_occurrences(v, w) == count_by_combinations(tuple(v_ids), tuple(w_ids))


def test_count_binomial_on_constant_words():
    w = power(word("a", 2), 7)
    for m in range(9):
        assert count_occurrences(power(word("a", 2), m), w) == comb(7, m)


# ---------------------------------------------------------------------------
# enumeration


def test_enumerate_example():
    res = enumerate_embeddings(word("ab"), word("abab"))
    assert [e.positions for e in res] == [(0, 1), (0, 3), (2, 3)]
    assert not res.truncated


def test_enumerate_empty_pattern():
    res = enumerate_embeddings(word("", 2), word("abab"))
    assert [e.positions for e in res] == [()]


def test_enumerate_no_occurrence():
    res = enumerate_embeddings(word("ba"), word("ab"))
    assert len(res) == 0 and not res.truncated


def test_enumerate_cap_truncation():
    res = enumerate_embeddings(word("ab"), word("abab"), cap=2)
    assert [e.positions for e in res] == [(0, 1), (0, 3)]
    assert res.truncated
    exact = enumerate_embeddings(word("ab"), word("abab"), cap=3)
    assert not exact.truncated
    nothing = enumerate_embeddings(word("ab"), word("abab"), cap=0)
    assert len(nothing) == 0 and nothing.truncated
    with pytest.raises(ContractError):
        enumerate_embeddings(word("ab"), word("abab"), cap=-1)


def test_enumeration_size_equals_count():
    rng = random.Random(23)
    for _ in range(300):
        k = rng.choice([2, 3])
        w = rand_word(rng, k, rng.randrange(0, 10))
        v = rand_word(rng, k, rng.randrange(0, 4))
        res = enumerate_embeddings(v, w)
        assert len(res) == count_occurrences(v, w)
        for e in res:
            validate_embedding(v, w, e)


def test_validate_embedding_rejects_junk():
    v, w = word("ab"), word("abab")
    with pytest.raises(ContractError):
        validate_embedding(v, w, EmbeddingMap((1, 2), 2))  # w[1] is 'b'
    with pytest.raises(ContractError):
        validate_embedding(v, w, EmbeddingMap((0,), 1))
    with pytest.raises(ContractError):
        EmbeddingMap((2, 1), 2)


# ---------------------------------------------------------------------------
# prefix-count states


def test_state_extension_matches_prefix_counts():
    rng = random.Random(5)
    for _ in range(100):
        k = 2
        w = rand_word(rng, k, rng.randrange(1, 9))
        v = rand_word(rng, k, rng.randrange(1, 5))
        state = PrefixCountState.initial(len(w))
        for s in v.symbols:
            state = state.extend(w, s)
        for j in range(len(w) + 1):
            prefix_w = Word(w.symbols[:j], k)
            assert state.counts[j] == count_occurrences(v, prefix_w)


def test_state_dominance_is_preserved_by_extension():
    # pointwise-larger states stay pointwise larger under any common
    # extension -- the fact that makes dominance pruning sound
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randrange(1, 8)
        w = rand_word(rng, 2, n)
        low = [rng.randrange(0, 4) for _ in range(n + 1)]
        for j in range(1, n + 1):  # states are nondecreasing in j
            low[j] = max(low[j], low[j - 1])
        high = [c + rng.randrange(0, 3) for c in low]
        for j in range(1, n + 1):
            high[j] = max(high[j], high[j - 1])
        s_low = PrefixCountState(tuple(low))
        s_high = PrefixCountState(tuple(high))
        assert s_high.dominates(s_low)
        for _ in range(rng.randrange(1, 5)):
            sym = rng.randrange(2)
            s_low = s_low.extend(w, sym)
            s_high = s_high.extend(w, sym)
            assert s_high.dominates(s_low)
        assert s_high.value() >= s_low.value()


# ---------------------------------------------------------------------------
# maximisers


def test_most_common_examples():
    assert max_occurrences(word("abab")) == (3, word("ab"))
    assert max_occurrences(word("aaaa")) == (6, word("aa", 1))
    count, witness = max_occurrences(word("ab"))
    assert count == 1 and len(witness) == 0


def test_most_common_matches_brute_force():
    rng = random.Random(31)
    for _ in range(150):
        k = rng.choice([2, 3])
        w = rand_word(rng, k, rng.randrange(0, 10))
        value, witness = max_occurrences(w)
        b_value, b_witness = brute_most_common(w.symbols, k)
        assert (value, witness.symbols) == (b_value, b_witness)
        assert count_occurrences(witness, w) == value


def test_fixed_length_examples():
    assert max_occurrences_of_length(word("abab"), 2) == (3, word("ab"))
    assert max_occurrences_of_length(word("abab"), 1) == (2, word("a", 2))
    assert max_occurrences_of_length(word("abab"), 0) == (1, word("", 2))
    count, witness = max_occurrences_of_length(word("abab"), 7)
    assert count == 0 and witness.symbols == (0,) * 7
    with pytest.raises(ContractError):
        max_occurrences_of_length(word("abab"), -1)


def test_fixed_length_matches_brute_force():
    rng = random.Random(37)
    for _ in range(120):
        k = rng.choice([2, 3])
        w = rand_word(rng, k, rng.randrange(1, 9))
        length = rng.randrange(0, len(w) + 1)
        value, witness = max_occurrences_of_length(w, length)
        b_value, b_witness = brute_most_common_of_length(w.symbols, k, length)
        assert (value, witness.symbols) == (b_value, b_witness)


def test_profile_and_sum():
    # every length-3 pattern fits "abab" at most once (aab/aba/abb/bab
    # all embed exactly once), so the profile tops out at length 2
    prof = occurrence_profile(word("abab"))
    assert [c for c, _ in prof] == [1, 2, 3, 1, 1]
    assert sum_over_lengths(word("abab")) == 8
    assert sum_over_lengths(word("aa", 1)) == 4
    assert sum_over_lengths(word("", 2)) == 1


def test_profile_matches_brute_force():
    rng = random.Random(41)
    for _ in range(40):
        k = rng.choice([2, 3])
        w = rand_word(rng, k, rng.randrange(0, 9))
        assert [c for c, _ in occurrence_profile(w)] == brute_profile(w.symbols, k)


# ---------------------------------------------------------------------------
# structural facts the rest of the package leans on


def test_doubling_exhaustive_binary():
    # every pattern w occurs at least |w| + 1 times in ww
    from itertools import product as iproduct

    for n in range(0, 9):
        for syms in iproduct(range(2), repeat=n):
            w = Word(syms, 2)
            assert count_occurrences(w, concat(w, w)) >= n + 1


def test_supermultiplicativity_random():
    rng = random.Random(43)
    for _ in range(60):
        k = rng.choice([2, 3])
        w1 = rand_word(rng, k, rng.randrange(0, 8))
        w2 = rand_word(rng, k, rng.randrange(0, 8))
        m1, _ = max_occurrences(w1)
        m2, _ = max_occurrences(w2)
        m12, _ = max_occurrences(concat(w1, w2))
        assert m12 >= m1 * m2


def test_count_invariant_under_reverse_and_relabel():
    rng = random.Random(47)
    for _ in range(400):
        k = rng.choice([2, 3])
        w = rand_word(rng, k, rng.randrange(0, 10))
        v = rand_word(rng, k, rng.randrange(0, 5))
        assert count_occurrences(reverse(v), reverse(w)) == count_occurrences(v, w)
        perm = list(range(k))
        rng.shuffle(perm)
        assert count_occurrences(relabel(v, perm), relabel(w, perm)) == count_occurrences(v, w)


def test_max_invariant_under_reverse_and_relabel():
    rng = random.Random(53)
    for _ in range(1000):
        k = rng.choice([2, 3])
        w = rand_word(rng, k, rng.randrange(0, 10))
        value = max_occurrences(w)[0]
        assert max_occurrences(reverse(w))[0] == value
        perm = list(range(k))
        rng.shuffle(perm)
        assert max_occurrences(relabel(w, perm))[0] == value


def test_single_letter_maximum_is_pigeonhole_bound():
    rng = random.Random(59)
    for _ in range(200):
        k = rng.choice([2, 3, 4])
        n = rng.randrange(1, 12)
        w = rand_word(rng, k, n)
        value, witness = max_occurrences_of_length(w, 1)
        freq = max(w.symbols.count(s) for s in range(k))
        assert value == freq
        assert value >= -(-n // k)  # ceil(n / k)
        assert w.symbols.count(witness.symbols[0]) == value
