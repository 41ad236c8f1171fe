"""Factor machinery: automaton counts, censuses, stability, identities."""

import random
from fractions import Fraction

import pytest

from cubewords.billiard import StartPoint, trace_letters
from cubewords.exactnum import PHI, SQRT2
from cubewords.words import (
    ComplexityProfile,
    FactorIndex,
    SuffixAutomaton,
    UnstableLength,
    cassaigne_check,
    complexity,
    fit_affine,
    is_sturmian,
    special_factors,
)


def naive_counts(word, n_max):
    return [len({word[i : i + n] for i in range(len(word) - n + 1)}) for n in range(1, n_max + 1)]


def fibonacci_word(length):
    a, b = "a", "ab"
    while len(b) < length:
        a, b = b, b + a
    return b[:length]


def test_automaton_matches_naive_on_random_words():
    rng = random.Random(5150)
    for _ in range(60):
        word = "".join(rng.choice("abc") for _ in range(rng.randint(2, 400)))
        n_max = min(len(word), 12)
        assert SuffixAutomaton(word).factor_counts(n_max) == naive_counts(word, n_max)


def test_automaton_membership():
    sam = SuffixAutomaton("abcabbacb")
    assert "cab" in sam
    assert "bba" in sam
    assert "aa" not in sam
    assert "" in sam


def test_interior_word_profile():
    word = trace_letters(StartPoint.face_x(Fraction(1, 2), Fraction(1, 2)), length=20000)
    profile = complexity(word, 16)
    assert profile.stable_through == 16
    assert profile.p(1) == 3
    assert [profile.p(n) for n in range(2, 17)] == [2 * n + 3 for n in range(2, 17)]
    assert profile.s(5) == 2


def test_degenerate_golden_profile():
    word = trace_letters(StartPoint(0, 0, 2 - PHI), length=20000)
    profile = complexity(word, 16)
    assert [profile.p(n) for n in range(1, 8)] == [3 * n for n in range(1, 8)]
    assert [profile.p(n) for n in range(8, 17)] == [2 * n + 8 for n in range(8, 17)]


def test_degenerate_quartic_profile():
    word = trace_letters(StartPoint(0, 0, SQRT2 - 1), length=20000)
    profile = complexity(word, 16)
    assert [profile.p(n) for n in range(1, 9)] == [3, 6, 9, 14, 19, 25, 31, 36]
    assert [profile.p(n) for n in range(9, 17)] == [4 * n + 4 for n in range(9, 17)]


def test_known_right_special_factors():
    word = trace_letters(StartPoint(0, 0, 2 - PHI), length=30000)
    index = FactorIndex(word)
    assert "abcabacbabc" in index.right_special(11)
    assert "cbabcab" in index.right_special(7)
    assert "acbabcabcbab" in index.right_special(12)
    assert index.right_special(1) == ["a", "b", "c"]


def test_hand_censused_extensions():
    index = FactorIndex("aabab")
    census = index.extensions(1)
    assert census["a"].left == frozenset("ab")
    assert census["a"].right == frozenset("ab")
    assert census["b"].left == frozenset("a")
    assert census["b"].right == frozenset()
    assert index.left_special(1) == ["a"]
    assert index.right_special(1) == ["a"]
    assert index.bispecial(1) == ["a"]


def test_special_factors_wrapper():
    left, right, bispecial = special_factors("aabab", 1)
    assert (left, right, bispecial) == (["a"], ["a"], ["a"])


def test_cassaigne_on_traced_words():
    for start in [
        StartPoint.face_x(Fraction(1, 2), Fraction(1, 2)),
        StartPoint(0, 0, 2 - PHI),
        StartPoint(0, 0, SQRT2 - 1),
    ]:
        word = trace_letters(start, length=20000)
        assert cassaigne_check(word, 14) == []


def test_cassaigne_on_fibonacci():
    assert cassaigne_check(fibonacci_word(15000), 20) == []


def test_sturmian_detection():
    assert is_sturmian(fibonacci_word(8000), 40)
    assert not is_sturmian("ab" * 4000, 40)
    word = trace_letters(StartPoint.face_x(Fraction(1, 2), Fraction(1, 2)), length=8000)
    assert not is_sturmian(word, 40)


def test_stability_and_unstable_errors():
    word = trace_letters(StartPoint.face_x(Fraction(1, 2), Fraction(1, 2)), length=300)
    profile = complexity(word, 100)
    assert profile.stable_through < 100
    with pytest.raises(UnstableLength):
        profile.require_stable(100)
    assert profile.require_stable(2) == 7
    with pytest.raises(ValueError):
        complexity(word, 200)
    with pytest.raises(ValueError):
        profile.p(0)


def test_periodic_word_profile():
    profile = complexity("abc" * 400, 10)
    assert all(profile.p(n) == 3 for n in range(1, 11))
    assert profile.stable(10)


def test_fit_affine():
    assert fit_affine([(2, 7), (3, 9), (4, 11)]) == (Fraction(2), Fraction(3))
    assert fit_affine([(9, 40), (10, 44), (16, 68)]) == (Fraction(4), Fraction(4))
    assert fit_affine([(2, 7), (3, 9), (4, 12)]) is None
    assert fit_affine([(2, 7)]) is None
    assert fit_affine([]) is None
    assert fit_affine([(3, 5), (5, 6)]) == (Fraction(1, 2), Fraction(7, 2))


class TestCommonFactorDepth:
    def test_against_naive_sets(self):
        from cubewords.words import common_factor_depth

        def naive(container, probe):
            depth = 0
            for n in range(1, len(probe) + 1):
                have = {container[i : i + n] for i in range(len(container) - n + 1)}
                want = {probe[i : i + n] for i in range(len(probe) - n + 1)}
                if want and want <= have:
                    depth = n
                else:
                    break
            return depth

        rng = random.Random(2)
        for _ in range(200):
            container = "".join(rng.choice("abc") for _ in range(rng.randrange(1, 40)))
            probe = "".join(rng.choice("abc") for _ in range(rng.randrange(1, 40)))
            assert common_factor_depth(container, probe) == naive(container, probe)

    def test_saturates_on_equal_words(self):
        from cubewords.words import common_factor_depth

        word = "abcab" * 40
        assert common_factor_depth(word, word) == len(word)

    def test_degenerate_inputs(self):
        from cubewords.words import common_factor_depth

        assert common_factor_depth("", "abc") == 0
        assert common_factor_depth("abc", "") == 0
        assert common_factor_depth("ab", "abd") == 0
