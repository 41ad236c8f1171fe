"""Factor combinatorics of finite words.

Everything here treats a finite word as a window onto an infinite one,
so every count comes with a stability question: would a longer window
have shown more?  The complexity profile answers it by recomputing each
count on the half-length prefix; a count that agrees between the half
and the full window is reported stable, anything else is suspect and
can be made fatal through require_stable.

Factor counting runs on a suffix automaton, so profiles of words with
10**5 letters or more stay cheap.  Extension censuses (left, right and
two-sided special factors) use direct per-length scans instead; they
are independent of the automaton, which keeps the two machineries able
to cross-check each other.  Census scans skip occurrences too close to
the end of the window for their context to be trustworthy: a right
extension at length n is only believed when a further n + 2 letters
follow it, which removes the bias a truncated final occurrence would
otherwise inject into special-factor counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class UnstableLength(Exception):
    """A factor count was requested beyond its certified stable range."""

    def __init__(self, n: int, word_length: int) -> None:
        super().__init__(
            f"complexity at length {n} is not stable in a window of {word_length} letters"
        )
        self.n = n
        self.word_length = word_length


class SuffixAutomaton:
    """Standard online suffix automaton over a fixed word."""

    __slots__ = ("length", "link", "transitions", "_last")

    def __init__(self, word: str = "") -> None:
        self.length = [0]
        self.link = [-1]
        self.transitions: list[dict[str, int]] = [{}]
        self._last = 0
        for letter in word:
            self.extend(letter)

    def extend(self, letter: str) -> None:
        current = len(self.length)
        self.length.append(self.length[self._last] + 1)
        self.link.append(-2)
        self.transitions.append({})
        probe = self._last
        while probe != -1 and letter not in self.transitions[probe]:
            self.transitions[probe][letter] = current
            probe = self.link[probe]
        if probe == -1:
            self.link[current] = 0
        else:
            target = self.transitions[probe][letter]
            if self.length[probe] + 1 == self.length[target]:
                self.link[current] = target
            else:
                clone = len(self.length)
                self.length.append(self.length[probe] + 1)
                self.link.append(self.link[target])
                self.transitions.append(dict(self.transitions[target]))
                while probe != -1 and self.transitions[probe].get(letter) == target:
                    self.transitions[probe][letter] = clone
                    probe = self.link[probe]
                self.link[target] = clone
                self.link[current] = clone
        self._last = current

    def factor_counts(self, n_max: int) -> list[int]:
        """Number of distinct factors of each length 1..n_max.

        Every state recognizes the factors whose lengths fill the
        interval (link length, state length], one per length, so the
        counts drop out of an interval histogram.
        """
        deltas = [0] * (n_max + 2)
        for state in range(1, len(self.length)):
            low = self.length[self.link[state]] + 1
            high = self.length[state]
            if low > n_max:
                continue
            deltas[low] += 1
            deltas[min(high, n_max) + 1] -= 1
        counts = []
        running = 0
        for n in range(1, n_max + 1):
            running += deltas[n]
            counts.append(running)
        return counts

    def __contains__(self, factor: str) -> bool:
        state = 0
        for letter in factor:
            state = self.transitions[state].get(letter, -1)
            if state == -1:
                return False
        return True


@dataclass(frozen=True)
class ExtensionCensus:
    """Observed extensions of one factor inside the window."""

    left: frozenset[str]
    right: frozenset[str]
    pairs: frozenset[tuple[str, str]]

    @property
    def bilateral_multiplicity(self) -> int:
        """m(v) = #pairs - #right - #left + 1, the Cassaigne weight."""
        return len(self.pairs) - len(self.right) - len(self.left) + 1


class FactorIndex:
    """Per-length extension censuses of a finite word."""

    def __init__(self, word: str) -> None:
        self._word = word
        self._cache: dict[int, dict[str, ExtensionCensus]] = {}

    @property
    def word(self) -> str:
        return self._word

    def extensions(self, n: int) -> dict[str, ExtensionCensus]:
        cached = self._cache.get(n)
        if cached is not None:
            return cached
        word = self._word
        total = len(word)
        if not 1 <= n <= total:
            raise ValueError(f"factor length {n} out of range for window of {total}")
        # Right context is only trusted when n + 2 further letters exist.
        right_limit = total - (n + 2)
        raw: dict[str, tuple[set, set, set]] = {}
        for i in range(total - n + 1):
            piece = word[i : i + n]
            entry = raw.get(piece)
            if entry is None:
                entry = raw[piece] = (set(), set(), set())
            if i >= 1:
                entry[0].add(word[i - 1])
            if i + n <= right_limit:
                entry[1].add(word[i + n])
                if i >= 1:
                    entry[2].add((word[i - 1], word[i + n]))
        census = {
            piece: ExtensionCensus(frozenset(l), frozenset(r), frozenset(p))
            for piece, (l, r, p) in raw.items()
        }
        self._cache[n] = census
        return census

    def left_special(self, n: int) -> list[str]:
        return sorted(
            piece for piece, e in self.extensions(n).items() if len(e.left) >= 2
        )

    def right_special(self, n: int) -> list[str]:
        return sorted(
            piece for piece, e in self.extensions(n).items() if len(e.right) >= 2
        )

    def bispecial(self, n: int) -> list[str]:
        return sorted(
            piece
            for piece, e in self.extensions(n).items()
            if len(e.left) >= 2 and len(e.right) >= 2
        )


@dataclass(frozen=True)
class ComplexityProfile:
    """Factor counts of a window together with their stability record."""

    word_length: int
    n_max: int
    full_counts: tuple[int, ...]
    half_counts: tuple[int, ...]

    def p(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise ValueError(f"length {n} outside profile range 1..{self.n_max}")
        return self.full_counts[n - 1]

    def s(self, n: int) -> int:
        return self.p(n + 1) - self.p(n)

    def stable(self, n: int) -> bool:
        """True when the half window already saw every factor of length n."""
        if not 1 <= n <= self.n_max:
            raise ValueError(f"length {n} outside profile range 1..{self.n_max}")
        return self.full_counts[n - 1] == self.half_counts[n - 1]

    def require_stable(self, n: int) -> int:
        if not self.stable(n):
            raise UnstableLength(n, self.word_length)
        return self.p(n)

    @property
    def stable_through(self) -> int:
        """Largest m with every length 1..m stable; 0 if none."""
        for n in range(1, self.n_max + 1):
            if not self.stable(n):
                return n - 1
        return self.n_max

    def pairs(self) -> list[tuple[int, int]]:
        return [(n, self.p(n)) for n in range(1, self.n_max + 1)]


def complexity(word: str, n_max: int) -> ComplexityProfile:
    """Complexity profile of the window, cross-checked on its half prefix."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if len(word) < 2 * n_max:
        raise ValueError(
            f"window of {len(word)} letters is too short to profile up to {n_max}"
        )
    half = word[: len(word) // 2]
    full_counts = SuffixAutomaton(word).factor_counts(n_max)
    half_counts = SuffixAutomaton(half).factor_counts(n_max)
    return ComplexityProfile(
        word_length=len(word),
        n_max=n_max,
        full_counts=tuple(full_counts),
        half_counts=tuple(half_counts),
    )


def special_factors(word: str, n: int) -> tuple[list[str], list[str], list[str]]:
    """(left-special, right-special, bispecial) factors of one length."""
    index = FactorIndex(word)
    return index.left_special(n), index.right_special(n), index.bispecial(n)


def cassaigne_check(word: str, n_max: int) -> list[tuple[int, int, int]]:
    """Second-difference identity against the bispecial census.

    For each checkable n, the increment s(n+1) - s(n) must equal the sum
    of bilateral multiplicities over bispecial factors of length n.
    Returns the list of (n, increment, census_sum) mismatches, empty
    when the window passes; lengths whose counts are unstable are not
    checked, since the identity only holds for honest windows.
    """
    profile = complexity(word, n_max)
    index = FactorIndex(word)
    failures = []
    for n in range(1, n_max - 1):
        if not (profile.stable(n) and profile.stable(n + 1) and profile.stable(n + 2)):
            continue
        increment = profile.s(n + 1) - profile.s(n)
        census = sum(
            e.bilateral_multiplicity
            for e in index.extensions(n).values()
            if len(e.left) >= 2 and len(e.right) >= 2
        )
        if increment != census:
            failures.append((n, increment, census))
    return failures


def is_sturmian(word: str, n_max: Optional[int] = None) -> bool:
    """Whether the window is consistent with complexity n + 1 throughout."""
    if n_max is None:
        n_max = max(1, min(len(word) // 4, 200))
    profile = complexity(word, n_max)
    top = profile.stable_through
    if top == 0:
        raise UnstableLength(1, len(word))
    return all(profile.p(n) == n + 1 for n in range(1, top + 1))


def common_factor_depth(container: str, probe: str) -> int:
    """Largest n such that every length-n factor of probe occurs in container.

    Runs the probe through the container's suffix automaton keeping the
    matching statistic (longest factor of the container ending at each
    probe position), then grows n while every window of that length is
    covered.  One automaton walk answers all lengths at once, so two
    long windows can be compared factor-for-factor in linear time.
    """
    if not probe:
        return 0
    automaton = SuffixAutomaton(container)
    ms = []
    state = 0
    matched = 0
    for letter in probe:
        while state != 0 and letter not in automaton.transitions[state]:
            state = automaton.link[state]
            matched = automaton.length[state]
        if letter in automaton.transitions[state]:
            state = automaton.transitions[state][letter]
            matched += 1
        else:
            matched = 0
        ms.append(matched)
    suffix_min = ms[:]
    for i in range(len(ms) - 2, -1, -1):
        suffix_min[i] = min(suffix_min[i], suffix_min[i + 1])
    depth = 0
    for n in range(1, len(probe) + 1):
        if suffix_min[n - 1] >= n:
            depth = n
        else:
            break
    return depth


def fit_affine(points: Iterable[tuple[int, int]]) -> Optional[tuple[Fraction, Fraction]]:
    """Exact affine law through integer points, or None.

    Returns (slope, intercept) with p = slope*n + intercept satisfied by
    every point; at least two distinct n are required.
    """
    rows = sorted(points)
    if len(rows) < 2 or rows[0][0] == rows[-1][0]:
        return None
    (n0, p0), (n1, p1) = rows[0], rows[-1]
    slope = Fraction(p1 - p0, n1 - n0)
    intercept = p0 - slope * n0
    for n, p in rows:
        if slope * n + intercept != p:
            return None
    return slope, intercept
