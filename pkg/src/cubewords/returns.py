"""Return words of the letter a and the face partition behind them.

For the direction with r = 1/2, the word between one a and the next is
one of only seven blocks, and which block follows a given crossing of
the face X = 0 depends only on where the trajectory hits that face.
The face splits into seven cells whose boundaries are four curves in
the (Y, Z) square:

* the horizontal line Z = 2*phi - 3,
* the vertical line Y = 4 - 2*phi,
* the red line Z = (phi - 1)*Y + (2 - phi),
* the blue segment Z = (phi - 1)*Y + (3 - 2*phi) over Y in [4-2*phi, 1].

The anti-diagonal Y + Z = 1 is also drawn on the face as the axis of
the trajectory flow, but it does not separate cells: the return word is
constant across it, so cell assignment ignores it (points exactly on
the four dividing curves are rejected instead).

Successive returns are driven by a rotation: consecutive hits of the
face differ by adding 2*theta_2 to Y and subtracting it from Z, so the
quantity s = Y + Z mod 1 is invariant and each start lives on a circle
{(y, s - y mod 1)}.  Cutting that circle with the four curves (and the
seam where Z wraps past 0) gives an interval partition with k pieces,
k in {3, 5, 6}; coding the rotation orbit of Y against it and mapping
each interval label through the block table reconstructs the billiard
word letter for letter.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .billiard import Direction, GOLDEN_DIRECTION, StartPoint, trace_letters
from .exactnum import PHI, FieldNumber, reduce_mod1

logger = logging.getLogger(__name__)


class OnBoundary(ValueError):
    """The point lies exactly on a dividing curve of the face partition."""

    def __init__(self, curve: str, point: tuple[FieldNumber, FieldNumber]) -> None:
        super().__init__(f"point ({point[0]}, {point[1]}) lies on the {curve} curve")
        self.curve = curve
        self.point = point


class InsufficientOccurrences(ValueError):
    """Too few occurrences of the marker letter to cut out return words."""


class HitsCut(ValueError):
    """A rotation orbit point landed exactly on a partition cut."""

    def __init__(self, position: FieldNumber, step: Optional[int] = None) -> None:
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"orbit hits the cut {position}{where}")
        self.position = position
        self.step = step


class CellLabel(Enum):
    """The seven cells of the face partition, named by their return word."""

    A1 = 1
    A2 = 2
    A3 = 3
    A4 = 4
    A5 = 5
    A6 = 6
    A7 = 7

    @property
    def word(self) -> str:
        """The return word emitted from this cell."""
        return _CELL_WORDS[self]

    @classmethod
    def from_word(cls, word: str) -> "CellLabel":
        try:
            return _WORD_CELLS[word]
        except KeyError:
            raise ValueError(f"{word!r} is not a return word of any cell") from None

    def __str__(self) -> str:
        return f"a{self.value}"


_CELL_WORDS = {
    CellLabel.A1: "acb",
    CellLabel.A2: "abc",
    CellLabel.A3: "abcb",
    CellLabel.A4: "abb",
    CellLabel.A5: "abbc",
    CellLabel.A6: "acbb",
    CellLabel.A7: "ab",
}

_WORD_CELLS = {word: cell for cell, word in _CELL_WORDS.items()}


class FacePartition:
    """The seven-cell partition of the face X = 0 for r = 1/2.

    Cells are open; the assignment predicate rejects points on any of
    the four dividing curves, since trajectories from there may run
    into cube edges.  Constants are hard-coded exactly and the whole
    table is cross-validated against traced return words in the tests.
    """

    HORIZONTAL_Z = 2 * PHI - 3
    VERTICAL_Y = 4 - 2 * PHI
    LINE_SLOPE = PHI - 1
    RED_INTERCEPT = 2 - PHI
    BLUE_INTERCEPT = 3 - 2 * PHI

    @classmethod
    def red_z(cls, y: FieldNumber) -> FieldNumber:
        return cls.LINE_SLOPE * y + cls.RED_INTERCEPT

    @classmethod
    def blue_z(cls, y: FieldNumber) -> FieldNumber:
        return cls.LINE_SLOPE * y + cls.BLUE_INTERCEPT

    @staticmethod
    def on_anti_diagonal(y: FieldNumber, z: FieldNumber) -> bool:
        """Whether Y + Z = 1; informational only, never rejects."""
        return y + z == 1

    @classmethod
    def assign(cls, y: FieldNumber, z: FieldNumber) -> CellLabel:
        if not (FieldNumber(0) < y < 1 and FieldNumber(0) < z < 1):
            raise ValueError(f"point ({y}, {z}) outside the open unit square")
        horizontal = (z - cls.HORIZONTAL_Z).sign()
        vertical = (y - cls.VERTICAL_Y).sign()
        if vertical == 0:
            raise OnBoundary("vertical", (y, z))
        if horizontal == 0:
            raise OnBoundary("horizontal", (y, z))
        if horizontal < 0:
            return CellLabel.A7 if vertical < 0 else CellLabel.A4
        red = (z - cls.red_z(y)).sign()
        if red == 0:
            raise OnBoundary("red", (y, z))
        if vertical < 0:
            return CellLabel.A2 if red < 0 else CellLabel.A1
        if red > 0:
            return CellLabel.A6
        blue = (z - cls.blue_z(y)).sign()
        if blue == 0:
            raise OnBoundary("blue", (y, z))
        return CellLabel.A3 if blue > 0 else CellLabel.A5


def cell_of(y: FieldNumber, z: FieldNumber) -> CellLabel:
    """Label of the open cell containing (y, z); OnBoundary on a curve."""
    return FacePartition.assign(y, z)


@dataclass(frozen=True)
class ReturnWords:
    """Return words of a marker letter plus the trailing partial block."""

    blocks: tuple[str, ...]
    trailing: str
    letter: str


def return_words(word: str, letter: str = "a") -> ReturnWords:
    """Blocks from each marker occurrence to just before the next.

    The final stretch, which is only bounded by the window and not by a
    further occurrence, is reported as trailing, not as a return word.
    """
    positions = [i for i, ch in enumerate(word) if ch == letter]
    if len(positions) < 2:
        raise InsufficientOccurrences(
            f"need at least two occurrences of {letter!r}, found {len(positions)}"
        )
    blocks = tuple(
        word[lo:hi] for lo, hi in zip(positions, positions[1:])
    )
    return ReturnWords(blocks=blocks, trailing=word[positions[-1] :], letter=letter)


def first_return_word(word: str, letter: str = "a") -> str:
    return return_words(word, letter).blocks[0]


def translation_step(r: Fraction) -> FieldNumber:
    """The rotation step theta_2 / r reduced mod 1; 2*phi - 3 for r = 1/2."""
    return reduce_mod1((PHI - 1) / FieldNumber(Fraction(r)))


def kth_return_prediction(
    m: StartPoint, k: int, r: Fraction = Fraction(1, 2)
) -> CellLabel:
    """Cell predicted to emit the (k+1)-th return word of the trace of m.

    Consecutive face hits translate (Y, Z) by (+d, -d) with
    d = theta_2 / r, so the prediction is the cell at the k-fold
    translate.  The cell table itself is the r = 1/2 one; for other r
    it still names a region but the block it stands for must be read
    empirically (see predict_return_word).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    step = translation_step(r)
    y = reduce_mod1(m.y + k * step)
    z = reduce_mod1(m.z - k * step)
    return cell_of(y, z)


def predict_return_word(m: StartPoint, k: int, r: Fraction = Fraction(1, 2)) -> str:
    """The predicted (k+1)-th return word itself, for any family member.

    With r = 1/2 this is the block table applied to the predicted cell.
    For other r the cells are not hard-coded; the prediction falls back
    to tracing a short word from the translated face point, which is
    exactly the translation property read forwards.
    """
    if r == Fraction(1, 2):
        return kth_return_prediction(m, k, r).word
    step = translation_step(r)
    y = reduce_mod1(m.y + k * step)
    z = reduce_mod1(m.z - k * step)
    probe = trace_letters(StartPoint(0, y, z), Direction(r), length=32)
    return first_return_word(probe)


@dataclass(frozen=True)
class CirclePartition:
    """Interval partition of the circle s = Y + Z mod 1, indexed by Y.

    cuts are the interior discontinuities in (0, 1), sorted; the wrap
    point Y = 0 always starts a fresh interval (the two columns of the
    face carry disjoint label sets, so the seam there is genuine) and
    is not listed.  Interval i is [cut_{i-1}, cut_i) with the implicit
    endpoints 0 and 1, so k = len(cuts) + 1.
    """

    s: FieldNumber
    cuts: tuple[FieldNumber, ...]
    labels: tuple[CellLabel, ...]

    @property
    def k(self) -> int:
        return len(self.labels)

    def interval_of(self, y: FieldNumber) -> int:
        """Index of the interval containing y; HitsCut on a cut point."""
        if y < 0 or y >= 1:
            raise ValueError(f"circle position {y} outside [0, 1)")
        index = 0
        for cut in self.cuts:
            relation = (y - cut).sign()
            if relation == 0:
                raise HitsCut(cut)
            if relation < 0:
                break
            index += 1
        return index

    def label_of(self, y: FieldNumber) -> CellLabel:
        return self.labels[self.interval_of(y)]

    def lengths(self) -> tuple[FieldNumber, ...]:
        bounds = (FieldNumber(0),) + self.cuts + (FieldNumber(1),)
        return tuple(hi - lo for lo, hi in zip(bounds, bounds[1:]))

    def point_on_circle(self, y: FieldNumber) -> tuple[FieldNumber, FieldNumber]:
        return y, reduce_mod1(self.s - y)


def _circle_cut_candidates(s: FieldNumber) -> Iterator[tuple[str, FieldNumber]]:
    """Exact intersections of the circle with the seam and the four curves.

    The circle is z(y) = s - y + e with branch e = 0 on y in [0, s] and
    e = 1 on y in (s, 1).  Each curve is solved against both branches;
    solutions outside their branch are discarded.  The anti-diagonal
    never crosses transversally (for s = 0 the circle lies inside it),
    so it contributes no cuts.
    """
    one = FieldNumber(1)

    def branch_holds(y: FieldNumber, e: int) -> bool:
        if y < 0 or y >= 1:
            return False
        if e == 0:
            return y <= s
        return y > s

    if s != 0:
        yield "seam", s
    horizontal = reduce_mod1(s - FacePartition.HORIZONTAL_Z)
    yield "horizontal", horizontal
    yield "vertical", FacePartition.VERTICAL_Y
    slope = FacePartition.LINE_SLOPE
    for e in (0, 1):
        red = (s + e - 2 + PHI) * slope
        if branch_holds(red, e):
            yield "red", red
        blue = (s + e - 3 + 2 * PHI) * slope
        if branch_holds(blue, e) and FacePartition.VERTICAL_Y < blue < one:
            yield "blue", blue


def circle_partition(s: FieldNumber) -> CirclePartition:
    """Partition of the circle with invariant s into labeled intervals.

    Cut candidates that coincide exactly (special circles run through
    multiple-curve intersection points) would bound zero-length
    intervals; they are merged and logged rather than kept.
    """
    if not isinstance(s, FieldNumber):
        s = FieldNumber(s)
    if s < 0 or s >= 1:
        raise ValueError(f"circle invariant {s} outside [0, 1)")
    candidates: list[tuple[str, FieldNumber]] = []
    for curve, y in _circle_cut_candidates(s):
        if y == 0:
            logger.info("circle s=%s: %s cut sits on the wrap point, dropped", s, curve)
            continue
        candidates.append((curve, y))
    candidates.sort(key=lambda item: item[1])
    cuts: list[FieldNumber] = []
    for curve, y in candidates:
        if cuts and cuts[-1] == y:
            logger.info(
                "circle s=%s: %s cut coincides with %s, zero-length interval dropped",
                s,
                curve,
                y,
            )
            continue
        cuts.append(y)
    bounds = [FieldNumber(0)] + cuts + [FieldNumber(1)]
    labels = []
    for lo, hi in zip(bounds, bounds[1:]):
        mid = (lo + hi) / 2
        labels.append(cell_of(mid, reduce_mod1(s - mid)))
    partition = CirclePartition(s=s, cuts=tuple(cuts), labels=tuple(labels))
    if partition.k not in (3, 5, 6):
        raise ValueError(f"circle s={s} produced k={partition.k}, expected 3, 5 or 6")
    return partition


def reconstruct(m: StartPoint, n_letters: int) -> str:
    """Billiard word rebuilt from the circle coding instead of tracing.

    Builds the partition of the circle s = y + z mod 1, codes the
    rotation orbit of y(m), maps each interval label to its block and
    concatenates.  Independent of the crossing engine end to end, which
    is the point: the two pipelines must produce identical words.
    """
    from .rotation import TRANSLATION_ANGLE, code_orbit

    if n_letters < 0:
        raise ValueError("n_letters must be nonnegative")
    if m.x != 0:
        raise ValueError("reconstruction starts from the face X = 0")
    s = reduce_mod1(m.y + m.z)
    partition = circle_partition(s)
    blocks_needed = n_letters // 2 + 2
    labels = code_orbit(m.y, partition, TRANSLATION_ANGLE, blocks_needed)
    return "".join(label.word for label in labels)[:n_letters]


def empirical_cells(
    r: Fraction, grid: int = 20, word_length: int = 32
) -> dict[str, list[tuple[Fraction, Fraction]]]:
    """First-return words observed on a rational grid of face points.

    This is the supported route to the cell structure for family
    members other than r = 1/2: the cells are whatever regions the
    observed first return words cut out.  Grid points whose traces are
    invalid or too short to close a return are skipped.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    direction = Direction(r)
    found: dict[str, list[tuple[Fraction, Fraction]]] = {}
    for i in range(1, grid):
        for j in range(1, grid):
            y = Fraction(i, grid)
            z = Fraction(j, grid)
            word = trace_letters(StartPoint(0, y, z), direction, length=word_length)
            try:
                block = first_return_word(word)
            except InsufficientOccurrences:
                continue
            found.setdefault(block, []).append((y, z))
    return found
