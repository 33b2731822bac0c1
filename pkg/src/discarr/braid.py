"""Braid words, the Artin action on free groups, and exact equality testing.

A braid word is a sequence of signed generator indices: +m for the positive
crossing of strands m and m+1, -m for its inverse.  Free group words use the
same encoding over generators 1..N.

Equality of braids is decided through the Artin representation: a braid acts
on the free group F_N by

    sigma_m:  x_m -> x_m x_{m+1} x_m^{-1},   x_{m+1} -> x_m,

all other generators fixed.  The representation is faithful and reduced free
words are unique, so two words are equal in the braid group exactly when the
generator images agree.  The same action produces the van Kampen relators of
the monodromy presentations, so one small engine serves both needs.

Convention: in a word, the leftmost letter acts first; the automorphism of a
word is built by substituting letter images left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]


def reduce_free(word: Iterable[int]) -> Word:
    """Freely reduce a word (cancel adjacent x x^-1 pairs)."""
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("0 is not a generator letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def concat(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        out.extend(w)
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on `strands` strands."""

    strands: int
    letters: Word

    def __post_init__(self):
        for x in self.letters:
            if not 1 <= abs(x) <= self.strands - 1:
                raise ValueError(f"letter {x} out of range for {self.strands} strands")

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, invert(self.letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("strand count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)


def halftwist(start: int, size: int) -> Word:
    """Positive half twist on the consecutive strands start..start+size-1.

    The standard word (s_1)(s_2 s_1)...(s_{size-1} ... s_1), shifted; its
    underlying permutation reverses the block.  Length size*(size-1)/2.
    """
    word: list[int] = []
    for stage in range(1, size):
        for j in range(stage, 0, -1):
            word.append(start + j - 1)
    return tuple(word)


def full_twist(n: int) -> Word:
    """The full twist on n strands (square of the global half twist)."""
    half = halftwist(1, n)
    return half + half


def permutation(word: Sequence[int], n: int) -> tuple[int, ...]:
    """Strand permutation of a braid word: position i ends at result[i-1]."""
    perm = list(range(1, n + 1))
    for x in word:
        m = abs(x)
        perm[m - 1], perm[m] = perm[m], perm[m - 1]
    return tuple(perm)


def _substitute(letter: int, word: Word) -> Word:
    """Apply one Artin generator's automorphism to a free group word."""
    m = abs(letter)
    out: list[int] = []
    if letter > 0:
        # x_m -> x_m x_{m+1} x_m^-1, x_{m+1} -> x_m
        for x in word:
            g = abs(x)
            if g == m:
                rep = (m, m + 1, -m) if x > 0 else (m, -(m + 1), -m)
            elif g == m + 1:
                rep = (m,) if x > 0 else (-m,)
            else:
                rep = (x,)
            for y in rep:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
    else:
        # inverse: x_m -> x_{m+1}, x_{m+1} -> x_{m+1}^-1 x_m x_{m+1}
        for x in word:
            g = abs(x)
            if g == m:
                rep = (m + 1,) if x > 0 else (-(m + 1),)
            elif g == m + 1:
                rep = (-(m + 1), m, m + 1) if x > 0 else (-(m + 1), -m, m + 1)
            else:
                rep = (x,)
            for y in rep:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
    return tuple(out)


def artin_images(word: Sequence[int], n: int) -> list[Word]:
    """Reduced images of the free generators x_1..x_n under the braid word."""
    images: list[Word] = [(j,) for j in range(1, n + 1)]
    for letter in word:
        images = [_substitute(letter, w) for w in images]
    return images


def braids_equal(w1: Sequence[int], w2: Sequence[int], n: int) -> bool:
    """Exact braid group equality via the faithful Artin representation."""
    return artin_images(reduce_free(w1), n) == artin_images(reduce_free(w2), n)


def smith_invariants(matrix: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (Smith normal form)."""
    work = [row[:] for row in matrix]
    rows = len(work)
    cols = len(work[0]) if rows else 0
    invariants: list[int] = []
    top = 0
    while top < rows and top < cols:
        # find a nonzero entry to pivot on
        pr = pc = -1
        for i in range(top, rows):
            for j in range(top, cols):
                if work[i][j]:
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        work[top], work[pr] = work[pr], work[top]
        for row in work:
            row[top], row[pc] = row[pc], row[top]
        while True:
            # clear column by remainders until everything divides
            for i in range(top + 1, rows):
                if work[i][top]:
                    q = work[i][top] // work[top][top]
                    for j in range(top, cols):
                        work[i][j] -= q * work[top][j]
                    if work[i][top]:
                        work[top], work[i] = work[i], work[top]
                        break
            else:
                for j in range(top + 1, cols):
                    if work[top][j]:
                        q = work[top][j] // work[top][top]
                        for i in range(top, rows):
                            work[i][j] -= q * work[i][top]
                        if work[top][j]:
                            for row in work:
                                row[top], row[j] = row[j], row[top]
                            break
                else:
                    break
        invariants.append(abs(work[top][top]))
        top += 1
    # normalize the diagonal into a divisibility chain d1 | d2 | ...
    from math import gcd, lcm

    changed = True
    while changed:
        changed = False
        for i in range(len(invariants) - 1):
            a, b = invariants[i], invariants[i + 1]
            if b % a:
                invariants[i], invariants[i + 1] = gcd(a, b), lcm(a, b)
                changed = True
    return invariants
