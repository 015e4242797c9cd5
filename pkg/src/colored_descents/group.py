"""Colored permutation groups and their descent statistics.

An r-colored permutation of {1,...,n} is a word of n letters, each a value
in {1,...,n} (every value exactly once) carrying a color in {0,...,r-1}.
Letters compare color-first:

    1_0 < 2_0 < ... < n_0 < 1_1 < ... < n_1 < ... < 1_{r-1} < ... < n_{r-1}

The word determines a bijection of the full colored alphabet via the
color-shift rule, and composition is function composition; colors add
modulo r along the way, so the same two words compose differently for
different r.  The descent set is read against the order above, with a
final letter of nonzero color counting as a descent at position n.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

DEFAULT_MAX_GROUP_SIZE = 10_000_000


class SizeCapExceeded(RuntimeError):
    """An enumeration or product would exceed the configured size cap."""


class ColoredLetter(NamedTuple):
    """A colored value; tuple order (color, value) is the comparison order."""

    color: int
    value: int

    def __str__(self) -> str:
        return f"{self.value}_{self.color}"

    def shifted(self, k: int, r: int) -> "ColoredLetter":
        """Copy of this letter with the color lowered by k modulo r."""
        return ColoredLetter((self.color - k) % r, self.value)


# A word is a plain tuple of letters.  Hot loops use raw (color, value)
# tuples, which hash and compare equal to ColoredLetter instances.
Word = tuple[ColoredLetter, ...]


def parse_letter(token: str) -> ColoredLetter:
    """Parse a ``value_color`` token such as ``2_1``."""
    value, sep, color = token.partition("_")
    if not sep or not value.isdigit() or not color.isdigit():
        raise ValueError(f"malformed letter {token!r}")
    return ColoredLetter(int(color), int(value))


def word_str(word: Word) -> str:
    return " ".join(str(ColoredLetter(*letter)) for letter in word)


@dataclass(frozen=True)
class ColoredPermutation:
    """An element of the r-colored permutation group in one-line notation."""

    r: int
    letters: Word

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("r must be at least 1")
        letters = tuple(ColoredLetter(*x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        n = len(letters)
        if sorted(x.value for x in letters) != list(range(1, n + 1)):
            raise ValueError(f"values of {word_str(letters)!r} are not 1..{n}")
        for x in letters:
            if not 0 <= x.color < self.r:
                raise ValueError(f"color of {x} out of range for r={self.r}")

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def underlying(self) -> tuple[int, ...]:
        """The value word, colors stripped."""
        return tuple(x.value for x in self.letters)

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(x.color for x in self.letters)

    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Key realizing the canonical enumeration order."""
        return (self.underlying, self.colors)

    def __str__(self) -> str:
        return word_str(self.letters)

    def __mul__(self, other: "ColoredPermutation") -> "ColoredPermutation":
        return compose(self, other)

    def inverse(self) -> "ColoredPermutation":
        return inverse(self)


def identity(r: int, n: int) -> ColoredPermutation:
    """The identity word ``1_0 2_0 ... n_0``."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    return ColoredPermutation(r, tuple(ColoredLetter(0, v) for v in range(1, n + 1)))


def _compose_words(r: int, sigma: Word, pi: Word) -> Word:
    out = []
    for pc, pv in pi:
        sc, sv = sigma[pv - 1]
        out.append(((pc + sc) % r, sv))
    return tuple(out)


def compose(sigma: ColoredPermutation, pi: ColoredPermutation) -> ColoredPermutation:
    """The product sigma*pi (pi applied first)."""
    if sigma.r != pi.r or sigma.n != pi.n:
        raise ValueError("cannot compose elements of different groups")
    return ColoredPermutation(sigma.r, _compose_words(sigma.r, sigma.letters, pi.letters))


def _inverse_word(r: int, word: Word) -> Word:
    out: list = [None] * len(word)
    for i, (c, v) in enumerate(word, start=1):
        out[v - 1] = ((-c) % r, i)
    return tuple(out)


def inverse(pi: ColoredPermutation) -> ColoredPermutation:
    return ColoredPermutation(pi.r, _inverse_word(pi.r, pi.letters))


def group_order(r: int, n: int) -> int:
    return r**n * math.factorial(n)


def enumerate_group(
    r: int, n: int, max_size: int = DEFAULT_MAX_GROUP_SIZE
) -> Iterator[ColoredPermutation]:
    """Yield all r^n * n! group elements in canonical order.

    Underlying permutations run in lexicographic order; for each, the color
    vector counts in base r with the least significant digit at position n.
    """
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    if group_order(r, n) > max_size:
        raise SizeCapExceeded(
            f"group of order {group_order(r, n)} exceeds cap {max_size}"
        )
    for values in itertools.permutations(range(1, n + 1)):
        for colors in itertools.product(range(r), repeat=n):
            yield ColoredPermutation(
                r, tuple(ColoredLetter(c, v) for v, c in zip(values, colors))
            )


def group_elements(
    r: int, n: int, max_size: int = DEFAULT_MAX_GROUP_SIZE
) -> list[ColoredPermutation]:
    return list(enumerate_group(r, n, max_size))


def internal_descent_positions(word: Word) -> frozenset[int]:
    """Positions i in [1, len-1] with word[i-1] > word[i] color-first."""
    return frozenset(
        i for i in range(1, len(word)) if word[i - 1] > word[i]
    )


def descent_positions(word: Word) -> frozenset[int]:
    """Internal descents plus len(word) when the last color is nonzero."""
    out = set(internal_descent_positions(word))
    if word and word[-1][0] != 0:
        out.add(len(word))
    return frozenset(out)


def word_des(word: Word) -> int:
    return len(descent_positions(word))


def word_intdes(word: Word) -> int:
    return len(internal_descent_positions(word))


@dataclass(frozen=True)
class DescentProfile:
    """Descent set of a word together with its internal restriction."""

    descent_set: frozenset[int]
    internal_descent_set: frozenset[int]

    @property
    def des(self) -> int:
        return len(self.descent_set)

    @property
    def intdes(self) -> int:
        return len(self.internal_descent_set)

    @classmethod
    def of_word(cls, word: Word) -> "DescentProfile":
        full = descent_positions(word)
        return cls(full, frozenset(i for i in full if i < len(word)))


def descent_profile(pi: ColoredPermutation) -> DescentProfile:
    return DescentProfile.of_word(pi.letters)


def descent_set_variant(pi: ColoredPermutation, a: int, b: int) -> frozenset[int]:
    """Descent positions in [0, n] with boundary letters 0_a and 0_b.

    With (a, b) = (0, 1) the result restricted to [n] is the ordinary
    descent set and 0 never occurs.
    """
    if not 0 <= a < pi.r or not 0 <= b < pi.r:
        raise ValueError(f"boundary colors must lie in [0, {pi.r - 1}]")
    padded = (ColoredLetter(a, 0),) + pi.letters + (ColoredLetter(b, 0),)
    return frozenset(i for i in range(pi.n + 1) if padded[i] > padded[i + 1])


@dataclass(frozen=True)
class ColoredComposition:
    """Lengths and colors of the maximal increasing monochromatic runs."""

    parts: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return sum(length for length, _ in self.parts)

    def __str__(self) -> str:
        return "|".join(f"{length}^{color}" for length, color in self.parts)


def mr_key(pi: ColoredPermutation) -> ColoredComposition:
    """Cut after every color change or same-color value descent."""
    parts: list[tuple[int, int]] = []
    run = 0
    for i, letter in enumerate(pi.letters):
        run += 1
        last = i + 1 == pi.n
        if not last:
            nxt = pi.letters[i + 1]
            cut = letter.color != nxt.color or letter.value > nxt.value
        if last or cut:
            parts.append((run, letter.color))
            run = 0
    return ColoredComposition(tuple(parts))


def parse_one_line(text: str, r: int) -> ColoredPermutation:
    """Parse space-separated ``value_color`` tokens; inverse of str()."""
    tokens = text.split()
    return ColoredPermutation(r, tuple(parse_letter(t) for t in tokens))


def permutation_to_json(pi: ColoredPermutation) -> dict:
    return {
        "r": pi.r,
        "n": pi.n,
        "letters": [[x.value, x.color] for x in pi.letters],
    }


def permutation_from_json(data: dict) -> ColoredPermutation:
    try:
        letters = tuple(
            ColoredLetter(color, value) for value, color in data["letters"]
        )
        r = int(data["r"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed permutation record: {exc}") from exc
    pi = ColoredPermutation(r, letters)
    if "n" in data and int(data["n"]) != pi.n:
        raise ValueError(f"declared n={data['n']} but {pi.n} letters given")
    return pi
