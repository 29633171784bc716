"""Packed binary words and finite grids.

A Word stores its cells as bits of a single Python integer, little-endian:
bit ``i`` of ``bits`` is cell ``i``, so the integer value of a word is the
word read as a little-endian number.  Text form puts cell 0 leftmost, e.g.
``Word.from_text("110")`` has cells (1, 1, 0) and ``bits == 0b011 == 3``.

All values here are immutable; every function is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Word:
    """A finite sequence of cells in {0, 1}, packed into one integer."""

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits 0x{self.bits:x} do not fit in {self.length} cells")

    @classmethod
    def from_bits(cls, cells: Iterable[int]) -> "Word":
        bits = 0
        n = 0
        for c in cells:
            if c not in (0, 1):
                raise ValueError(f"cell value {c!r} is not a bit")
            bits |= c << n
            n += 1
        return cls(bits, n)

    @classmethod
    def from_text(cls, text: str) -> "Word":
        """Parse a string of '0'/'1' characters, cell 0 first."""
        return cls.from_bits(int(ch) for ch in text)

    @classmethod
    def zeros(cls, n: int) -> "Word":
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> "Word":
        return cls((1 << n) - 1, n)

    @property
    def text(self) -> str:
        return "".join(str(self[i]) for i in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"cell {i} out of range for length {self.length}")
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.length))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Word.from_text({self.text!r})"

    def concat(self, other: "Word") -> "Word":
        return Word(self.bits | other.bits << self.length, self.length + other.length)


CYCLIC = "cyclic"
OPEN = "open"


@dataclass(frozen=True)
class Grid:
    """A configuration on a finite grid.

    Cyclic grids wrap around (indices modulo the length) and keep their
    length under stepping; open grids lose one cell per side per step.
    """

    cells: Word
    boundary: str = CYCLIC

    def __post_init__(self):
        if self.boundary not in (CYCLIC, OPEN):
            raise ValueError(f"unknown boundary {self.boundary!r}")

    def __len__(self) -> int:
        return len(self.cells)
