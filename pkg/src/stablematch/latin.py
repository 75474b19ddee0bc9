"""Backtracking generation and counting of Latin squares.

Squares are returned as ``(n, n)`` int8 arrays with symbols 0..n-1.  Read as
a 0-based rating matrix, a Latin square is a men's (or women's) preference
matrix in which the people ranked k are all different for every k.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Iterator

import numpy as np


def iter_latin_squares(n: int) -> Iterator[np.ndarray]:
    """Yield every Latin square of order n in lexicographic (row-major) order."""
    full = (1 << n) - 1
    grid = np.zeros((n, n), dtype=np.int8)
    rows = [0] * n
    cols = [0] * n

    def fill(cell: int):
        if cell == n * n:
            yield grid.copy()
            return
        i, j = divmod(cell, n)
        free = full & ~rows[i] & ~cols[j]
        for s in range(n):
            bit = 1 << s
            if free & bit:
                grid[i, j] = s
                rows[i] |= bit
                cols[j] |= bit
                yield from fill(cell + 1)
                rows[i] ^= bit
                cols[j] ^= bit

    yield from fill(0)


@lru_cache(maxsize=None)
def latin_square_array(n: int) -> np.ndarray:
    """All Latin squares of order n stacked into shape ``(L_n, n, n)``.  Read-only."""
    if n > 5:
        raise ValueError("materialising every Latin square is limited to n <= 5")
    arr = np.stack(list(iter_latin_squares(n))) if n else np.zeros((0, 0, 0), np.int8)
    arr.setflags(write=False)
    return arr


def count_latin_squares(n: int, reduced: bool = False) -> int:
    """Count Latin squares of order n by backtracking.

    With ``reduced=True`` only squares whose first row and column are
    0, 1, ..., n-1 are counted.
    """
    if n < 1:
        raise ValueError("n must be positive")
    full = (1 << n) - 1
    rows = [0] * n
    cols = [0] * n
    grid = [[0] * n for _ in range(n)]
    start = 0
    if reduced:
        for s in range(n):
            grid[0][s] = grid[s][0] = s
            rows[0] |= 1 << s
            cols[s] |= 1 << s
            rows[s] |= 1 << s
            cols[0] |= 1 << s
        start = n + 1

    def count(cell: int) -> int:
        if cell == n * n:
            return 1
        i, j = divmod(cell, n)
        if reduced and j == 0:
            return count(cell + 1)
        free = full & ~rows[i] & ~cols[j]
        total = 0
        while free:
            bit = free & -free
            free ^= bit
            rows[i] |= bit
            cols[j] |= bit
            total += count(cell + 1)
            rows[i] ^= bit
            cols[j] ^= bit
        return total

    if reduced and n == 1:
        return 1
    return count(start)


def count_via_reduced(n: int) -> int:
    """L_n = n! (n-1)! times the number of reduced squares."""
    return factorial(n) * factorial(n - 1) * count_latin_squares(n, reduced=True)
