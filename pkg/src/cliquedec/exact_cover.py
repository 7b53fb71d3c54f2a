"""Generic exact-cover solution counting over bitmask rows.

Columns are bit positions 0..num_columns-1; each row is an int whose set bits
are the columns it covers. A solution is a set of rows whose masks are
disjoint and union to the full column set. Branching always picks the
uncovered column with the fewest compatible rows, and subproblem counts are
memoized on the remaining-column mask (counts depend on nothing else).
"""

from __future__ import annotations

from typing import Sequence

__all__ = ["count_exact_covers"]


def count_exact_covers(num_columns: int, rows: Sequence[int]) -> int:
    if num_columns < 0:
        raise ValueError("column count must be nonnegative")
    full = (1 << num_columns) - 1
    column_rows: list[list[int]] = [[] for _ in range(num_columns)]
    for row in rows:
        if row == 0:
            raise ValueError("empty rows are not allowed")
        if row & ~full:
            raise ValueError("row covers a column outside the universe")
        mask = row
        while mask:
            low = mask & -mask
            column_rows[low.bit_length() - 1].append(row)
            mask ^= low

    memo: dict[int, int] = {}

    def solve(remaining: int) -> int:
        if remaining == 0:
            return 1
        cached = memo.get(remaining)
        if cached is not None:
            return cached
        best: list[int] | None = None
        mask = remaining
        while mask:
            low = mask & -mask
            mask ^= low
            candidates = [
                r for r in column_rows[low.bit_length() - 1] if r & ~remaining == 0
            ]
            if best is None or len(candidates) < len(best):
                best = candidates
                if not best:
                    break
        total = 0
        for row in best or ():
            total += solve(remaining & ~row)
        memo[remaining] = total
        return total

    return solve(full)
