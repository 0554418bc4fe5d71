"""FQ-legal decompositions of integers into quilt terms.

A decomposition n = q_{l1} + ... + q_{lt} (indices strictly decreasing) is
FQ-legal when no two indices differ by 0, 1, 3 or 4, and indices 1 and 3
are not both present.  Unlike Zeckendorf representations these are not
unique: 8 = 7+1 = 5+3 both qualify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .sequence import QuiltSequence, generate

_FORBIDDEN_GAPS = frozenset((0, 1, 3, 4))


@dataclass(frozen=True)
class Decomposition:
    """Strictly decreasing index tuple plus the value it sums to."""

    indices: tuple[int, ...]
    value: int

    def __post_init__(self):
        if any(a <= b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"indices must be strictly decreasing: {self.indices}")

    @property
    def term_count(self) -> int:
        return len(self.indices)

    def values(self, seq: QuiltSequence) -> tuple[int, ...]:
        return tuple(seq.value(i) for i in self.indices)


def is_fq_legal(indices: Iterable[int]) -> bool:
    """True iff the index set satisfies both FQ-legality conditions."""
    idx = sorted(indices)
    if not idx or idx[0] < 1:
        raise ValueError("indices must be nonempty and >= 1")
    if 1 in idx and 3 in idx:
        return False
    for a, b in zip(idx, idx[1:]):
        if b - a in _FORBIDDEN_GAPS:
            return False
    # two consecutive gaps of 2 produce a forbidden distance of 4; anything
    # farther apart in the sorted list is at distance >= 6 once pairs pass
    for a, c in zip(idx, idx[2:]):
        if c - a in _FORBIDDEN_GAPS:
            return False
    return True


def _seq_for(n: int, seq: QuiltSequence | None) -> QuiltSequence:
    if seq is not None and seq.terms[-1] >= n:
        return seq
    k = 5
    while generate(k).terms[-1] < n:
        k += 5
    return generate(k)


def enumerate_decompositions(n: int, seq: QuiltSequence | None = None) -> list[Decomposition]:
    """All FQ-legal decompositions of n, sorted by decreasing-index tuple.

    Depth-first over indices in decreasing order.  Legality is checked
    incrementally: a new (smaller) index only needs comparing against the
    two most recently chosen ones, since anything chosen earlier is at
    distance >= 5, plus the global {1,3} exclusion.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    seq = _seq_for(n, seq)
    terms = seq.terms
    top = max(i for i in range(1, len(terms) + 1) if terms[i - 1] <= n)
    # prefix[i] = q_1 + ... + q_i, for the cannot-reach prune
    prefix = [0]
    for v in terms[:top]:
        prefix.append(prefix[-1] + v)

    out: list[tuple[int, ...]] = []

    def extend(remaining: int, max_idx: int, chosen: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(chosen))
            return
        for i in range(min(max_idx, top), 0, -1):
            v = terms[i - 1]
            if v > remaining:
                continue
            if prefix[i] < remaining:
                break  # even taking everything below i cannot reach remaining
            if chosen:
                if chosen[-1] - i in _FORBIDDEN_GAPS:
                    continue
                if len(chosen) > 1 and chosen[-2] - i in _FORBIDDEN_GAPS:
                    continue
            if i == 1 and 3 in chosen:
                continue
            chosen.append(i)
            extend(remaining - v, i - 1, chosen)
            chosen.pop()

    extend(n, top, [])
    out.sort()
    return [Decomposition(indices=idx, value=n) for idx in out]


def extremal_counts(n: int, seq: QuiltSequence | None = None) -> tuple[int, int]:
    """(L, l): the maximum and minimum term counts over all decompositions of n."""
    decomps = enumerate_decompositions(n, seq)
    counts = [d.term_count for d in decomps]
    return max(counts), min(counts)


def brute_force_decompositions(n: int, seq: QuiltSequence | None = None) -> list[tuple[int, ...]]:
    """Independent oracle: scan every index subset with terms <= n.

    Subsets are walked one include/exclude decision at a time with only a
    value cutoff; each complete subset is judged by is_fq_legal.  No
    distance-based pruning, so this stays independent of the DFS above.
    """
    seq = _seq_for(n, seq)
    terms = seq.terms
    top = max(i for i in range(1, len(terms) + 1) if terms[i - 1] <= n)
    out: list[tuple[int, ...]] = []

    def scan(i: int, total: int, subset: list[int]) -> None:
        if total == n and subset and is_fq_legal(subset):
            out.append(tuple(sorted(subset, reverse=True)))
        if i > top or total >= n:
            return
        scan(i + 1, total, subset)
        if total + terms[i - 1] <= n:
            subset.append(i)
            scan(i + 1, total + terms[i - 1], subset)
            subset.pop()

    scan(1, 0, [])
    return sorted(out)


def sequence_from_definition(count: int) -> list[int]:
    """Regrow the sequence from its defining property, as an oracle.

    Scans m = 1, 2, 3, ... and appends m whenever it has no FQ-legal
    decomposition over the terms collected so far (with their positions as
    indices).  The first integer skipped is 6 = 2 + 4.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    terms: list[int] = []

    def representable(m: int) -> bool:
        def rec(remaining: int, max_idx: int, chosen: list[int]) -> bool:
            if remaining == 0:
                return True
            for i in range(max_idx, 0, -1):
                if terms[i - 1] > remaining:
                    continue
                if chosen:
                    if chosen[-1] - i in _FORBIDDEN_GAPS:
                        continue
                    if len(chosen) > 1 and chosen[-2] - i in _FORBIDDEN_GAPS:
                        continue
                if i == 1 and 3 in chosen:
                    continue
                chosen.append(i)
                if rec(remaining - terms[i - 1], i - 1, chosen):
                    chosen.pop()
                    return True
                chosen.pop()
            return False

        return rec(m, len(terms), [])

    m = 0
    while len(terms) < count:
        m += 1
        if not representable(m):
            terms.append(m)
    return terms
