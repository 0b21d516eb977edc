"""Pure-Python enumeration kernels.

Reference implementation of the routines in ``_kernels.pyx``.  Both modules
must return identical results, in identical order; tests compare them.

All tuples are multisets of indices, enumerated as non-decreasing index
sequences in lexicographic order.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Sequence


def tuples_with_sum_at_most(weights: Sequence[int], length: int, bound: int) -> list[tuple[int, ...]]:
    """Index multisets of size ``length`` whose weight sum is ``<= bound``.

    ``weights`` must be sorted in non-decreasing order; this is what makes the
    pruning exact (the cheapest continuation from index ``j`` repeats ``j``).
    """
    m = len(weights)
    if any(weights[i] > weights[i + 1] for i in range(m - 1)):
        raise ValueError("weights must be sorted in non-decreasing order")
    if length <= 0:
        return [()] if bound >= 0 else []
    out: list[tuple[int, ...]] = []
    idx = [0] * length

    def extend(pos: int, start: int, partial: int) -> None:
        remaining = length - pos
        for j in range(start, m):
            if partial + remaining * weights[j] > bound:
                break
            idx[pos] = j
            if remaining == 1:
                out.append(tuple(idx))
            else:
                extend(pos + 1, j, partial + weights[j])

    extend(0, 0, 0)
    return out


def first_failing_tuple(
    values: Sequence[Sequence[int]], length: int, offset: Sequence[int]
) -> tuple[tuple[int, ...] | None, int]:
    """First index multiset whose summed functional values plus ``offset`` go negative.

    ``values[i][t]`` is the value of functional ``t`` on candidate ``i``.
    Returns ``(tuple_or_None, number_of_tuples_examined)``.
    """
    k = len(offset)
    count = 0
    for combo in combinations_with_replacement(range(len(values)), length):
        count += 1
        for t in range(k):
            s = offset[t]
            for i in combo:
                s += values[i][t]
            if s < 0:
                return combo, count
    return None, count


def min_form_in_box(
    gram: Sequence[Sequence[int]], functionals: Sequence[Sequence[int]], bound: int
) -> tuple[int, tuple[int, ...]] | None:
    """Minimum of ``xᵀ·gram·x`` over ``x ∈ [−bound, bound]^r`` with every ``f·x > 0`` and ``xᵀGx > 0``.

    Returns ``(minimum, first minimiser in lexicographic order)`` or ``None``.
    """
    r = len(gram)
    best: tuple[int, tuple[int, ...]] | None = None
    for x in product(range(-bound, bound + 1), repeat=r):
        if any(sum(f[i] * x[i] for i in range(r)) <= 0 for f in functionals):
            continue
        q = 0
        for i in range(r):
            if x[i]:
                row = gram[i]
                q += x[i] * sum(row[j] * x[j] for j in range(r))
        if q <= 0:
            continue
        if best is None or q < best[0]:
            best = (q, x)
    return best
