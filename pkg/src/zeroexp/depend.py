"""Dependency structure of coordinates under the non-stationary measure.

Skeleton coordinates (positions j with w_j = 1) are tied together through
the negated second halves of every block. A skeleton index i = sum gamma_t p(0,t)
has mixed-radix digits gamma_t < 2 b_{t+1}; since every b is a power of two,
the digits are bit fields of i and the top bit of each field says whether the
coordinate sits in the negated half of its level-(t+1) block. Clearing those
bits gives the reduced digits (the dependency class); their popcount parity
says how many negations separate the coordinate from its class representative.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .params import DepthError, ProcessParams
from .ruler import block_index, first_index_at_or_after, skeleton_index, z


@dataclass(frozen=True)
class SkeletonIndex:
    position: int
    index: int
    digits: tuple[int, ...]


@dataclass(frozen=True)
class DependencyClassId:
    reduced: tuple[int, ...]
    parity: int

    @property
    def key(self) -> tuple[int, ...]:
        return self.reduced


def _check_index(i: int, params: ProcessParams) -> None:
    if i >= params.index_limit:
        raise DepthError(
            f"skeleton index {i} needs level {params.depth + 1} (limit p(0,{params.depth}) = {params.index_limit})"
        )


def digits(i: int, params: ProcessParams) -> tuple[int, ...]:
    """Mixed-radix digits of skeleton index i (radix 2 b_{t+1} at level t)."""
    _check_index(i, params)
    s = params.digit_offsets
    return tuple((i >> s[t]) & ((1 << (s[t + 1] - s[t])) - 1) for t in range(params.depth))


def phi(gamma: Iterable[int], params: ProcessParams) -> int:
    """Position sum_t z_t(gamma_t) of the skeleton coordinate with the given digits."""
    return sum(z(t, g, params) for t, g in enumerate(gamma))


def skeleton_info(j: int, params: ProcessParams) -> SkeletonIndex:
    i = skeleton_index(j)
    if i is None:
        raise ValueError(f"position {j} is not a skeleton coordinate (w_{j} = 0)")
    return SkeletonIndex(j, i, digits(i, params))


def class_key(i: int, params: ProcessParams) -> int:
    """Index i with every half-flag bit removed (dense id of its class)."""
    _check_index(i, params)
    out = 0
    shift = 0
    s = params.digit_offsets
    for t, be in enumerate(params.beta):
        out |= ((i >> s[t]) & ((1 << be) - 1)) << shift
        shift += be
    return out


def parity(i: int, params: ProcessParams) -> int:
    _check_index(i, params)
    return (i & params.half_mask).bit_count() & 1


def class_of(j: int, params: ProcessParams) -> DependencyClassId:
    """Dependency class of skeleton position j with its negation parity."""
    info = skeleton_info(j, params)
    reduced = tuple(g % bn for g, bn in zip(info.digits, params.b))
    par = sum(g // bn for g, bn in zip(info.digits, params.b)) & 1
    return DependencyClassId(reduced, par)


def class_arrays(indices: np.ndarray, params: ProcessParams) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised class_key and parity for an int64 array of skeleton indices."""
    indices = np.asarray(indices, dtype=np.int64)
    if indices.size and int(indices.max()) >= min(params.index_limit, 1 << 62):
        raise DepthError("skeleton index beyond configured depth or int64 range")
    key = np.zeros_like(indices)
    shift = 0
    s = params.digit_offsets
    for t, be in enumerate(params.beta):
        key |= ((indices >> s[t]) & ((1 << be) - 1)) << shift
        shift += be
    half = np.int64(params.half_mask & ((1 << 62) - 1))
    par = (np.bitwise_count(indices & half) & 1).astype(np.uint8)
    return key, par


def direct_dependent(i: int, j: int, params: ProcessParams) -> bool:
    """(i, j) in D: both skeleton coordinates inside one level-k block at distance (a_k - 1)/2."""
    if skeleton_index(i) is None or skeleton_index(j) is None:
        return False
    lo, hi = min(i, j), max(i, j)
    for k in range(params.depth + 1):
        ak = params.a[k]
        if hi - lo != (ak - 1) // 2:
            continue
        m = block_index(k, lo, params)
        start = z(k, m, params)
        if start <= lo and hi < start + ak:
            return True
    return False


class UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def groups(self) -> list[frozenset[int]]:
        out: dict[int, set[int]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return [frozenset(g) for g in out.values()]


def closure_classes(stop: int, params: ProcessParams) -> list[frozenset[int]]:
    """Transitive closure of direct dependency on Q ∩ [0, stop), by brute force.

    Small-instance oracle only: quadratic in the number of coordinates.
    """
    q = [int(x) for x in range(stop) if skeleton_index(x) is not None]
    uf = UnionFind(q)
    for a_i, x in enumerate(q):
        for y in q[a_i + 1:]:
            if direct_dependent(x, y, params):
                uf.union(x, y)
    return uf.groups()


def d_count(positions: Iterable[int], params: ProcessParams) -> int:
    """Number of dependency classes meeting the given positions."""
    keys = set()
    for pos in positions:
        i = skeleton_index(pos)
        if i is not None:
            keys.add(class_key(i, params))
    return len(keys)


def d_count_interval(start: int, stop: int, params: ProcessParams) -> int:
    """Number of dependency classes meeting [start, stop), without listing the coordinates.

    The skeleton indices in the interval form a contiguous range; cut it into
    aligned dyadic blocks. Each block maps onto an aligned interval of class
    keys (the low bits run freely once the half flags are dropped), so the
    answer is the total length of a union of at most ~2 log(stop) intervals.
    """
    if stop <= start:
        return 0
    lo, hi = first_index_at_or_after(start), first_index_at_or_after(stop)
    if hi <= lo:
        return 0
    _check_index(hi - 1, params)
    half = params.half_mask
    pieces = []
    x = lo
    while x < hi:
        size = (x & -x) if x else 1 << (hi.bit_length())
        while size > hi - x:
            size >>= 1
        s = size.bit_length() - 1
        free = s - (half & (size - 1)).bit_count()
        base = class_key(x, params)
        pieces.append((base, base + (1 << free)))
        x += size
    pieces.sort()
    total, cur_lo, cur_hi = 0, None, None
    for a_lo, a_hi in pieces:
        if cur_hi is None or a_lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = a_lo, a_hi
        else:
            cur_hi = max(cur_hi, a_hi)
    total += cur_hi - cur_lo
    return total


def partition_entropy_oracle(positions: Iterable[int], params: ProcessParams, cap: int = 1 << 20) -> float:
    """Shannon entropy (bits) of the coordinates ``positions`` under nu, by enumeration."""
    from .construct import enumerate_family

    positions = sorted(set(positions))
    if not positions:
        return 0.0
    need = positions[-1] + 1
    k = next((k for k in range(params.depth + 1) if params.a[k] >= need), None)
    if k is None:
        raise DepthError(f"window ends at {need}, beyond a_{params.depth} = {params.a[-1]}")
    words = enumerate_family(k, params, cap=cap)
    counts = Counter("".join(u[p] for p in positions) for u in words)
    n = len(words)
    return sum(c / n * math.log2(n / c) for c in counts.values())

