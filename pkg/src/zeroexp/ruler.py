"""The 2-adic ruler sequence, block position coefficients and the 0/1 skeleton."""

from __future__ import annotations

import numpy as np

from .params import DepthError, ProcessParams


def omega(n: int) -> int:
    """2-adic valuation of ``n`` (number of trailing zero bits)."""
    if n < 1:
        raise ValueError(f"omega is defined for n >= 1, got {n}")
    return (n & -n).bit_length() - 1


def omega_sum(i: int) -> int:
    """omega_1 + ... + omega_i in closed form (Legendre: i minus its popcount)."""
    if i < 0:
        raise ValueError("negative index")
    return i - i.bit_count()


def z(k: int, i: int, params: ProcessParams) -> int:
    """Start position of the i-th level-k block: i * a_k + omega_1 + ... + omega_i."""
    params.check_level(k)
    if i < 0:
        raise ValueError("negative multiplicity")
    return i * params.a[k] + omega_sum(i)


def z0(i: int) -> int:
    """Level-0 coefficient; independent of the multiplicities."""
    return 2 * i - i.bit_count()


def p(k: int, l: int, params: ProcessParams) -> int:
    """p(k, l) = prod_{i=1..l} 2 b_{k+i}."""
    if k < 0 or l < 0:
        raise ValueError("negative level")
    if k + l > params.depth:
        raise DepthError(f"p({k},{l}) needs b_{k + l}, depth is {params.depth}")
    out = 1
    for i in range(1, l + 1):
        out *= 2 * params.b[k + i - 1]
    return out


def block_index(k: int, pos: int, params: ProcessParams) -> int:
    """Largest m with z_k(m) <= pos."""
    if pos < 0:
        raise ValueError("negative position")
    step = params.a[k] + 1
    lo, hi = pos // step, pos // step + pos.bit_length() + 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if z(k, mid, params) <= pos:
            lo = mid
        else:
            hi = mid - 1
    return lo


def first_index_at_or_after(pos: int) -> int:
    """Smallest i with z_0(i) >= pos."""
    if pos <= 0:
        return 0
    lo, hi = pos // 2, pos // 2 + pos.bit_length() + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if z0(mid) >= pos:
            hi = mid
        else:
            lo = mid + 1
    return lo


def skeleton_index(pos: int) -> int | None:
    """The i with z_0(i) == pos, or None when the skeleton carries a 0 there."""
    i = first_index_at_or_after(pos)
    return i if z0(i) == pos else None


def skeleton_prefix(length: int) -> str:
    """First ``length`` symbols of w = 1 0^{omega_1} 1 0^{omega_2} ..."""
    if length < 0:
        raise ValueError("negative length")
    return "".join("1" if c else "0" for c in skeleton_array(length))


def skeleton_array(length: int) -> np.ndarray:
    """Skeleton prefix as a uint8 array of 0/1."""
    out = np.zeros(length, dtype=np.uint8)
    out[ones_positions(length)] = 1
    return out


def ones_positions(length: int) -> np.ndarray:
    """Positions z_0(0), z_0(1), ... below ``length`` as int64."""
    count = first_index_at_or_after(length)
    i = np.arange(count, dtype=np.int64)
    return 2 * i - np.bitwise_count(i).astype(np.int64)


def omega_array(count: int) -> np.ndarray:
    """omega_1 .. omega_count as uint8."""
    n = np.arange(1, count + 1, dtype=np.int64)
    return (np.bitwise_count((n & -n) - 1)).astype(np.uint8)


def nonoverlap_check(n: int, horizon: int) -> bool:
    """True iff equal length-n windows of omega_1..omega_horizon are at distance >= n.

    Two windows at distance d < n coincide exactly when the shifted sequences
    agree on a run of n consecutive indices, so it suffices to look at the
    longest agreement run for each shift d = 1..n-1.
    """
    if not 1 <= n <= horizon:
        raise ValueError("need 1 <= n <= horizon")
    seq = omega_array(horizon)
    for d in range(1, n):
        if horizon - d < n:
            break
        eq = seq[:-d] == seq[d:]
        if _longest_true_run(eq) >= n:
            return False
    return True


def _longest_true_run(mask: np.ndarray) -> int:
    if not mask.any():
        return 0
    padded = np.concatenate(([0], mask.astype(np.int8), [0]))
    edges = np.flatnonzero(np.diff(padded))
    return int((edges[1::2] - edges[::2]).max())
