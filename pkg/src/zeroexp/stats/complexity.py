"""Exact subword complexity of the language of the limit process."""

from __future__ import annotations

from ..construct import DEFAULT_CAP, enumerate_family
from ..params import DepthError, ProcessParams


def complexity_level(n: int, params: ProcessParams) -> int:
    """Least k >= 1 with a_k + 1 >= n: every length-n word then meets at most two level-k blocks."""
    for k in range(1, params.depth + 1):
        if params.a[k] + 1 >= n:
            return k
    raise DepthError(f"length {n} exceeds a_{params.depth} + 1")


def _affixes(words: list[str], n: int) -> tuple[list[int], list[int], list[str]]:
    """Distinct suffix counts of the cores, distinct prefix counts, and the cores."""
    cores = [u.rstrip("0") for u in words]
    top = max(len(c) for c in cores)
    suf = [0] + [len({c[-j:] for c in cores if len(c) >= j}) for j in range(1, min(n, top) + 1)]
    pre = [0] + [len({u[:j] for u in words}) for j in range(1, min(n, top) + 1)]
    return suf, pre, cores


def complexity(n: int, params: ProcessParams, cap: int = DEFAULT_CAP) -> int:
    """Number of distinct length-n words u with mu([u]) > 0.

    With k = complexity_level(n), a window of length n lies inside
    core(u) 0^R core(v) for some u, v in A_k, where core strips the trailing
    run 0^{s} of length s = log2 p(0, k) and R >= s. Every pair (u, v) and
    every such R occurs, since adjacent blocks are independent. Windows that
    see nonzero symbols of both blocks are split uniquely at the only bounded
    zero run of length >= s, so they are counted as products of distinct
    suffix and prefix counts; the remaining windows are listed directly.
    """
    if n < 1:
        raise ValueError("n must be positive")
    k = complexity_level(n, params)
    words = enumerate_family(k, params, cap=cap)
    s = params.digit_offsets[k]
    suf, pre, cores = _affixes(words, n)

    def count(table: list[int], j: int) -> int:
        return table[j] if j < len(table) else 0

    pre_cum = [0]
    for j in range(1, n + 1):
        pre_cum.append(pre_cum[-1] + count(pre, j))
    straddle = 0
    for len1 in range(1, n - s):
        straddle += count(suf, len1) * pre_cum[n - len1 - s]

    single = set()
    pad = "0" * n
    for c in cores:
        text = pad + c + pad
        for i in range(len(text) - n + 1):
            single.add(text[i:i + n])
    return straddle + len(single)


def language_oracle(n: int, params: ProcessParams, cap: int = DEFAULT_CAP) -> set[str]:
    """Brute force: distinct length-n windows of core(u) 0^R y over u in A_k and length-n block prefixes y."""
    k = complexity_level(n, params)
    words = enumerate_family(k, params, cap=cap)
    s = params.digit_offsets[k]
    cores = {u.rstrip("0") for u in words}
    heads = {u[:n] for u in words}
    seen = set()
    for x in cores:
        for y in heads:
            for r in range(s, s + n + 1):
                text = x + "0" * r + y
                for i in range(len(text) - n + 1):
                    seen.add(text[i:i + n])
    return seen


def complexity_oracle(n: int, params: ProcessParams, cap: int = DEFAULT_CAP) -> int:
    return len(language_oracle(n, params, cap))


def complexity_bound(k: int, params: ProcessParams) -> int:
    """2 a_k^2 (#A_k)^2, the counting bound for words of length a_k."""
    return 2 * params.a[k] ** 2 * params.card(k) ** 2
