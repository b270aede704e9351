"""Empirical weak-mixing averages alpha(n, [u], [v])."""

from __future__ import annotations

import numpy as np
from scipy.signal import fftconvolve

from .returns import Text, occurrence_mask


def lagged_joint_frequency(u: str, v: str, lags: int, text: Text) -> tuple[np.ndarray, float, float]:
    """Frequencies of [u] ∩ T^{-j}[v] for j = 1..lags, with the marginal frequencies of u and v.

    All lags use the same window of start positions so that the estimates
    are comparable; the correlation runs through an FFT.
    """
    iu = occurrence_mask(u, text).astype(np.float64)
    iv = occurrence_mask(v, text).astype(np.float64)
    width = min(iu.size, iv.size - lags)
    if width <= 0:
        raise ValueError("text too short for the requested lag range")
    a = iu[:width]
    b = iv[: width + lags]
    # corr[j] = sum_i a[i] * b[i + j]
    full = fftconvolve(b, a[::-1], mode="full")
    corr = np.rint(full[width - 1: width + lags]).astype(np.int64)
    return corr[1:] / width, float(a.mean()), float(iv[:width].mean())


def correlation_average(u: str, v: str, n: int, text: Text) -> float:
    """(1/n) sum_{j=1..n} |mu([u] ∩ T^{-j}[v]) - mu([u]) mu([v])| from occurrence counts."""
    joint, fu, fv = lagged_joint_frequency(u, v, n, text)
    return float(np.abs(joint - fu * fv).mean())


def correlation_profile(u: str, v: str, ns: list[int], text: Text) -> dict[int, float]:
    """alpha(n) for several n from one FFT pass at the largest lag."""
    top = max(ns)
    joint, fu, fv = lagged_joint_frequency(u, v, top, text)
    dev = np.abs(joint - fu * fv)
    csum = np.cumsum(dev)
    return {n: float(csum[n - 1] / n) for n in ns}
