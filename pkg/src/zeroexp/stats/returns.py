"""Occurrence scanning and empirical return/hitting-time distributions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..construct import check_word, to_array
from ..dyadic import DyadicRational

Text = str | np.ndarray


def _as_array(text: Text) -> np.ndarray:
    if isinstance(text, str):
        return to_array(text)
    return np.asarray(text, dtype=np.uint8)


def _as_texts(text: Text | Sequence[Text]) -> list[np.ndarray]:
    if isinstance(text, (str, np.ndarray)):
        return [_as_array(text)]
    return [_as_array(t) for t in text]


def occurrence_mask(u: str, text: Text) -> np.ndarray:
    """Boolean array, True at every start position of u in text."""
    check_word(u)
    if not u:
        raise ValueError("empty pattern")
    arr = _as_array(text)
    n = arr.size - len(u) + 1
    if n <= 0:
        return np.zeros(0, dtype=bool)
    mask = np.ones(n, dtype=bool)
    for j, c in enumerate(u):
        mask &= arr[j:j + n] == (ord(c) - ord("0"))
    return mask


def occurrences(u: str, text: Text) -> np.ndarray:
    """Sorted start positions of u in text (overlapping occurrences included)."""
    return np.flatnonzero(occurrence_mask(u, text))


@dataclass(frozen=True)
class EmpiricalCdf:
    """Right-continuous step CDF of rescaled times ``scale * times``.

    ``times`` are the distinct integer times (sorted) and ``counts`` their
    multiplicities; ``n_gaps`` is the number of return gaps the sample was
    built from, which is the effective sample size for error bars.
    ``censored`` samples are only known to exceed ``limit_steps``; the CDF is
    then exact up to ``limit`` and carries the censored mass beyond it.
    """

    times: np.ndarray
    counts: np.ndarray
    scale: float
    n_gaps: int
    censored: int = 0
    limit_steps: int | None = None

    @classmethod
    def from_samples(cls, samples: Iterable[int], scale: float = 1.0, n_gaps: int | None = None) -> EmpiricalCdf:
        arr = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples)
        if arr.size == 0:
            raise ValueError("empty sample")
        times, counts = np.unique(arr, return_counts=True)
        return cls(times, counts.astype(np.int64), float(scale), int(arr.size if n_gaps is None else n_gaps))

    @property
    def values(self) -> np.ndarray:
        return self.times * self.scale

    @property
    def total(self) -> int:
        return int(self.counts.sum()) + self.censored

    @property
    def limit(self) -> float:
        return float("inf") if self.limit_steps is None else self.limit_steps * self.scale

    @property
    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.counts) / self.total

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.values, t, side="right")
        cum = np.concatenate(([0.0], self.cumulative))
        out = cum[idx]
        return out if out.ndim else float(out)

    def left_limit(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.values, t, side="left")
        cum = np.concatenate(([0.0], self.cumulative))
        out = cum[idx]
        return out if out.ndim else float(out)

    def mean(self) -> float:
        if self.censored:
            raise ValueError("mean of a censored sample is not identified")
        return float((self.values * self.counts).sum() / self.total)

    def tail_integral(self, t):
        """G(t) = integral_0^t (1 - F(s)) ds, exact for the step function."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        v = np.concatenate(([0.0], self.values))
        surv = np.concatenate(([1.0], 1.0 - self.cumulative))
        seg = np.diff(v) * surv[:-1]
        acc = np.concatenate(([0.0], np.cumsum(seg)))
        idx = np.searchsorted(v, t, side="right") - 1
        out = acc[idx] + (t - v[idx]) * surv[idx]
        return out if out.size > 1 else float(out[0])

    def standard_error(self, t):
        f = self(t)
        return np.sqrt(f * (1.0 - f) / self.n_gaps)


def _positions_per_text(u: str, texts: list[np.ndarray]) -> list[np.ndarray]:
    return [occurrences(u, t) for t in texts]


def return_gaps(u: str, text: Text | Sequence[Text]) -> np.ndarray:
    """Gaps between consecutive occurrences, pooled over texts (gaps never span two texts)."""
    gaps = [np.diff(pos) for pos in _positions_per_text(u, _as_texts(text))]
    return np.concatenate(gaps) if gaps else np.zeros(0, dtype=np.int64)


def _censored_cdf(samples: list[np.ndarray], censored: int, scale: float, n_gaps: int, steps: int) -> EmpiricalCdf:
    arr = np.concatenate(samples) if samples else np.zeros(0, dtype=np.int64)
    if arr.size + censored == 0:
        raise ValueError("empty sample")
    times, counts = np.unique(arr, return_counts=True)
    return EmpiricalCdf(times, counts.astype(np.int64), scale, max(n_gaps, 1), censored, steps)


def return_cdf(
    u: str, text: Text | Sequence[Text], mu_u: DyadicRational | float, max_steps: int | None = None
) -> EmpiricalCdf:
    """Empirical law of mu([u]) times the return time to [u].

    Without ``max_steps`` every gap between consecutive occurrences is used.
    With it, only occurrences at least ``max_steps`` before the end of their
    text are kept, and their return times beyond ``max_steps`` are censored;
    this removes the bias against long gaps that the text ends cause.
    """
    if max_steps is None:
        gaps = return_gaps(u, text)
        if gaps.size == 0:
            raise ValueError(f"fewer than 2 occurrences of {u!r}")
        return EmpiricalCdf.from_samples(gaps, float(mu_u))
    samples, censored = [], 0
    for arr in _as_texts(text):
        pos = occurrences(u, arr)
        last = arr.size - len(u) - max_steps
        nxt = np.concatenate((pos[1:], [np.iinfo(np.int64).max]))
        keep = pos <= last
        tau = nxt[keep] - pos[keep]
        samples.append(tau[tau <= max_steps])
        censored += int((tau > max_steps).sum())
    n = sum(x.size for x in samples) + censored
    if n == 0:
        raise ValueError(f"no observable occurrence of {u!r}")
    return _censored_cdf(samples, censored, float(mu_u), n, max_steps)


def hitting_cdf(
    u: str, text: Text | Sequence[Text], mu_u: DyadicRational | float, max_steps: int | None = None
) -> EmpiricalCdf:
    """Empirical law of mu([u]) times the hitting time min{s >= 1: u occurs at j + s}.

    Without ``max_steps``, all positions before the last occurrence are used:
    a segment of length G between occurrences contributes one sample of each
    time 1..G. With it, the start positions are those at least ``max_steps``
    before the last possible occurrence, and longer times are censored.
    """
    if max_steps is not None:
        samples, censored, n_gaps = [], 0, 0
        for arr in _as_texts(text):
            pos = occurrences(u, arr)
            last = arr.size - len(u) - max_steps
            if last < 0:
                continue
            j = np.arange(last + 1, dtype=np.int64)
            idx = np.searchsorted(pos, j, side="right")
            ext = np.concatenate((pos, [np.iinfo(np.int64).max]))
            tau = ext[idx] - j
            samples.append(tau[tau <= max_steps])
            censored += int((tau > max_steps).sum())
            n_gaps += int((pos <= last).sum())
        return _censored_cdf(samples, censored, float(mu_u), n_gaps, max_steps)
    segments = []
    n_gaps = 0
    for pos in _positions_per_text(u, _as_texts(text)):
        if pos.size == 0:
            continue
        segs = np.diff(pos)
        n_gaps += segs.size
        if pos[0] > 0:
            segs = np.concatenate(([pos[0]], segs))
        segments.append(segs)
    if not segments or sum(s.size for s in segments) == 0:
        raise ValueError(f"no occurrence of {u!r}")
    seg = np.concatenate(segments)
    top = int(seg.max())
    hist = np.bincount(seg, minlength=top + 1)
    # number of segments of length >= s, for s = 1..top
    at_least = np.cumsum(hist[::-1])[::-1][1:]
    times = np.arange(1, top + 1)
    keep = at_least > 0
    return EmpiricalCdf(times[keep], at_least[keep].astype(np.int64), float(mu_u), max(n_gaps, 1))


def exp1_cdf(t):
    return -np.expm1(-np.asarray(t, dtype=float))


def ks_to_exponential(cdf: EmpiricalCdf, t_max: float | None = None) -> float:
    """sup_t |F(t) - (1 - e^{-t})|, over jump points and their left limits.

    The supremum runs over t <= t_max, and never past the censoring limit.
    """
    limit = cdf.limit
    if t_max is None and limit < float("inf"):
        t_max = limit
    elif t_max is not None:
        t_max = min(t_max, limit)
    v = cdf.values
    hi = cdf.cumulative
    lo = np.concatenate(([0.0], hi[:-1]))
    if t_max is not None:
        keep = v <= t_max
        v, hi, lo = v[keep], hi[keep], lo[keep]
        if v.size == 0:
            return float(exp1_cdf(t_max))
    e = exp1_cdf(v)
    d = max(np.abs(hi - e).max(), np.abs(lo - e).max())
    if t_max is not None:
        d = max(d, abs(float(cdf(t_max)) - float(exp1_cdf(t_max))))
    return float(d)


def sup_distance(f: EmpiricalCdf, h: EmpiricalCdf, t_max: float | None = None) -> float:
    """sup over 0 < s <= t_max of |f(s) - h(s)| (also capped at the censoring limits)."""
    cap = min(f.limit, h.limit, float("inf") if t_max is None else t_max)
    pts = np.union1d(f.values, h.values)
    pts = pts[pts <= cap]
    if pts.size == 0:
        return 0.0
    return float(np.abs(f(pts) - h(pts)).max())


DEFAULT_GRID = np.round(np.arange(1, 101) * 0.05, 10)
