"""Return-time experiments along a sampled point: words x<n> at the scales where the order grows."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..construct import sample_array, sample_point
from ..dyadic import DyadicRational
from ..measure import cylinder_measure, order_level
from ..params import DepthError, ProcessParams
from .bounds import BoundReport, bound_report
from .returns import DEFAULT_GRID, EmpiricalCdf, exp1_cdf, hitting_cdf, ks_to_exponential, return_cdf, return_gaps

T_CAP = float(DEFAULT_GRID[-1])


def max_standard_error(cdf: EmpiricalCdf) -> float:
    """Largest pointwise standard error sqrt(F(1-F)/N) over the jump points."""
    f = cdf.cumulative
    return float(np.sqrt((f * (1.0 - f)).max() / cdf.n_gaps))


@dataclass
class ExperimentRow:
    n: int
    word: str
    g: int
    k: int
    theta: DyadicRational
    mu: DyadicRational
    F: EmpiricalCdf
    F_tilde: EmpiricalCdf
    bounds: BoundReport | None
    mean_gap: float
    total_gaps: int

    @property
    def n_gaps(self) -> int:
        return self.F_tilde.n_gaps

    @property
    def kac(self) -> float:
        """mu([u]) times the mean return time, over all in-text gaps."""
        return float(self.mu) * self.mean_gap

    @property
    def ks_F(self) -> float:
        return ks_to_exponential(self.F)

    @property
    def ks_F_tilde(self) -> float:
        return ks_to_exponential(self.F_tilde)

    @property
    def se_F(self) -> float:
        return max_standard_error(self.F)

    @property
    def se_F_tilde(self) -> float:
        return max_standard_error(self.F_tilde)

    def _points(self, t_max: float) -> np.ndarray:
        cap = min(t_max, self.F.limit, self.F_tilde.limit)
        pts = np.union1d(self.F.values, self.F_tilde.values)
        return pts[pts <= cap]

    def sup_difference(self, t_max: float | None = None) -> float:
        """sup_{t <= t_max} |F(t) - F~(t)|, t_max defaulting to the bound horizon."""
        if t_max is None:
            t_max = float(self.bounds.horizon) if self.bounds else float("inf")
        pts = self._points(t_max)
        return float(np.abs(self.F(pts) - self.F_tilde(pts)).max()) if pts.size else 0.0

    def running_sup_difference(self, t: np.ndarray) -> np.ndarray:
        """sup_{s <= t} |F(s) - F~(s)| at each entry of t."""
        pts = self._points(float(np.max(t)))
        if pts.size == 0:
            return np.zeros_like(t, dtype=float)
        run = np.maximum.accumulate(np.abs(self.F(pts) - self.F_tilde(pts)))
        idx = np.searchsorted(pts, t, side="right") - 1
        out = np.where(idx >= 0, run[np.clip(idx, 0, None)], 0.0)
        return out


@dataclass
class ReturnExperiment:
    """Words x<n> of a nu-sampled point x, scanned over ``n_texts`` independent nu-samples."""

    params: ProcessParams
    seed: int
    prefix_length: int
    n_texts: int
    point: str
    rows: list[ExperimentRow] = field(default_factory=list)

    def row(self, n: int) -> ExperimentRow:
        return next(r for r in self.rows if r.n == n)


def increasing_order_ns(point: str, params: ProcessParams, n_max: int | None = None) -> list[int]:
    """n values at which the order g(x, n) of x<n> strictly increases."""
    out, prev = [], None
    for n in range(1, (n_max or len(point)) + 1):
        g = cylinder_measure(point[:n], params).g
        if prev is None or g > prev:
            out.append(n)
            prev = g
    return out


def sample_texts(params: ProcessParams, length: int, count: int, seed: int) -> list[np.ndarray]:
    children = np.random.SeedSequence(seed).spawn(count + 1)
    return [sample_array(params, length, np.random.default_rng(c))[0] for c in children[1:]]


def run_return_experiment(
    params: ProcessParams,
    seed: int = 0,
    prefix_length: int = 10**6,
    n_texts: int = 32,
    ns: Sequence[int] | None = None,
    min_gaps: int = 500,
    n_max: int = 256,
    words: Sequence[str] | None = None,
    t_cap: float = T_CAP,
) -> ReturnExperiment:
    """Build the F and F~ estimates for each word.

    Words are x<n> for the given ``ns`` (default: every n where the order
    grows), or the explicit ``words``. In the default n-list, scales with fewer
    than ``min_gaps`` return gaps are dropped, since the estimates there are
    noise. Both CDFs are censored at rescaled time ``t_cap`` so that text
    ends do not bias them.
    """
    point = sample_point(params, n_max, np.random.SeedSequence(seed).spawn(1)[0].generate_state(1)[0]).prefix
    texts = sample_texts(params, prefix_length, n_texts, seed)
    exp = ReturnExperiment(params, seed, prefix_length, n_texts, point)
    if words is not None:
        items = list(enumerate(words, start=1))
        items = [(len(w), w) for _, w in items]
        auto = False
    else:
        auto = ns is None
        items = [(n, point[:n]) for n in (ns if ns is not None else increasing_order_ns(point, params, n_max))]
    for n, u in items:
        cm = cylinder_measure(u, params)
        if not cm.in_language:
            raise ValueError(f"{u!r} is not in the language ({cm.reason})")
        gaps = return_gaps(u, texts)
        if auto and gaps.size < min_gaps:
            break
        steps = math.ceil(t_cap / float(cm.mu))
        Ft = return_cdf(u, texts, cm.mu, max_steps=steps)
        F = hitting_cdf(u, texts, cm.mu, max_steps=steps)
        try:
            br = bound_report(u, params) if u[0] != "0" else None
        except DepthError:
            br = None
        try:
            k = order_level(cm.g, params)
        except DepthError:
            k = -1
        mean_gap = float(gaps.mean()) if gaps.size else float("nan")
        exp.rows.append(ExperimentRow(n, u, cm.g, k, cm.theta, cm.mu, F, Ft, br, mean_gap, int(gaps.size)))
    return exp


def grid_table(row: ExperimentRow, grid: np.ndarray = DEFAULT_GRID) -> dict[str, np.ndarray]:
    """F, F~ and 1 - e^{-t} on the evaluation grid."""
    return {
        "t": grid,
        "F": np.asarray(row.F(grid)),
        "F_tilde": np.asarray(row.F_tilde(grid)),
        "exp1": exp1_cdf(grid),
    }
