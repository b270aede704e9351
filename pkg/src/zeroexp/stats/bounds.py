"""Explicit bounds on |F - F~| and the Exp(1) approximation, as exact dyadic values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..construct import SampledPoint
from ..dyadic import DyadicRational
from ..measure import NotInLanguage, cylinder_measure, mu_zero_run, order_level
from ..params import DepthError, ProcessParams


@dataclass(frozen=True)
class BoundReport:
    """Bound terms for a word u of order g at level k.

    term1 = mu([0^{omega_g}]), term2 = 2 theta(u), term3 = theta(u).
    ``horizon`` is the largest rescaled time t = mu([u]) * s (s an integer
    time) for which the bound is proved.
    """

    word: str
    g: int
    k: int
    theta: DyadicRational
    mu: DyadicRational
    term1: DyadicRational
    term2: DyadicRational
    term3: DyadicRational
    horizon_steps: int

    @property
    def combined(self) -> DyadicRational:
        return self.term1 + self.term2 + self.term3

    @property
    def ode_slack(self) -> DyadicRational:
        """Bound on |F(t) - (1 - e^{-t})| given |F - F~| <= combined."""
        return self.combined + self.mu * 2

    @property
    def horizon(self) -> DyadicRational:
        return self.mu * self.horizon_steps

    def within_horizon(self, t: float) -> bool:
        return t <= float(self.horizon)


def bound_report(u: str, params: ProcessParams) -> BoundReport:
    if not u or u[0] == "0":
        raise ValueError("bound terms need a word with a nonzero first symbol")
    cm = cylinder_measure(u, params)
    if not cm.in_language:
        raise NotInLanguage(f"{u!r} is not in the language ({cm.reason})")
    g = cm.g
    k = order_level(g, params)
    if k + 2 > params.depth:
        raise DepthError(f"{u!r}: level k={k} needs b_{k + 2}, depth is {params.depth}")
    steps = (params.bk(k + 2) - 1) * params.a[k + 1]
    return BoundReport(
        word=u,
        g=g,
        k=k,
        theta=cm.theta,
        mu=cm.mu,
        term1=mu_zero_run(g.bit_length() - 1),
        term2=cm.theta * 2,
        term3=cm.theta,
        horizon_steps=steps,
    )


def mu_lower_bound(k: int, params: ProcessParams) -> Fraction:
    """1 / (#A_{k+1} (a_{k+1} + 1)), a lower bound on mu(x<n>) at level k(x, n) = k."""
    return Fraction(1, params.card(k + 1) * (params.a[k + 1] + 1))


def divergence_diagnostic(x: SampledPoint | str, n: int, params: ProcessParams) -> float:
    """mu(x<n>) * b_{k+2} * a_{k+1} with k = k(x, n); large values mean the horizon covers t = O(1)."""
    prefix = x.prefix if isinstance(x, SampledPoint) else x
    if n > len(prefix):
        raise ValueError("n exceeds the sampled prefix")
    u = prefix[:n]
    cm = cylinder_measure(u, params)
    k = order_level(cm.g, params)
    if k + 2 > params.depth:
        raise DepthError(f"k(x,{n}) = {k} needs b_{k + 2}, depth is {params.depth}")
    return float(cm.mu * (params.bk(k + 2) * params.a[k + 1]))
