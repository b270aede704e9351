"""Exact cylinder measures: shifted nu, theta, occurrence progressions and the limit measure mu."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .construct import check_word, enumerate_family
from .depend import class_key, parity
from .dyadic import ONE, ZERO, DyadicRational
from .params import DepthError, ProcessParams
from .ruler import first_index_at_or_after, z0


class NotInLanguage(ValueError):
    """The word never occurs in a point of the support."""


@dataclass(frozen=True)
class Decomposition:
    """u = 0^{m_0} u(1) 0^{m_1} ... u(q) 0^{m_q} with u(i) in {1, 2}."""

    runs: tuple[int, ...]
    symbols: str

    @property
    def q(self) -> int:
        return len(self.symbols)

    @property
    def m0(self) -> int:
        return self.runs[0]


def decompose(u: str) -> Decomposition:
    check_word(u)
    runs, symbols, run = [], [], 0
    for c in u:
        if c == "0":
            run += 1
        else:
            runs.append(run)
            symbols.append(c)
            run = 0
    if not symbols:
        raise ValueError("all-zero word has no decomposition")
    runs.append(run)
    return Decomposition(tuple(runs), "".join(symbols))


@dataclass(frozen=True)
class OccurrenceProgression:
    """Skeleton indices {g0 + n g} at which the pattern pi(u) can sit in w.

    ``xi(n)`` is the matching position in w (first symbol of u).
    """

    word: str
    decomposition: Decomposition
    g: int
    g0: int
    empty: bool = False

    @property
    def m0(self) -> int:
        return self.decomposition.m0

    @property
    def log2_g(self) -> int:
        return self.g.bit_length() - 1

    def indices(self) -> Iterator[int]:
        if self.empty:
            return
        i = self.g0
        while True:
            yield i
            i += self.g

    def contains_index(self, i: int) -> bool:
        return not self.empty and i >= self.g0 and (i - self.g0) % self.g == 0

    def xi(self, n: int) -> int:
        if self.empty:
            raise NotInLanguage(f"{self.word!r}: empty occurrence progression")
        return z0(self.g0 + n * self.g) - self.m0

    def contains_position(self, pos: int) -> bool:
        i = first_index_at_or_after(pos + self.m0)
        return z0(i) == pos + self.m0 and self.contains_index(i)


def _meet(state: tuple[int, int] | None, r: int, e: int) -> tuple[int, int] | None:
    """Intersect {i = r0 mod 2^e0} with {i = r mod 2^e}."""
    if state is None:
        return None
    r0, e0 = state
    r %= 1 << e
    if e >= e0:
        return (r, e) if r % (1 << e0) == r0 else None
    return state if r0 % (1 << e) == r else None


def occurrence_progression(u: str) -> OccurrenceProgression:
    """Intersect the ruler constraints each run of zeros imposes on the skeleton index.

    Interior run j (1 <= j < q) needs omega_{i+j} = m_j, the trailing run
    needs omega_{i+q} >= m_q and a leading run needs omega_i >= m_0 (with
    omega_0 taken as 0, so index 0 is excluded when m_0 > 0).
    """
    dec = decompose(u)
    q, m = dec.q, dec.runs
    state: tuple[int, int] | None = (0, 0)
    for j in range(1, q):
        state = _meet(state, (1 << m[j]) - j, m[j] + 1)
    state = _meet(state, -q, m[q])
    state = _meet(state, 0, m[0])
    if state is None:
        return OccurrenceProgression(u, dec, g=1, g0=0, empty=True)
    r, e = state
    g = 1 << e
    g0 = r
    if m[0] > 0 and g0 == 0:
        g0 = g
    return OccurrenceProgression(u, dec, g=g, g0=g0)


@dataclass(frozen=True)
class NuEvaluation:
    value: DyadicRational
    classes: int
    reason: str | None


def nu_evaluate(u: str, j: int, params: ProcessParams) -> NuEvaluation:
    """T^j nu([u]) with the reason for a zero value."""
    check_word(u)
    if j < 0:
        raise ValueError("negative shift")
    end = j + len(u)
    if end > params.a[-1]:
        raise DepthError(f"window [{j},{end}) extends past a_{params.depth} = {params.a[-1]}")
    i = first_index_at_or_after(j)
    pos = z0(i)
    seen: dict[int, int] = {}
    for offset, c in enumerate(u):
        here = j + offset
        if here == pos:
            if c == "0":
                return NuEvaluation(ZERO, 0, "skeleton mismatch")
            bit = (ord(c) - ord("1")) ^ parity(i, params)
            key = class_key(i, params)
            if seen.setdefault(key, bit) != bit:
                return NuEvaluation(ZERO, 0, "class inconsistency")
            i += 1
            pos = z0(i)
        elif c != "0":
            return NuEvaluation(ZERO, 0, "skeleton mismatch")
    return NuEvaluation(DyadicRational.pow2(-len(seen)), len(seen), None)


def nu_cylinder(u: str, j: int, params: ProcessParams) -> DyadicRational:
    """T^j nu([u]) = 2^{-c} when u is compatible with the window, else 0."""
    return nu_evaluate(u, j, params).value


def mu_zero_run(m: int) -> DyadicRational:
    """mu([0^m]) = 2^{-m}."""
    if m < 0:
        raise ValueError("negative run length")
    return DyadicRational.pow2(-m)


@dataclass(frozen=True)
class CylinderMeasure:
    word: str
    theta: DyadicRational
    mu: DyadicRational
    skeleton_density: DyadicRational
    progression: OccurrenceProgression | None
    reason: str | None = None

    @property
    def g(self) -> int | None:
        return None if self.progression is None else self.progression.g

    @property
    def g0(self) -> int | None:
        return None if self.progression is None else self.progression.g0

    @property
    def in_language(self) -> bool:
        return self.reason is None


def cylinder_measure(u: str, params: ProcessParams) -> CylinderMeasure:
    """theta(u), the progression and mu([u]) = theta(u) / (2 g)."""
    check_word(u)
    if "1" not in u and "2" not in u:
        rho = mu_zero_run(len(u))
        return CylinderMeasure(u, ONE, rho, rho, None)
    prog = occurrence_progression(u)
    if prog.empty:
        return CylinderMeasure(u, ZERO, ZERO, ZERO, prog, "empty progression")
    ev = nu_evaluate(u, prog.xi(0), params)
    density = DyadicRational(1, -(prog.log2_g + 1))
    if ev.reason is not None:
        return CylinderMeasure(u, ZERO, ZERO, density, prog, ev.reason)
    return CylinderMeasure(u, ev.value, ev.value * density, density, prog)


def theta(u: str, params: ProcessParams) -> DyadicRational:
    """Conditional measure of [u] given its skeleton pattern; raises for u outside the language."""
    cm = cylinder_measure(u, params)
    if not cm.in_language:
        raise NotInLanguage(f"{u!r} is not in the language ({cm.reason})")
    return cm.theta


def mu_cylinder(u: str, params: ProcessParams) -> DyadicRational:
    return cylinder_measure(u, params).mu


def nu_invariance_check(n: int, m: int, params: ProcessParams, cap: int = 1 << 20) -> bool:
    """Does T^{z_0(m 2^n)} nu agree with nu on words of length z_0(2^n)?

    Both laws are read off an enumeration of the smallest A_k covering the
    shifted window, and the class formula must reproduce both.
    """
    length = z0(1 << n)
    shift = z0(m << n)
    need = shift + length
    k = next((k for k in range(params.depth + 1) if params.a[k] >= need), None)
    if k is None:
        raise DepthError(f"window [{shift},{need}) beyond a_{params.depth}")
    words = enumerate_family(k, params, cap=cap)
    base = Counter(u[:length] for u in words)
    moved = Counter(u[shift:need] for u in words)
    if base != moved:
        return False
    total = len(words)
    for v, c in base.items():
        expect = DyadicRational.coerce(Fraction(c, total))
        if nu_cylinder(v, 0, params) != expect or nu_cylinder(v, shift, params) != expect:
            return False
    return True


def order_level(g: int, params: ProcessParams) -> int:
    """Largest k with p(0, k) <= g."""
    s = params.digit_offsets
    lg = g.bit_length() - 1
    k = 0
    while k + 1 < len(s) and s[k + 1] <= lg:
        k += 1
    if lg >= s[-1]:
        # p(0, K+1) unknown
        raise DepthError(f"order {g} reaches p(0,{params.depth}); level undetermined")
    return k

