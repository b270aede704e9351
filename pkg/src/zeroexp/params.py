"""Process parameters: the block multiplicities b_1..b_K and everything derived from them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


class ParameterError(ValueError):
    """Invalid process parameters (e.g. a multiplicity that is not a power of two)."""


class DepthError(ValueError):
    """A query needs a level deeper than the configured parameters provide."""


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


PRESETS: dict[str, tuple[int, ...]] = {
    # exhaustive-oracle scale: #A_1 = 4, #A_2 = 256, a_2 = 63
    "tiny": (2, 4),
    # b_n = 2^(3^n), depth 3; a_3 is about 8.8e12
    "fast": (2**3, 2**9, 2**27),
    # small multiplicities but deep enough that a_5 > 2e6
    "ladder": (2, 4, 8, 16, 32),
}


@dataclass(frozen=True)
class ProcessParams:
    """Multiplicities b_1..b_K (powers of two, each at least 2).

    ``b[k-1]`` holds b_k. Levels run from 0 to ``depth``; level k has block
    length ``a[k]`` and ``2 ** log2_card(k)`` admissible blocks.
    """

    b: tuple[int, ...]
    a: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        b = tuple(int(x) for x in self.b)
        if not b:
            raise ParameterError("at least one multiplicity b_1 is required")
        for n, bn in enumerate(b, start=1):
            if not is_power_of_two(bn) or bn < 2:
                raise ParameterError(f"b_{n} = {bn} is not a power of two >= 2")
        object.__setattr__(self, "b", b)
        a = [1]
        for bn in b:
            a.append(2 * bn * a[-1] + 2 * bn - 1)
        object.__setattr__(self, "a", tuple(a))

    @classmethod
    def preset(cls, name: str) -> ProcessParams:
        try:
            return cls(PRESETS[name])
        except KeyError:
            raise ParameterError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None

    @classmethod
    def from_list(cls, values: Iterable[int]) -> ProcessParams:
        return cls(tuple(values))

    @property
    def depth(self) -> int:
        return len(self.b)

    def check_level(self, k: int) -> None:
        if not 0 <= k <= self.depth:
            raise DepthError(f"level {k} outside configured depth 0..{self.depth}")

    def bk(self, k: int) -> int:
        """b_k for 1 <= k <= depth."""
        if not 1 <= k <= self.depth:
            raise DepthError(f"b_{k} not configured (depth {self.depth})")
        return self.b[k - 1]

    def log2_card(self, k: int) -> int:
        """log2 of #A_k, i.e. the product b_1 * ... * b_k."""
        self.check_level(k)
        return math.prod(self.b[:k])

    def card(self, k: int) -> int:
        return 1 << self.log2_card(k)

    @cached_property
    def beta(self) -> tuple[int, ...]:
        """log2 b_1, ..., log2 b_K."""
        return tuple(bn.bit_length() - 1 for bn in self.b)

    @cached_property
    def digit_offsets(self) -> tuple[int, ...]:
        """Bit offset s_t = log2 p(0, t) of the level-t digit, t = 0..K."""
        s = [0]
        for be in self.beta:
            s.append(s[-1] + be + 1)
        return tuple(s)

    @cached_property
    def half_mask(self) -> int:
        """Bits marking the 'second half' flag of every level digit."""
        mask = 0
        for t in range(self.depth):
            mask |= 1 << (self.digit_offsets[t + 1] - 1)
        return mask

    @property
    def index_limit(self) -> int:
        """p(0, K): skeleton indices below this are covered by the configured depth."""
        return 1 << self.digit_offsets[-1]

    def growth_ratios(self) -> list[float]:
        """b_{n+1} / (b_1 ... b_n); should grow without bound for the exponential limit."""
        return [self.b[n] / math.prod(self.b[:n]) for n in range(1, self.depth)]

    def __str__(self) -> str:
        return "b=(" + ",".join(str(x) for x in self.b) + ")"
