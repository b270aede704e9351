"""Words over {0,1,2}, the block families A_k, and sampling of nu-distributed prefixes.

Words are plain ``str`` objects over the characters '0', '1', '2'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .depend import class_arrays
from .params import DepthError, ProcessParams
from .ruler import omega, ones_positions, z

ALPHABET = "012"
DEFAULT_CAP = 1 << 20

_NEG = str.maketrans("12", "21")
_PI = str.maketrans("2", "1")


class EnumerationCapError(ValueError):
    """#A_k is too large to list."""


def check_word(u: str) -> str:
    if any(c not in ALPHABET for c in u):
        raise ValueError(f"word {u!r} is not over the alphabet {{0,1,2}}")
    return u


def negate(u: str) -> str:
    """Swap 1 and 2 letterwise; 0 is fixed."""
    return u.translate(_NEG)


def pi_project(u: str) -> str:
    """Map 1 and 2 to 1, keeping 0."""
    return u.translate(_PI)


def _spacer(i: int) -> str:
    return "0" * omega(i)


def enumerate_family(
    k: int,
    params: ProcessParams,
    cap: int = DEFAULT_CAP,
    negation: Callable[[str], str] = negate,
) -> list[str]:
    """All words of A_k, sorted.

    ``negation`` exists so the verification runner can inject a faulty
    negation; leave it alone otherwise.
    """
    params.check_level(k)
    card_log = params.log2_card(k)
    if card_log > 62 or (1 << card_log) > cap:
        raise EnumerationCapError(f"#A_{k} = 2^{card_log} exceeds enumeration cap {cap}")
    family = ["1", "2"]
    for level in range(1, k + 1):
        bn = params.bk(level)
        spacers = [_spacer(i) for i in range(1, 2 * bn + 1)]
        nxt = []
        for parts in itertools.product(family, repeat=bn):
            blocks = list(parts) + [negation(x) for x in parts]
            nxt.append("".join(blk + sp for blk, sp in zip(blocks, spacers)))
        family = nxt
    return sorted(family)


def parse_blocks(u: str, k: int, count: int, params: ProcessParams) -> list[str] | None:
    """Split u as u(1)0^{omega_1}...u(count)0^{omega_count} with level-k blocks.

    Returns the blocks, or None when the spacers are not all zeros or the
    length is wrong. Membership of the blocks in A_k is left to the caller.
    """
    ak = params.a[k]
    if len(u) != z(k, count, params):
        return None
    blocks = []
    for i in range(count):
        start = z(k, i, params)
        blocks.append(u[start:start + ak])
        if u[start + ak:z(k, i + 1, params)].strip("0"):
            return None
    return blocks


def random_family_word(k: int, params: ProcessParams, rng: np.random.Generator) -> str:
    """Uniform element of A_k built top-down from i.i.d. sub-blocks (materialises a_k symbols)."""
    params.check_level(k)
    if k == 0:
        return "12"[rng.integers(2)]
    bn = params.bk(k)
    parts = [random_family_word(k - 1, params, rng) for _ in range(bn)]
    blocks = parts + [negate(x) for x in parts]
    return "".join(blk + _spacer(i) for i, blk in enumerate(blocks, start=1))


@dataclass(frozen=True)
class SampledPoint:
    """A nu-distributed prefix ``prefix`` of length N drawn inside a level-``level`` block.

    ``class_bits`` are the free choices: bit c decides whether dependency
    class c carries symbol 1 (bit 0) or 2 (bit 1) at its representative.
    """

    prefix: str
    level: int
    seed: int | None
    class_bits: np.ndarray

    def __len__(self) -> int:
        return len(self.prefix)

    def array(self) -> np.ndarray:
        return np.frombuffer(self.prefix.encode("ascii"), dtype=np.uint8) - ord("0")


def sampling_level(params: ProcessParams, length: int) -> int:
    for k in range(params.depth + 1):
        if params.a[k] >= length:
            return k
    raise DepthError(f"no level with a_k >= {length}; a_{params.depth} = {params.a[-1]}")


def sample_array(params: ProcessParams, length: int, rng: np.random.Generator) -> tuple[np.ndarray, int, np.ndarray]:
    """Symbols of a nu-distributed prefix as uint8, with the level and class bits used."""
    level = sampling_level(params, length)
    out = np.zeros(length, dtype=np.uint8)
    pos = ones_positions(length)
    idx = np.arange(pos.size, dtype=np.int64)
    key, par = class_arrays(idx, params)
    n_classes = int(key.max()) + 1 if key.size else 0
    bits = rng.integers(0, 2, size=n_classes, dtype=np.uint8)
    out[pos] = 1 + (bits[key] ^ par)
    return out, level, bits


def sample_point(params: ProcessParams, length: int, seed: int | np.random.Generator | None = None) -> SampledPoint:
    """Draw the first ``length`` symbols of a nu-distributed point.

    The uniform element of A_k is drawn through its free coordinates (one fair
    bit per dependency class), which is the same law as choosing the b_k
    sub-blocks independently at every level; only O(length) memory is used.
    """
    if length < 0:
        raise ValueError("negative length")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    arr, level, bits = sample_array(params, length, rng)
    prefix = (arr + ord("0")).tobytes().decode("ascii")
    return SampledPoint(prefix, level, seed if isinstance(seed, int) else None, bits)


def to_array(u: str) -> np.ndarray:
    return np.frombuffer(u.encode("ascii"), dtype=np.uint8) - ord("0")


def shift_to_nonzero(x: SampledPoint | str) -> tuple[int, str]:
    """Offset of the first nonzero symbol and the prefix shifted to start there."""
    prefix = x.prefix if isinstance(x, SampledPoint) else x
    stripped = prefix.lstrip("0")
    if not stripped:
        raise ValueError("prefix has no nonzero symbol")
    return len(prefix) - len(stripped), stripped
