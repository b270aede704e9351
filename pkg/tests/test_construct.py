from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zeroexp.construct import (
    EnumerationCapError,
    check_word,
    enumerate_family,
    negate,
    parse_blocks,
    pi_project,
    random_family_word,
    sample_point,
    shift_to_nonzero,
)
from zeroexp.params import DepthError
from zeroexp.ruler import omega, p, skeleton_prefix, z

words = st.text(alphabet="012", max_size=40)


def template_family(k, b):
    """Direct expansion of the block template, written independently of the library."""
    fam = ["1", "2"]
    for level in range(k):
        bn = b[level]
        nxt = []
        for choice in np.ndindex(*([len(fam)] * bn)):
            parts = [fam[c] for c in choice]
            blocks = parts + [x.translate(str.maketrans("12", "21")) for x in parts]
            nxt.append("".join(blk + "0" * omega(i + 1) for i, blk in enumerate(blocks)))
        fam = nxt
    return sorted(fam)


def test_a1_for_b2(b2):
    assert set(enumerate_family(1, b2)) == {"1102200", "1202100", "2101200", "2201100"}


def test_a0(b2):
    assert enumerate_family(0, b2) == ["1", "2"]


def test_cardinality_examples(b2, tiny):
    assert len(enumerate_family(1, b2)) == 4 == 2 ** b2.b[0]
    assert len(enumerate_family(2, tiny)) == 256


def test_against_template(tiny):
    for k in range(3):
        assert enumerate_family(k, tiny) == template_family(k, tiny.b)


def test_negation_closed_and_lengths(tiny):
    for k in range(3):
        fam = enumerate_family(k, tiny)
        assert set(map(negate, fam)) == set(fam)
        assert all(len(u) == tiny.a[k] for u in fam)
        assert len(set(fam)) == 2 ** tiny.log2_card(k)


def test_cap_reports_cardinality(fast):
    with pytest.raises(EnumerationCapError, match=r"2\^4096"):
        enumerate_family(2, fast)


def test_negate_examples():
    assert negate("1102200") == "2201100"
    assert negate("000") == "000"


@given(words)
def test_negate_involution(u):
    assert negate(negate(u)) == u
    assert pi_project(negate(u)) == pi_project(u)


def test_pi_examples(b2):
    assert pi_project("1202100") == "1101100" == skeleton_prefix(b2.a[1])
    assert pi_project("0") == "0"
    assert pi_project("12") == "11"


def test_pi_image_is_skeleton(tiny):
    for k in range(3):
        assert {pi_project(u) for u in enumerate_family(k, tiny)} == {skeleton_prefix(tiny.a[k])}


def test_step_decomposition(tiny):
    for k in range(3):
        lower = set(enumerate_family(k, tiny))
        for l in range(0, 3 - k):
            count = p(k, l, tiny)
            for u in enumerate_family(k + l, tiny):
                blocks = parse_blocks(u, k, count, tiny)
                assert blocks is not None and all(bl in lower for bl in blocks)


def test_parse_rejects_bad_spacer(b2):
    assert parse_blocks("1112200", 0, 4, b2) is None
    assert parse_blocks("11", 0, 4, b2) is None


def test_check_word():
    assert check_word("0120") == "0120"
    with pytest.raises(ValueError):
        check_word("013")


def test_sample_uniform_on_a1(b2):
    rng = np.random.default_rng(1)
    counts = Counter(sample_point(b2, 7, rng).prefix for _ in range(10_000))
    assert set(counts) == set(enumerate_family(1, b2))
    assert all(abs(c / 10_000 - 0.25) < 0.02 for c in counts.values())


def test_sample_first_symbol(ladder):
    rng = np.random.default_rng(2)
    counts = Counter(sample_point(ladder, 1, rng).prefix for _ in range(10_000))
    assert set(counts) == {"1", "2"}
    assert abs(counts["1"] / 10_000 - 0.5) < 0.02


def test_sample_matches_recursive_law(tiny):
    """Class-bit sampling and recursive sub-block sampling give the same law on A_2."""
    rng = np.random.default_rng(3)
    n = 40_000
    a = Counter(sample_point(tiny, 63, rng).prefix for _ in range(n))
    b = Counter(random_family_word(2, tiny, rng) for _ in range(n))
    fam = enumerate_family(2, tiny)
    assert set(a) <= set(fam) and set(b) <= set(fam)
    # chi-square style comparison against the uniform law
    expected = n / len(fam)
    for c in (a, b):
        chi2 = sum((c.get(u, 0) - expected) ** 2 / expected for u in fam)
        assert chi2 < 255 + 6 * (2 * 255) ** 0.5


def test_block_windows_lie_in_family(ladder):
    x = sample_point(ladder, 20_000, 5).prefix
    for k in range(4):
        fam = set(enumerate_family(k, ladder)) if k <= 2 else None
        i = 0
        while z(k, i, ladder) + ladder.a[k] <= len(x):
            w = x[z(k, i, ladder): z(k, i, ladder) + ladder.a[k]]
            if fam is not None:
                assert w in fam
            else:
                assert parse_blocks(w, 2, p(2, 1, ladder), ladder) is not None
            i += 1


def test_sample_determinism(ladder):
    assert sample_point(ladder, 5000, 11).prefix == sample_point(ladder, 5000, 11).prefix
    assert sample_point(ladder, 5000, 11).prefix != sample_point(ladder, 5000, 12).prefix


def test_sample_depth_guard(tiny):
    with pytest.raises(DepthError):
        sample_point(tiny, 64, 0)


def test_shift_to_nonzero(ladder):
    assert shift_to_nonzero("00120")[0] == 2
    assert shift_to_nonzero("1201") == (0, "1201")
    for seed in range(20):
        assert shift_to_nonzero(sample_point(ladder, 50, seed))[0] == 0
    with pytest.raises(ValueError):
        shift_to_nonzero("000")
