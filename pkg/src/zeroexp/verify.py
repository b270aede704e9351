"""Invariant suites run by ``zeroexp verify``: exhaustive oracles at small parameters."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import ruler
from .construct import enumerate_family, negate, parse_blocks, pi_project, sample_point
from .depend import class_key, closure_classes, d_count, d_count_interval, parity, partition_entropy_oracle
from .dyadic import DyadicRational
from .measure import mu_cylinder, nu_cylinder, nu_invariance_check
from .params import DepthError, ProcessParams


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    status: str
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return asdict(self)


def faulty_negate(u: str) -> str:
    """Negation that forgets to swap the first symbol (fault-injection hook)."""
    return u[:1] + negate(u[1:])


def _case(suite: str, case: str, expected, actual) -> CaseResult:
    ok = expected == actual
    return CaseResult(suite, case, "pass" if ok else "fail", str(expected), str(actual))


def ruler_suite(params: ProcessParams, limit: int = 1 << 10) -> Iterator[CaseResult]:
    n = np.arange(1, limit + 1, dtype=np.int64)
    om = ruler.omega_array(limit)
    # brute force valuation by repeated halving
    brute = np.zeros(limit, dtype=np.int64)
    x = n.copy()
    while True:
        even = (x % 2 == 0)
        if not even.any():
            break
        brute += even
        x = np.where(even, x // 2, x)
    yield _case("ruler", "omega matches repeated halving", True, bool((om == brute).all()))
    prod = np.outer(n, n)
    lhs = np.bitwise_count((prod & -prod) - 1)
    rhs = om[:, None].astype(np.int64) + om[None, :]
    yield _case("ruler", f"omega(nm) = omega(n) + omega(m), n,m <= {limit}", True, bool((lhs == rhs).all()))
    ok = True
    for e in range(1, limit.bit_length()):
        i = np.arange(1, 1 << e, dtype=np.int64)
        m = np.arange(0, limit // (1 << e) + 1, dtype=np.int64)
        v = (m[:, None] << e) + i[None, :]
        ok &= bool((np.bitwise_count((v & -v) - 1) == om[i - 1][None, :]).all())
    yield _case("ruler", "omega(2^n m + i) = omega(i) for i < 2^n", True, ok)
    sums = all(ruler.omega_sum(1 << e) == (1 << e) - 1 for e in range(0, 40))
    yield _case("ruler", "sum_{j<=2^n} omega_j = 2^n - 1", True, sums)
    cum = np.concatenate(([0], np.cumsum(om)))
    yield _case(
        "ruler", "closed-form prefix sums", True, all(ruler.omega_sum(i) == int(cum[i]) for i in range(limit + 1))
    )
    split = all(
        ruler.z(k, (m << e) + i, params) == ruler.z(k, m << e, params) + ruler.z(k, i, params)
        for k in range(params.depth + 1)
        for e in range(6)
        for m in range(5)
        for i in range(1 << e)
    )
    yield _case("ruler", "z_k(2^n m + i) = z_k(2^n m) + z_k(i)", True, split)
    level = all(
        ruler.z(k + l, m, params) == ruler.z(k, m * ruler.p(k, l, params), params)
        for k in range(params.depth + 1)
        for l in range(params.depth - k + 1)
        for m in range(20)
    )
    yield _case("ruler", "z_{k+l}(m) = z_k(m p(k,l))", True, level)
    ones = all(ruler.skeleton_prefix(ruler.z0(1 << e)).count("1") == 1 << e for e in range(14))
    yield _case("ruler", "skeleton_prefix(z_0(2^n)) has 2^n ones", True, ones)
    yield _case("ruler", "nonoverlap up to n=64 on 2^14 terms", True, all(ruler.nonoverlap_check(w, 1 << 14) for w in range(1, 65)))


def construct_suite(params: ProcessParams, negation: Callable[[str], str] = negate, cap: int = 1 << 20) -> Iterator[CaseResult]:
    fams = {}
    for k in range(params.depth + 1):
        if params.log2_card(k) > cap.bit_length() - 1:
            break
        fams[k] = enumerate_family(k, params, cap=cap, negation=negation)
    for k, fam in fams.items():
        yield _case("construct", f"#A_{k}", params.card(k), len(set(fam)))
        yield _case("construct", f"A_{k} closed under negation", True, set(map(negate, fam)) == set(fam))
        yield _case("construct", f"pi(A_{k}) = w({k})", {ruler.skeleton_prefix(params.a[k])}, set(map(pi_project, fam)))
    for k, fam in fams.items():
        for l in range(1, params.depth - k + 1):
            if k + l not in fams:
                continue
            lower = set(fams[k])
            count = ruler.p(k, l, params)
            ok = True
            for u in fams[k + l]:
                blocks = parse_blocks(u, k, count, params)
                ok &= blocks is not None and all(b in lower for b in blocks)
            yield _case("construct", f"A_{k + l} parses into A_{k} blocks", True, ok)
    rng = np.random.default_rng(12345)
    top = max(fams)
    fam = set(fams[top])
    draws = [sample_point(params, params.a[top], rng).prefix for _ in range(200)]
    yield _case("construct", f"samples of length a_{top} lie in A_{top}", True, all(d in fam for d in draws))


def depend_suite(params: ProcessParams, negation: Callable[[str], str] = negate, cap: int = 1 << 20) -> Iterator[CaseResult]:
    k = max(k for k in range(params.depth + 1) if params.log2_card(k) <= cap.bit_length() - 1)
    stop = params.a[k]
    groups = closure_classes(stop, params)
    by_key = {}
    for gr in groups:
        by_key[frozenset(class_key(ruler.skeleton_index(j), params) for j in gr)] = gr
    ok = all(len(keys) == 1 for keys in by_key) and len(by_key) == len(groups)
    yield _case("depend", f"digit classes = closure of D on [0, a_{k})", True, ok)
    counts = []
    for kk in range(k + 1):
        for m in range(min(4, params.index_limit // ruler.p(0, kk, params))):
            counts.append(
                d_count_interval(ruler.z(kk, m, params), ruler.z(kk, m + 1, params), params)
                == ruler.p(0, kk, params) >> kk
            )
    yield _case("depend", "d(z_k(m), z_k(m+1)) = p(0,k)/2^k", True, all(counts))
    rng = np.random.default_rng(2024)
    ent_ok = True
    for _ in range(40):
        size = int(rng.integers(1, 9))
        sel = sorted(set(int(x) for x in rng.integers(0, stop, size=size)))
        ent_ok &= abs(partition_entropy_oracle(sel, params, cap) - d_count(sel, params)) < 1e-12
    yield _case("depend", "H(P(I), nu) = d(I) on random I", True, ent_ok)
    fam = enumerate_family(k, params, cap=cap, negation=negation)
    q = [j for j in range(stop) if ruler.skeleton_index(j) is not None]
    sym_ok = True
    for u in fam:
        rep: dict[int, int] = {}
        for j in q:
            i = ruler.skeleton_index(j)
            bit = (int(u[j]) - 1) ^ parity(i, params)
            sym_ok &= rep.setdefault(class_key(i, params), bit) == bit
    yield _case("depend", f"symbols of A_{k} follow class parity", True, sym_ok)


def measure_suite(params: ProcessParams, negation: Callable[[str], str] = negate, cap: int = 1 << 20) -> Iterator[CaseResult]:
    k = max(k for k in range(params.depth + 1) if params.log2_card(k) <= cap.bit_length() - 1)
    fam = enumerate_family(k, params, cap=cap, negation=negation)
    total = len(fam)
    ok = True
    for length in range(1, params.a[k] + 1):
        cnt = Counter(u[:length] for u in fam)
        for v, c in cnt.items():
            ok &= nu_cylinder(v, 0, params).as_fraction() == Fraction(c, total)
    yield _case("measure", f"nu formula = A_{k} counts, all prefixes", True, ok)
    ok = True
    for j in range(params.a[k]):
        for length in range(1, min(8, params.a[k] - j) + 1):
            cnt = Counter(u[j:j + length] for u in fam)
            ok &= sum(cnt.values()) == total
            for v, c in cnt.items():
                ok &= nu_cylinder(v, j, params).as_fraction() == Fraction(c, total)
    yield _case("measure", f"shifted nu formula = A_{k} counts, windows <= 8", True, ok)
    inv = []
    for n in range(3):
        for m in range(5):
            if ruler.z0(m << n) + ruler.z0(1 << n) <= params.a[k]:
                inv.append(nu_invariance_check(n, m, params, cap))
    yield _case("measure", "T^{z_0(m 2^n)} nu = nu on P(z_0(2^n))", True, all(inv) and bool(inv))
    words = ["".join(w) for L in range(1, 6) for w in itertools.product("012", repeat=L)]
    add, skipped = True, 0
    for u in words:
        try:
            add &= mu_cylinder(u, params) == sum((mu_cylinder(u + a, params) for a in "012"), DyadicRational(0))
        except DepthError:
            skipped += 1
    yield _case("measure", f"mu([u]) = sum_a mu([ua]), |u| <= 5 ({skipped} beyond depth)", True, add)
    yield _case("measure", "mu([0]) + mu([1]) + mu([2]) = 1", "1/2^0", str(sum((mu_cylinder(a, params) for a in "012"), DyadicRational(0))))


SUITES = {
    "ruler": lambda p, neg, cap: ruler_suite(p),
    "construct": construct_suite,
    "depend": depend_suite,
    "measure": measure_suite,
}


def run_suites(params: ProcessParams, fault: bool = False, cap: int = 1 << 20, names=None) -> list[CaseResult]:
    neg = faulty_negate if fault else negate
    out = []
    for name, suite in SUITES.items():
        if names and name not in names:
            continue
        out.extend(suite(params, neg, cap))
    return out
