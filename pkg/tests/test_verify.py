from zeroexp.params import ProcessParams
from zeroexp.verify import faulty_negate, run_suites


def test_all_suites_pass_at_tiny(tiny):
    res = run_suites(tiny)
    assert res and all(r.passed for r in res), [r for r in res if not r.passed]
    assert {r.suite for r in res} == {"ruler", "construct", "depend", "measure"}


def test_suites_pass_at_other_small_params():
    res = run_suites(ProcessParams((4, 2)))
    assert all(r.passed for r in res), [r for r in res if not r.passed]


def test_fault_is_detected(tiny):
    res = run_suites(tiny, fault=True)
    failed = {(r.suite, r.case) for r in res if not r.passed}
    assert ("measure", "nu formula = A_2 counts, all prefixes") in failed
    assert any(s == "construct" for s, _ in failed)


def test_faulty_negation_differs():
    assert faulty_negate("12") == "11"
