import time

import pytest

from zeroexp.params import ProcessParams

CRITERIA: list[str] = []


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}"
    if detail:
        line += f" [{detail}]"
    CRITERIA.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def tiny():
    return ProcessParams.preset("tiny")


@pytest.fixture(scope="session")
def b2():
    return ProcessParams((2,))


@pytest.fixture(scope="session")
def ladder():
    return ProcessParams.preset("ladder")


@pytest.fixture(scope="session")
def fast():
    return ProcessParams.preset("fast")


@pytest.fixture(scope="session")
def fast_experiment(fast):
    from zeroexp.stats.experiment import run_return_experiment

    t0 = time.time()
    exp = run_return_experiment(fast, seed=7, prefix_length=10**6, n_texts=32)
    exp.runtime = time.time() - t0
    return exp
