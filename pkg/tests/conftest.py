from fractions import Fraction

import pytest

from erglab.corpus import identity_system, standard_corpus
from erglab.dynamics import product_system, rotation_system
from erglab.measure import make_space

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        print(ACCEPTANCE_LINES[-1])

    return record


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture
def z3():
    return rotation_system(3, 1, 1)


@pytest.fixture
def z2z3():
    # points (x, y); t1 = (+1, id), t2 = (id, +1)
    return product_system(rotation_system(2, 1, 1), rotation_system(3, 1, 1), "split")


@pytest.fixture
def uniform4():
    return make_space([Fraction(1, 4)] * 4)


@pytest.fixture
def ident3():
    return identity_system(3)
