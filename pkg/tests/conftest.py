from fractions import Fraction

import pytest

from cryptoherm import kernels

ACCEPTANCE_LINES = []


@pytest.fixture(params=sorted(kernels.available_implementations()))
def kernel_impl(request):
    return kernels.available_implementations()[request.param]


@pytest.fixture
def record_criterion():
    def record(number, title, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} {detail}".rstrip())
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


EXACT_AS = [Fraction(1), Fraction(2), Fraction(3), Fraction(5, 2)]
