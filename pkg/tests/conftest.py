from functools import lru_cache

from germhodge.milnor import milnor_algebra, multiplication_matrix
from germhodge.poly import parse_polynomial
from germhodge.residue import gram_matrix


@lru_cache(maxsize=None)
def algebra(text, variables):
    return milnor_algebra(parse_polynomial(text, tuple(variables)))


@lru_cache(maxsize=None)
def residue(text, variables):
    return gram_matrix(algebra(text, variables))


def times_f(text, variables):
    A = algebra(text, variables)
    return multiplication_matrix(A, A.f)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
