import hypothesis
import pytest

from cubefix.actions import AffineAut, GroupAction, PermutationAut
from cubefix.complex import FiniteComplex, LatticeComplex

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("ci")


def cycle(n):
    names = [f"c{i}" for i in range(n)]
    return FiniteComplex(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def path(n):
    names = [f"p{i}" for i in range(n)]
    return FiniteComplex(names, [(names[i], names[i + 1]) for i in range(n - 1)])


@pytest.fixture
def square():
    return FiniteComplex("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])


@pytest.fixture
def abc():
    return FiniteComplex("abc", [("a", "b"), ("b", "c")])


@pytest.fixture
def rotation():
    return PermutationAut({"a": "b", "b": "c", "c": "d", "d": "a"})


@pytest.fixture
def line():
    return LatticeComplex(1)


@pytest.fixture
def plane():
    return LatticeComplex(2)


@pytest.fixture
def dihedral(line):
    s = AffineAut((-1,), (0,), (0,))
    t = AffineAut((-1,), (0,), (2,))
    return GroupAction(line, {"s": s, "t": t}, (0,))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES[-10:]:
            terminalreporter.write_line(line)
