import numpy as np
import pytest

from beetleopt.core import SearchSpace


class StubStream:
    """Scripted stand-in for RandomStream: every draw pops the next value.

    Values are the final draw results (already in the target range), which
    lets tests pin exact inputs into the update rules.
    """

    def __init__(self, values):
        self._values = list(values)

    def _pop(self):
        if not self._values:
            raise AssertionError("stub stream exhausted")
        return self._values.pop(0)

    def uniform(self, low=0.0, high=1.0, size=None):
        if size is None:
            return self._pop()
        return np.array([self._pop() for _ in range(int(size))])

    def sign(self, size=None):
        if size is None:
            return self._pop()
        return np.array([self._pop() for _ in range(int(size))])

    def index(self, n):
        return int(self._pop())


class CheckedObjective:
    """Objective wrapper that counts calls and asserts in-bound arguments."""

    def __init__(self, func, space: SearchSpace):
        self.func = func
        self.space = space
        self.n = 0

    def __call__(self, x):
        assert np.all(x >= self.space.lower) and np.all(x <= self.space.upper), (
            f"out-of-bounds evaluation: {x}"
        )
        self.n += 1
        return float(self.func(x))


@pytest.fixture
def stub_stream():
    return StubStream


@pytest.fixture
def checked_objective():
    return CheckedObjective
