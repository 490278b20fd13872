from __future__ import annotations

import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from milnorlab.automorphisms import AutP  # noqa: E402
from milnorlab.words import Word  # noqa: E402

settings.register_profile(
    "milnorlab",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("milnorlab")


def words(r: int = 3, max_len: int = 8, min_len: int = 0):
    letter = st.tuples(st.integers(1, r), st.sampled_from([1, -1, 2, -2]))
    return st.lists(letter, min_size=min_len, max_size=max_len).map(lambda L: Word(r, L))


def synthetic_auts(r: int = 3, chis=(1,), max_len: int = 4):
    """AutP with arbitrary longitudes; the x_i exponent sum is stripped from y_i."""

    def build(args):
        chi, ws = args
        ys = [w * Word.gen(i, r, -w.exponent_sums()[i - 1]) for i, w in enumerate(ws, start=1)]
        return AutP(chi, ys)

    return st.tuples(st.sampled_from(chis), st.lists(words(r, max_len), min_size=r, max_size=r)).map(build)


@pytest.fixture
def rng():
    return random.Random(20240601)
