import random

import pytest
from hypothesis import settings as hypothesis_settings

from pcurvature.connection import symbolic_connection, symbolic_pcurvature
from pcurvature.curve import Curve
from pcurvature.polyring import parse

hypothesis_settings.register_profile("pcurvature", derandomize=True, max_examples=100)
hypothesis_settings.load_profile("pcurvature")


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture(scope="session")
def symbolic_matrices():
    """The symbolic p-curvature matrices for p = 3, 5, 7, computed once per session."""
    return {p: symbolic_pcurvature(p) for p in (3, 5, 7)}


@pytest.fixture(scope="session")
def connections():
    return {p: symbolic_connection(p) for p in (3, 5, 7)}


@pytest.fixture
def golden():
    """Parse a polynomial in the ring of the symbolic curve of characteristic p."""

    def build(p: int, text: str):
        return parse(text, Curve.symbolic(p).ring)

    return build
