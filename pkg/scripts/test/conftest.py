import os
import sys

import pytest

# repository root, so "src" imports resolve as they do for main.py
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "..")))

from src.geometry.lazy_curve import get_curve_manager
from src.recurrence.params import RecurrenceParams


@pytest.fixture(scope="session")
def case_params():
    """Representative parameter set per case tag."""
    return {
        "IA": RecurrenceParams(1.0, 1.0, 0.0),
        "IB": RecurrenceParams(1.0, -1.0, 0.0),
        "IC": RecurrenceParams(1.0, 0.0, 0.3),
        "IIA": RecurrenceParams(0.0, 0.5, 0.0),
        "IIB": RecurrenceParams(0.0, -1.0, 0.0),
        "IIC": RecurrenceParams(0.0, 0.0, 0.25),
    }


@pytest.fixture(scope="session")
def curve_a1():
    """Gamma_A for A = 1 at default resolution, traced once per session."""
    return get_curve_manager().get_curve(1.0)
