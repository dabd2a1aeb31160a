"""Shared helpers for the test suite."""

import numpy as np


def dist(a, b):
    """Max absolute entrywise difference."""
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
