"""Nonmonotonic story engine: stratification, lexicographic inference, and
narrative-tension emotions (curiosity, suspense, surprise)."""

from ._tension import *  # noqa: F401,F403
