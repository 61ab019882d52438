"""Repeated overlapping coalition formation over hidden relational rules,
with topic-model (OVERPRO), greedy top-k and Q-learning agents."""

from .backend import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
