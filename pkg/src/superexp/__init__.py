"""Executable reductions, oracles and derandomization devices for k x k table problems."""

__version__ = "0.1.0"
