"""Cyclic frame starters: verification, nonexistence certificates and backtracking search."""

import json
import os

from . import _core
from ._core import ConfigError, Error, InvalidTypeError, ParseError

__all__ = [
    "ConfigError",
    "Error",
    "InvalidTypeError",
    "ParseError",
    "census",
    "certify",
    "check_corpus",
    "corpus",
    "render_table",
    "round_trip",
    "search",
    "strong_to_adder",
    "sum_of_squares",
    "table",
    "verify",
]


def _text(starter):
    if isinstance(starter, (str, os.PathLike)) and os.path.exists(starter):
        with open(starter) as f:
            return f.read()
    if isinstance(starter, str):
        return starter
    return json.dumps(starter)


def verify(starter, property="skew"):
    """Report for a starter given as a dict, JSON text or file path."""
    return json.loads(_core.verify(_text(starter), property))


def certify(type):
    return json.loads(_core.certify(type))


def search(type, property="skew", mode="find_first", budget=None, workers=1, symmetry=True,
           multiplier=False, branch="fewest_candidates", max_kept=1000):
    return json.loads(_core.search(type, property, mode, budget, workers, symmetry, multiplier, branch, max_kept))


def table(max_g=57, budget=1_000_000_000, deep=False, all_types=False, workers=1):
    return json.loads(_core.table(max_g, budget, deep, all_types, workers))


def render_table(max_g=57, budget=1_000_000_000, format="md"):
    return _core.render_table(max_g, budget, format)


def corpus():
    return json.loads(_core.corpus())


def check_corpus():
    return json.loads(_core.check_corpus())


def strong_to_adder(starter):
    return json.loads(_core.strong_to_adder(_text(starter)))


def round_trip(starter):
    """strong_to_adder followed by adder_to_strong."""
    return json.loads(_core.round_trip(_text(starter)))


def census(starter, m):
    """Pair counts a_{i,j} keyed by "i,j"."""
    return _core.census(_text(starter), m)


def sum_of_squares(g, h):
    return _core.sum_of_squares(g, h)
