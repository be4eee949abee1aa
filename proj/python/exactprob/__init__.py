"""Exact finite-probability models, with the BB84 first phase built in.

Thin wrapper over the C++ extension. All probabilities cross the boundary as
exact "p/q" strings; `fraction` turns one into a `fractions.Fraction`.
"""

from fractions import Fraction

from ._exactprob import (
    Model,
    eve_model_text,
    measurement_prob_one,
    parse_model,
    qkd_eve_stats,
    qkd_model_text,
    qkd_security,
    qkd_table,
    qkd_tree_render,
)

__all__ = [
    "Model",
    "eve_model_text",
    "fraction",
    "measurement_prob_one",
    "parse_model",
    "qkd_eve_stats",
    "qkd_model_text",
    "qkd_security",
    "qkd_table",
    "qkd_tree_render",
]


def fraction(exact: str) -> Fraction:
    """Exact "p/q" string to Fraction, e.g. fraction("3/4") == Fraction(3, 4)."""
    return Fraction(exact)
