"""Spectral triples of Cuntz-Krieger graph and k-graph algebras."""

import json

from . import _core
from ._core import CkspecError, Graph, ktheory, sign_table as _sign_table

__all__ = [
    "CkspecError",
    "Graph",
    "cancellation_steps",
    "conditions",
    "graph_trace",
    "hypotheses",
    "ktheory",
    "load",
    "multiply",
    "orientation_boundary",
    "parse",
    "profile",
    "run_cli",
    "sign_table",
]


def parse(text):
    if not isinstance(text, str):
        text = json.dumps(text)
    return _core.parse(text)


def load(path):
    with open(path, encoding="utf-8") as f:
        return _core.parse(f.read())


def graph_trace(graph, end_values=None):
    return json.loads(_core.graph_trace(graph, end_values or {}))


def hypotheses(graph):
    return json.loads(_core.hypotheses(graph))


def conditions(graph, level=3, window=100000, tolerance=0.05, end_values=None):
    return json.loads(_core.conditions(graph, level, window, tolerance, end_values or {}))


def profile(graph, vertex=None, window=100000):
    return json.loads(_core.profile(graph, vertex, window))


def orientation_boundary(graph, truncation=3):
    return json.loads(_core.orientation_boundary_1graph(graph, truncation))


def cancellation_steps(graph):
    return json.loads(_core.cancellation_steps(graph))


def sign_table(kmax=8):
    return json.loads(_sign_table(kmax))


def multiply(graph, a, b):
    return json.loads(_core.multiply(graph, json.dumps(a), json.dumps(b)))


def run_cli(*args):
    return _core.run_cli([str(a) for a in args])
