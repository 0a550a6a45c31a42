"""Exact hypergeometric nulls and negative controls for causal discovery evaluation.

Graph arguments accept either graph text (edge list or adjacency matrix) or a
path to a graph file. Reports come back as dicts.
"""

from __future__ import annotations

import json
import os
from typing import Any, Iterable, Mapping

from ._ncdisco import (
    ClassTooLarge,
    InputError,
    NumericalError,
    report_schema_version,
)
from . import _ncdisco

__all__ = [
    "ClassTooLarge",
    "InputError",
    "NumericalError",
    "compare",
    "expect",
    "fit_test",
    "pipeline",
    "report_schema_version",
    "sample",
]

GraphLike = str | os.PathLike


def _graph_text(g: GraphLike) -> str:
    if isinstance(g, os.PathLike):
        with open(g, encoding="utf-8") as f:
            return f.read()
    return g


def expect(m_true: int, m_est: int, *, d: int | None = None, m_max: int | None = None,
           metrics: Iterable[str] = (), level: float = 0.95, sweep: bool = False) -> dict[str, Any]:
    """Exact null expectation, median and central interval of adjacency metrics."""
    return json.loads(_ncdisco.expect(m_true, m_est, d=d, m_max=m_max, metrics=list(metrics),
                                      level=level, sweep=sweep))


def fit_test(truth: GraphLike, estimate: GraphLike, *, format: str = "auto") -> dict[str, Any]:
    """One-sided exact test of the estimate's skeleton against random guessing."""
    return json.loads(_ncdisco.fit_test(_graph_text(truth), _graph_text(estimate), format))


def compare(truth: GraphLike, estimate: GraphLike, *, format: str = "auto", metrics: Iterable[str] = (),
            nc_reps: int = 1000, seed: int = 1, nc_kind: str | None = None,
            extension_cap: int = 10000) -> dict[str, Any]:
    """Scores an estimate against a true DAG and against matched negative controls."""
    return json.loads(_ncdisco.compare(_graph_text(truth), _graph_text(estimate), format, list(metrics),
                                       nc_reps, seed, nc_kind, extension_cap))


def pipeline(config: Mapping[str, Any] | str) -> tuple[dict[str, Any], str]:
    """Runs a simulation study; returns (summary, replications CSV text)."""
    text = config if isinstance(config, str) else json.dumps(config)
    summary, csv = _ncdisco.pipeline(text)
    return json.loads(summary), csv


def sample(d: int, m: int, *, kind: str = "dag", seed: int = 1, stream: int = 0,
           format: str = "edge-list") -> str:
    """Uniform random DAG (or its CPDAG) with exactly m edges, as graph text."""
    return _ncdisco.sample(d, m, kind, seed, stream, format)
