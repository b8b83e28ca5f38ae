"""Weight statistics, graph energy and weighted Laplacian energy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from graphenergy.errors import InconsistencyError
from graphenergy.graph import WeightedGraph, adjacency_matrix, laplacian
from graphenergy.linalg import SymMatrix, eigvalsh, matrix_energy

ROUTE_RTOL = 1e-8


@dataclass(frozen=True)
class WeightStats:
    mean: float
    md: float
    var: float


def _mean(xs: Sequence[float]) -> float:
    if len(xs) == 0:
        raise ValueError("statistic of an empty list")
    return math.fsum(xs) / len(xs)


def mean_deviation(xs: Sequence[float]) -> float:
    """Mean absolute deviation about the arithmetic mean."""
    mu = _mean(xs)
    return math.fsum(abs(x - mu) for x in xs) / len(xs)


def variance(xs: Sequence[float]) -> float:
    """Population variance (divides by n)."""
    mu = _mean(xs)
    return math.fsum((x - mu) ** 2 for x in xs) / len(xs)


def weight_stats(g: WeightedGraph) -> WeightStats:
    w = g.weights
    return WeightStats(mean=_mean(w), md=mean_deviation(w), var=variance(w))


def mean_weight(g: WeightedGraph) -> float:
    return _mean(g.weights)


def adjacency_spectrum(g: WeightedGraph) -> np.ndarray:
    return eigvalsh(adjacency_matrix(g))


def laplacian_spectrum(g: WeightedGraph) -> np.ndarray:
    return eigvalsh(laplacian(g))


def graph_energy(g: WeightedGraph) -> float:
    """Sum of absolute adjacency eigenvalues."""
    if g.m == 0:
        return 0.0
    return math.fsum(abs(x) for x in adjacency_spectrum(g))


def shifted_laplacian(g: WeightedGraph) -> SymMatrix:
    """``L_w - mean(w) I``, whose matrix energy is the Laplacian energy."""
    return laplacian(g) - SymMatrix.identity(g.n) * mean_weight(g)


def laplacian_energy_routes(g: WeightedGraph) -> tuple[float, float]:
    """Laplacian energy by eigenvalue shift and by matrix energy of the shifted matrix."""
    mu = laplacian_spectrum(g)
    wbar = mean_weight(g)
    by_spectrum = math.fsum(abs(x - wbar) for x in mu)
    by_matrix = matrix_energy(shifted_laplacian(g))
    return by_spectrum, by_matrix


def route_discrepancy(a: float, b: float) -> float:
    return abs(a - b) / (1.0 + max(abs(a), abs(b)))


def laplacian_energy(g: WeightedGraph, cross_check: bool = False) -> float:
    """Sum of |mu_i - mean(w)| over the weighted Laplacian eigenvalues.

    With ``cross_check`` the matrix-energy route is evaluated as well and
    an :class:`InconsistencyError` is raised if the two disagree by more
    than ``ROUTE_RTOL`` relative.
    """
    if not cross_check:
        wbar = mean_weight(g)
        return math.fsum(abs(x - wbar) for x in laplacian_spectrum(g))
    a, b = laplacian_energy_routes(g)
    if route_discrepancy(a, b) > ROUTE_RTOL:
        raise InconsistencyError(f"Laplacian energy routes disagree: {a!r} vs {b!r}")
    return a
