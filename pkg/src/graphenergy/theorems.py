"""Numerical checks of the energy inequalities and their equality cases.

Every checker returns a :class:`BoundReport`. ``gap`` is ``rhs - lhs``,
so a bound holds when ``gap >= -abs_tol``; equality is declared when
``|gap| <= eq_tol * (1 + |rhs|)``. Where the theory characterises the
equality case, ``predicted_equality`` carries that prediction and
``consistent`` records whether the numbers agree with it.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from graphenergy.energy import (
    graph_energy,
    laplacian_energy,
    mean_weight,
    weight_stats,
)
from graphenergy.errors import PreconditionError
from graphenergy.graph import (
    WeightedGraph,
    disjoint_union,
    is_bipartite,
    is_connected,
    is_omega_regular,
    laplacian,
    signless_laplacian,
)
from graphenergy.linalg import MatrixLike, as_matrix, eigvalsh, is_psd, matrix_energy

STRICT = "strict"
EQUAL = "equal_within_tol"
VIOLATED = "violated"

KY_FAN = "ky_fan"
MD_UPPER = "md_upper"
BIPARTITE_LOWER = "bipartite_lower"
SANDWICH_LOWER = "sandwich_lower"
UNION_UPPER = "union_upper"
BIPARTITE_SIMILARITY = "bipartite_similarity"

THEOREMS = (KY_FAN, MD_UPPER, BIPARTITE_LOWER, SANDWICH_LOWER, UNION_UPPER, BIPARTITE_SIMILARITY)


@dataclass(frozen=True)
class Tolerances:
    abs_tol: float = 1e-8
    eq_tol: float = 1e-7
    # elementwise agreement of the L and signless-L spectra on bipartite graphs
    spectral_tol: float = 1e-8


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class BoundReport:
    theorem: str
    lhs: float
    rhs: float
    gap: float
    holds: bool
    equality: str
    predicted_equality: Optional[bool] = None
    consistent: Optional[bool] = None
    middle: Optional[float] = None
    binding: Optional[str] = None

    @property
    def is_equal(self) -> bool:
        return self.equality == EQUAL

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _classify(gap: float, rhs: float, tol: Tolerances) -> tuple[bool, str]:
    holds = gap >= -tol.abs_tol
    if not holds:
        return False, VIOLATED
    if abs(gap) <= tol.eq_tol * (1.0 + abs(rhs)):
        return True, EQUAL
    return True, STRICT


def _report(theorem: str, lhs: float, rhs: float, tol: Tolerances,
            predicted: Optional[bool] = None, **extra) -> BoundReport:
    gap = rhs - lhs
    holds, equality = _classify(gap, rhs, tol)
    consistent = None if predicted is None else (equality == EQUAL) == predicted
    return BoundReport(theorem, lhs, rhs, gap, holds, equality, predicted, consistent, **extra)


def _require_bipartite(g: WeightedGraph) -> None:
    if is_bipartite(g) is None:
        raise PreconditionError("graph is not bipartite")


def check_ky_fan(a: MatrixLike, b: MatrixLike, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    """E(A + B) <= E(A) + E(B).

    Equality is predicted only in the sufficient case where A and B are
    both PSD (the unitary factor is the identity); otherwise no
    prediction is made.
    """
    a, b = as_matrix(a), as_matrix(b)
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    lhs = matrix_energy(a + b)
    rhs = matrix_energy(a) + matrix_energy(b)
    predicted = True if (a.symmetric and b.symmetric and is_psd(a) and is_psd(b)) else None
    return _report(KY_FAN, lhs, rhs, tol, predicted)


def check_md_bound(g: WeightedGraph, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    """LE_w(G) <= n MD_w(G) + E(G); equality iff w-regular, predicted for connected G only."""
    lhs = laplacian_energy(g)
    rhs = g.n * weight_stats(g).md + graph_energy(g)
    predicted = is_omega_regular(g, tol.eq_tol) if is_connected(g) else None
    return _report(MD_UPPER, lhs, rhs, tol, predicted)


def check_bipartite_lower(g: WeightedGraph, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    """E(G) <= LE_w(G) for bipartite G; equality predicted iff w-regular."""
    _require_bipartite(g)
    lhs = graph_energy(g)
    rhs = laplacian_energy(g)
    return _report(BIPARTITE_LOWER, lhs, rhs, tol, is_omega_regular(g, tol.eq_tol))


def check_sandwich(g: WeightedGraph, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    """max(n MD_w, E) <= LE_w <= n MD_w + E for bipartite G.

    ``lhs`` is the lower bound, ``middle`` the Laplacian energy and ``rhs``
    the upper bound; ``gap`` is the smaller of the two slacks and
    ``binding`` names the side it comes from.
    """
    _require_bipartite(g)
    nmd = g.n * weight_stats(g).md
    e = graph_energy(g)
    le = laplacian_energy(g)
    lower, upper = max(nmd, e), nmd + e
    lo_slack, hi_slack = le - lower, upper - le
    scale = tol.eq_tol * (1.0 + abs(upper))
    if abs(lo_slack) <= scale and abs(hi_slack) <= scale:
        binding = "both"
    else:
        binding = "lower" if lo_slack <= hi_slack else "upper"
    gap = min(lo_slack, hi_slack)
    holds, equality = _classify(gap, upper, tol)
    return BoundReport(SANDWICH_LOWER, lower, upper, gap, holds, equality,
                       middle=le, binding=binding)


def check_union_bound(parts: Sequence[WeightedGraph],
                      tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    """LE of a disjoint union against the component energies plus mean offsets.

    ``rhs = sum LE_i + sum |mean_i - mean| n_i``; equality is predicted
    iff every component mean equals the overall mean.
    """
    if not parts:
        raise ValueError("check_union_bound needs at least one component")
    union = disjoint_union(parts)
    wbar = mean_weight(union)
    offsets = [mean_weight(g) - wbar for g in parts]
    lhs = laplacian_energy(union)
    rhs = (math.fsum(laplacian_energy(g) for g in parts)
           + math.fsum(abs(b) * g.n for b, g in zip(offsets, parts)))
    predicted = all(abs(b) <= tol.eq_tol for b in offsets)
    return _report(UNION_UPPER, lhs, rhs, tol, predicted)


def check_bipartite_similarity(g: WeightedGraph,
                               tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    """Sorted spectra of L_w and signless L_w agree on a bipartite graph.

    Not an inequality: ``gap`` (and ``lhs``) is the largest elementwise
    spectral difference, ``rhs`` is 0, and the check holds when the gap is
    within ``spectral_tol``.
    """
    _require_bipartite(g)
    mu = eigvalsh(laplacian(g))
    nu = eigvalsh(signless_laplacian(g))
    diff = float(np.max(np.abs(mu - nu)))
    holds = diff <= tol.spectral_tol
    return BoundReport(BIPARTITE_SIMILARITY, diff, 0.0, diff, holds,
                       EQUAL if holds else VIOLATED)
