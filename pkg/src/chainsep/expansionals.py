"""Interface operators relating coupled and decoupled Gibbs factors.

For adjacent intervals X, Y and |s| <= 1 the interface operator is
E(s) = exp(-s H_{XY}) exp(s(H_X + H_Y)); its norm stays bounded uniformly
in the interval sizes, and truncating the intervals changes it
superexponentially little.  This module computes these operators, their
k-truncations around the middle region, an empirical uniform-norm
constant, and the partial-trace contraction check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyIntersectionError, GeometryError
from .gibbs import DEFAULT_BUDGET, gibbs
from .linalg import LocalOperator, embed, herm_exp, identity, op_norm, partial_trace
from .model import Interaction, RegionsABC, hamiltonian, k_neighborhood


@dataclass(frozen=True, eq=False)
class ExpansionalReport:
    s: complex
    x: tuple[int, ...]
    y: tuple[int, ...]
    e: LocalOperator
    e_inv: LocalOperator
    norm_e: float
    norm_e_inv: float


def _as_interval(part: Sequence[int], name: str) -> tuple[int, ...]:
    part = tuple(sorted(int(s) for s in part))
    if not part:
        raise GeometryError(f"{name} must be nonempty")
    if part != tuple(range(part[0], part[-1] + 1)):
        raise GeometryError(f"{name} must be a contiguous interval, got {part}")
    return part


def expansional(
    ia: Interaction,
    x: Sequence[int],
    y: Sequence[int],
    s: complex,
    budget: int = DEFAULT_BUDGET,
) -> ExpansionalReport:
    """E(s) = e^{-s H_XY} e^{s(H_X + H_Y)} for adjacent intervals X, Y."""
    x = _as_interval(x, "X")
    y = _as_interval(y, "Y")
    if x[-1] + 1 != y[0]:
        raise GeometryError(f"X {x} and Y {y} must be adjacent")
    if abs(s) > 1 + 1e-12:
        raise GeometryError(f"|s| must be <= 1, got {abs(s)}")
    xy = x + y
    if ia.local_dim ** len(xy) > budget:
        from .errors import BudgetError

        raise BudgetError(ia.local_dim ** len(xy), budget)
    h_xy = hamiltonian(ia, xy)
    h_split = embed(hamiltonian(ia, x), xy) + embed(hamiltonian(ia, y), xy)
    coupled = herm_exp(h_xy, -s)
    split = herm_exp(h_split, s)
    e = coupled @ split
    e_inv = herm_exp(h_split, -s) @ herm_exp(h_xy, s)
    return ExpansionalReport(s, x, y, e, e_inv, op_norm(e), op_norm(e_inv))


_PAIRS = {"A:B": ("A", "B"), "AB:C": ("AB", "C")}


def truncated_expansional(
    ia: Interaction,
    regions: RegionsABC,
    pair: str,
    k: int,
    s: complex,
    budget: int = DEFAULT_BUDGET,
) -> ExpansionalReport:
    """Expansional with both intervals clipped to the k-neighbourhood of B."""
    if pair not in _PAIRS:
        raise GeometryError(f"pair must be one of {sorted(_PAIRS)}, got {pair!r}")
    hood = set(k_neighborhood(regions, k))
    left_name, right_name = _PAIRS[pair]
    left = tuple(t for t in regions.part(left_name) if t in hood)
    right = tuple(t for t in regions.part(right_name) if t in hood)
    if not left or not right:
        raise EmptyIntersectionError(
            f"pair {pair} at k={k} clips one interval to nothing"
        )
    return expansional(ia, left, right, s, budget)


def _truncated_or_identity(
    ia: Interaction,
    regions: RegionsABC,
    pair: str,
    k: int,
    s: complex,
    budget: int,
) -> LocalOperator:
    """Like truncated_expansional, but an empty clip yields the identity.

    With one interval clipped away there are no cross terms left, so the
    interface operator degenerates to the identity on the surviving part.
    """
    try:
        return truncated_expansional(ia, regions, pair, k, s, budget).e
    except EmptyIntersectionError:
        hood = set(k_neighborhood(regions, k))
        left_name, right_name = _PAIRS[pair]
        surviving = tuple(
            t
            for t in regions.part(left_name) + regions.part(right_name)
            if t in hood
        )
        return identity(surviving, ia.local_dim)


@dataclass(frozen=True)
class UniformBoundEstimate:
    value: float
    entries: tuple[tuple[int, int, complex, float, float], ...]
    # entries: (|X|, |Y|, s, ||E||, ||E^{-1}||) for every grid point evaluated


def estimate_uniform_bound(
    ia: Interaction,
    size_grid: Sequence[tuple[int, int]],
    s_grid: Sequence[complex],
    budget: int = DEFAULT_BUDGET,
) -> UniformBoundEstimate:
    """Empirical uniform norm constant: grid max of max(||E||, ||E^{-1}||, 1).

    Every admissible placement of adjacent intervals of the requested sizes
    inside the chain is evaluated, so non-translation-invariant models are
    probed everywhere.
    """
    if not size_grid or not s_grid:
        raise GeometryError("size and s grids must be nonempty")
    sites = ia.sites
    best = 1.0
    entries = []
    for nx, ny in size_grid:
        if nx < 1 or ny < 1:
            raise GeometryError("interval sizes must be >= 1")
        for start in range(len(sites) - nx - ny + 1):
            x = sites[start : start + nx]
            y = sites[start + nx : start + nx + ny]
            for s in s_grid:
                rep = expansional(ia, x, y, s, budget)
                best = max(best, rep.norm_e, rep.norm_e_inv)
                entries.append((nx, ny, s, rep.norm_e, rep.norm_e_inv))
    return UniformBoundEstimate(best, tuple(entries))


def covering_bound(
    ia: Interaction,
    regions: RegionsABC,
    k_values: Sequence[int],
    s: complex,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """Uniform-norm constant measured over every truncated expansional used
    downstream: both pairs, all requested k, plus the untruncated ones."""
    best = 1.0
    for pair in _PAIRS:
        for k in k_values:
            try:
                rep = truncated_expansional(ia, regions, pair, k, s, budget)
            except EmptyIntersectionError:
                continue
            best = max(best, rep.norm_e, rep.norm_e_inv)
        left, right = _PAIRS[pair]
        rep = expansional(
            ia, regions.part(left), regions.part(right), s, budget
        )
        best = max(best, rep.norm_e, rep.norm_e_inv)
    return best


def factorial_decay_bound(g_emp: float, ell: int, r: int) -> float:
    """g^ell / (floor(ell/r)+1)!, the superexponential truncation bound."""
    reff = max(r, 1)
    return g_emp**ell / math.factorial(ell // reff + 1)


@dataclass(frozen=True)
class DifferenceDecayReport:
    ell: int
    difference_norm: float
    inverse_difference_norm: float
    bound: float
    g_emp: float
    ok: bool


def difference_decay(
    ia: Interaction,
    x: Sequence[int],
    y: Sequence[int],
    extensions: tuple[Sequence[int], Sequence[int]],
    s: complex,
    g_emp: float | None = None,
    budget: int = DEFAULT_BUDGET,
) -> DifferenceDecayReport:
    """Compare ||E_{X,Y} - E_{X~X,YY~}|| against the factorial bound."""
    x = _as_interval(x, "X")
    y = _as_interval(y, "Y")
    ext_left = tuple(sorted(int(t) for t in extensions[0]))
    ext_right = tuple(sorted(int(t) for t in extensions[1]))
    if ext_left and ext_left[-1] + 1 != x[0]:
        raise GeometryError("left extension must immediately precede X")
    if ext_right and y[-1] + 1 != ext_right[0]:
        raise GeometryError("right extension must immediately succeed Y")

    base = expansional(ia, x, y, s, budget)
    if not ext_left and not ext_right:
        big = base
    else:
        big = expansional(ia, ext_left + x, y + ext_right, s, budget)
    target = big.e.support
    diff = op_norm(big.e - embed(base.e, target))
    diff_inv = op_norm(big.e_inv - embed(base.e_inv, target))
    if g_emp is None:
        g_emp = max(
            1.0, base.norm_e, base.norm_e_inv, big.norm_e, big.norm_e_inv
        )
    ell = min(len(x), len(y))
    bound = factorial_decay_bound(g_emp, ell, ia.interaction_range)
    ok = diff <= bound + 1e-12 and diff_inv <= bound + 1e-12
    return DifferenceDecayReport(ell, diff, diff_inv, bound, g_emp, ok)


@dataclass(frozen=True)
class ContractionReport:
    input_norm: float
    output_norm: float
    ok: bool


def contraction_check(rho_b: LocalOperator, x: LocalOperator) -> ContractionReport:
    """Verify that X -> tr_B[(1_A x rho_B) X] contracts the operator norm."""
    if not set(rho_b.support) <= set(x.support):
        raise GeometryError("rho_B must act on a subset of X's support")
    weighted = embed(rho_b, x.support) @ x
    out = partial_trace(weighted, rho_b.support)
    in_norm = op_norm(x)
    out_norm = op_norm(out)
    return ContractionReport(in_norm, out_norm, out_norm <= in_norm * (1 + 1e-10) + 1e-12)
