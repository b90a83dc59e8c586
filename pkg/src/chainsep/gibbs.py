"""Gibbs states, partition functions, marginals, and correlation checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetError, GeometryError
from .linalg import (
    LocalOperator,
    embed,
    herm_exp,
    identity,
    min_eig,
    op_norm,
    partial_trace,
    trace_norm,
)
from .model import Interaction, RegionsABC, hamiltonian

DEFAULT_BUDGET = 4096
LOG_FLOOR = 1e-300


def _check_budget(ia: Interaction, region: Sequence[int], budget: int) -> None:
    dim = ia.local_dim ** len(tuple(region))
    if dim > budget:
        raise BudgetError(dim, budget)


@dataclass(frozen=True, eq=False)
class GibbsEnsemble:
    """A normalized thermal state exp(-H)/Z on a region, with Z alongside."""

    interaction: Interaction
    region: tuple[int, ...]
    z: float
    rho: LocalOperator
    h: LocalOperator


def partition_function(
    ia: Interaction, region: Sequence[int], budget: int = DEFAULT_BUDGET
) -> float:
    _check_budget(ia, region, budget)
    w = np.linalg.eigvalsh(hamiltonian(ia, region).matrix)
    return float(np.exp(-w).sum())


def gibbs(
    ia: Interaction, region: Sequence[int], budget: int = DEFAULT_BUDGET
) -> GibbsEnsemble:
    region = tuple(sorted(set(int(s) for s in region)))
    _check_budget(ia, region, budget)
    h = hamiltonian(ia, region)
    boltz = herm_exp(h, -1.0)
    z = float(boltz.trace().real)
    rho = LocalOperator(region, boltz.matrix / z, ia.local_dim)
    if abs(rho.trace().real - 1.0) > 1e-12:
        raise RuntimeError("Gibbs state failed its normalization check")
    return GibbsEnsemble(ia, region, z, rho, h)


def marginal(g: GibbsEnsemble, x: Sequence[int]) -> LocalOperator:
    x = tuple(sorted(set(int(s) for s in x)))
    if not set(x) <= set(g.region):
        raise GeometryError(f"{x} is not a subregion of {g.region}")
    if x == g.region:
        return g.rho
    return partial_trace(g.rho, tuple(s for s in g.region if s not in set(x)))


# ---------------------------------------------------------------------------
# Entropic quantities
# ---------------------------------------------------------------------------

def entropy(rho: LocalOperator) -> float:
    """von Neumann entropy in nats, with a defensive eigenvalue floor."""
    w = np.linalg.eigvalsh(rho.matrix)
    w = np.clip(w, LOG_FLOOR, None)
    return float(-(w * np.log(w)).sum())


def _log_matrix(rho: LocalOperator) -> np.ndarray:
    w, v = np.linalg.eigh(rho.matrix)
    w = np.clip(w, LOG_FLOOR, None)
    return (v * np.log(w)) @ v.conj().T


def relative_entropy(rho: LocalOperator, sigma: LocalOperator) -> float:
    """Tr[rho (log rho - log sigma)] for states on the same support."""
    if rho.support != sigma.support:
        raise GeometryError("relative entropy requires matching supports")
    w = np.linalg.eigvalsh(rho.matrix)
    w = np.clip(w, LOG_FLOOR, None)
    tr_rho_log_rho = float((w * np.log(w)).sum())
    tr_rho_log_sigma = float(np.trace(rho.matrix @ _log_matrix(sigma)).real)
    return tr_rho_log_rho - tr_rho_log_sigma


def mutual_information_of(rho_ac: LocalOperator, cut_a: Sequence[int]) -> float:
    """I(A:C) = D(rho_AC || rho_A x rho_C) for a state across a cut."""
    cut_a = tuple(sorted(int(s) for s in cut_a))
    cut_c = tuple(s for s in rho_ac.support if s not in set(cut_a))
    if not cut_a or not cut_c or not set(cut_a) <= set(rho_ac.support):
        raise GeometryError("cut must split the support into two nonempty parts")
    rho_a = partial_trace(rho_ac, cut_c)
    rho_c = partial_trace(rho_ac, cut_a)
    product = embed(rho_a, rho_ac.support) @ embed(rho_c, rho_ac.support)
    return max(relative_entropy(rho_ac, product), 0.0)


def mutual_information(
    ia: Interaction, regions: RegionsABC, budget: int = DEFAULT_BUDGET
) -> float:
    g = gibbs(ia, regions.all_sites, budget)
    return mutual_information_of(marginal(g, regions.ac), regions.a)


# ---------------------------------------------------------------------------
# Inequality checks consumed by the verification suites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionRatioReport:
    z_a: float
    z_b: float
    z_ab: float
    ratio_bound_ok: bool          # Tr e^{-H'} / Tr e^{-H} <= e^{||H-H'||}
    size_bounds_ok: bool          # e^{(log d - J)|A|} <= Z_A <= e^{(log d + J)|A|}
    split_bounds_ok: bool         # e^{-rJ} <= Z_A Z_B / Z_AB <= e^{rJ}

    @property
    def all_ok(self) -> bool:
        return self.ratio_bound_ok and self.size_bounds_ok and self.split_bounds_ok


def check_partition_ratios(
    ia: Interaction,
    a: Sequence[int],
    b: Sequence[int],
    budget: int = DEFAULT_BUDGET,
    slack: float = 1e-9,
) -> PartitionRatioReport:
    """Verify the three partition-function inequality chains for adjacent A, B."""
    a = tuple(sorted(int(s) for s in a))
    b = tuple(sorted(int(s) for s in b))
    if a[-1] + 1 != b[0]:
        raise GeometryError("A and B must be adjacent intervals")
    ab = a + b
    z_a = partition_function(ia, a, budget)
    z_b = partition_function(ia, b, budget)
    z_ab = partition_function(ia, ab, budget)

    h_sum = hamiltonian(ia, a) + hamiltonian(ia, b)
    h_ab = hamiltonian(ia, ab)
    gap = op_norm(h_ab - embed(h_sum, ab))
    ratio = z_ab / (z_a * z_b)
    ratio_ok = ratio <= np.exp(gap) * (1 + slack) and (1 / ratio) <= np.exp(gap) * (
        1 + slack
    )

    d, j = ia.local_dim, ia.strength
    size_ok = True
    for region, z in ((a, z_a), (b, z_b), (ab, z_ab)):
        lo = np.exp((np.log(d) - j) * len(region))
        hi = np.exp((np.log(d) + j) * len(region))
        size_ok &= lo * (1 - slack) <= z <= hi * (1 + slack)

    rj = ia.interaction_range * j
    split = z_a * z_b / z_ab
    split_ok = np.exp(-rj) * (1 - slack) <= split <= np.exp(rj) * (1 + slack)
    return PartitionRatioReport(z_a, z_b, z_ab, bool(ratio_ok), bool(size_ok), bool(split_ok))


@dataclass(frozen=True)
class FactorizationError:
    op_norm_err: float
    trace_norm_err: float


def factorization_error(
    ia: Interaction, regions: RegionsABC, budget: int = DEFAULT_BUDGET
) -> FactorizationError:
    """Norms of rho_AC - rho_A x rho_C on the full Gibbs state of ABC."""
    g = gibbs(ia, regions.all_sites, budget)
    rho_ac = marginal(g, regions.ac)
    rho_a = marginal(g, regions.a)
    rho_c = marginal(g, regions.c)
    diff = rho_ac - (embed(rho_a, regions.ac) @ embed(rho_c, regions.ac))
    return FactorizationError(op_norm(diff), trace_norm(diff))


def correlation(
    ia: Interaction,
    regions: RegionsABC,
    obs_a: LocalOperator,
    obs_c: LocalOperator,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """Connected correlator of observables supported in A and C."""
    if not set(obs_a.support) <= set(regions.a):
        raise GeometryError("obs_a must be supported in A")
    if not set(obs_c.support) <= set(regions.c):
        raise GeometryError("obs_c must be supported in C")
    g = gibbs(ia, regions.all_sites, budget)
    rho_ac = marginal(g, regions.ac)
    rho_a = marginal(g, regions.a)
    rho_c = marginal(g, regions.c)
    joint = embed(obs_a, regions.ac) @ embed(obs_c, regions.ac)
    first = float(np.trace(joint.matrix @ rho_ac.matrix).real)
    second = float(
        np.trace(embed(obs_a, regions.a).matrix @ rho_a.matrix).real
        * np.trace(embed(obs_c, regions.c).matrix @ rho_c.matrix).real
    )
    return first - second


@dataclass(frozen=True)
class MarginalFloorReport:
    inv_norm: float
    bound: float
    g_emp: float
    ok: bool


def marginal_inverse_norm(
    ia: Interaction, regions: RegionsABC, budget: int = DEFAULT_BUDGET
) -> MarginalFloorReport:
    """Check ||rho_B^{-1}|| against the expansional-derived exponential bound.

    The uniform constant is measured on this instance from the two
    expansionals at s = -1/2 that appear in the derivation of the bound.
    """
    from .expansionals import expansional  # late import: avoids a module cycle

    g = gibbs(ia, regions.all_sites, budget)
    rho_b = marginal(g, regions.b)
    inv_norm = 1.0 / min_eig(rho_b)

    rep_ab = expansional(ia, regions.a, regions.b, -0.5, budget)
    rep_abc = expansional(ia, regions.a + regions.b, regions.c, -0.5, budget)
    g_emp = max(
        1.0, rep_ab.norm_e, rep_ab.norm_e_inv, rep_abc.norm_e, rep_abc.norm_e_inv
    )
    d, j, r = ia.local_dim, ia.strength, ia.interaction_range
    bound = g_emp**4 * np.exp(2 * r * j) * np.exp((2 * j + np.log(d)) * len(regions.b))
    return MarginalFloorReport(inv_norm, float(bound), g_emp, inv_norm <= bound * (1 + 1e-9))
