"""Entanglement tests and proof-carrying separability certificates.

The central object is an explicit decomposition of the conjugated marginal
e^{H_AC/2} rho_AC e^{H_AC/2} into PSD product terms, an identity component,
and superexponentially small tail terms whose smallness keeps the identity
component separable.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EmptyIntersectionError, GeometryError
from .expansionals import (
    _PAIRS,
    _truncated_or_identity,
    covering_bound,
    factorial_decay_bound,
)
from .gibbs import DEFAULT_BUDGET, gibbs, marginal, partition_function
from .linalg import (
    LocalOperator,
    embed,
    herm_exp,
    identity,
    is_psd,
    min_eig,
    op_norm,
    partial_trace,
    partial_transpose,
)
from .model import Interaction, RegionsABC, hamiltonian, k_neighborhood

VERDICT_SEPARABLE = "SeparableByConstruction"
VERDICT_PPT = "PPTConsistent"
VERDICT_ENTANGLED = "Entangled"
VERDICT_UNDETERMINED = "Undetermined"

NEGATIVITY_ZERO_TOL = 1e-12
FACTOR_PSD_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-9


# ---------------------------------------------------------------------------
# PPT / negativity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NegativityResult:
    negativity: float
    min_pt_eig: float


def _check_cut(rho: LocalOperator, cut) -> tuple[tuple[int, ...], tuple[int, ...]]:
    cut_a = tuple(sorted(int(s) for s in cut[0]))
    cut_c = tuple(sorted(int(s) for s in cut[1]))
    if set(cut_a) & set(cut_c) or set(cut_a) | set(cut_c) != set(rho.support):
        raise GeometryError(
            f"cut ({cut_a}, {cut_c}) does not partition support {rho.support}"
        )
    if not cut_a or not cut_c:
        raise GeometryError("both sides of the cut must be nonempty")
    return cut_a, cut_c


def negativity(rho: LocalOperator, cut) -> NegativityResult:
    """Sum of |negative eigenvalues| of the partial transpose; 0 iff PPT."""
    _, cut_c = _check_cut(rho, cut)
    w = np.linalg.eigvalsh(partial_transpose(rho, cut_c).matrix)
    return NegativityResult(float(-w[w < 0].sum()), float(w[0]))


# ---------------------------------------------------------------------------
# Separable decompositions and certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    """Weighted PSD x PSD product terms across a cut, plus an identity part."""

    cut: tuple[tuple[int, ...], tuple[int, ...]]
    terms: tuple[tuple[float, LocalOperator, LocalOperator], ...]
    residual_identity_coeff: float = 0.0

    @property
    def local_dim(self) -> int:
        return self.terms[0][1].local_dim if self.terms else 2

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.cut[0]) | set(self.cut[1])))

    def reconstruct(self) -> LocalOperator:
        full = self.support
        d = self.local_dim
        out = self.residual_identity_coeff * identity(full, d)
        for w, fa, fc in self.terms:
            out = out + w * (embed(fa, full) @ embed(fc, full))
        return out

    def conjugate(self, ya: LocalOperator, yc: LocalOperator) -> "SeparableDecomposition":
        """Conjugate every factor by (Ya x Yc); the identity part becomes an
        ordinary product term Ya Ya^+ x Yc Yc^+."""
        terms = [
            (w, ya @ fa @ ya.dagger(), yc @ fc @ yc.dagger())
            for w, fa, fc in self.terms
        ]
        if self.residual_identity_coeff:
            terms.append(
                (
                    self.residual_identity_coeff,
                    ya @ ya.dagger(),
                    yc @ yc.dagger(),
                )
            )
        return SeparableDecomposition(self.cut, tuple(terms), 0.0)

    def __add__(self, other: "SeparableDecomposition") -> "SeparableDecomposition":
        if other.cut != self.cut:
            raise GeometryError("can only combine decompositions on the same cut")
        return SeparableDecomposition(
            self.cut,
            self.terms + other.terms,
            self.residual_identity_coeff + other.residual_identity_coeff,
        )

    def scaled(self, w: float) -> "SeparableDecomposition":
        if w < 0:
            raise ValueError("conic combinations need nonnegative weights")
        return SeparableDecomposition(
            self.cut,
            tuple((w * wi, fa, fc) for wi, fa, fc in self.terms),
            w * self.residual_identity_coeff,
        )


@dataclass(frozen=True)
class DecompositionCheck:
    factors_psd: bool
    weights_nonnegative: bool
    term_count_ok: bool
    reconstruction_rel_err: float | None
    ok: bool


def validate_decomposition(
    dec: SeparableDecomposition,
    target: LocalOperator | None = None,
    psd_tol: float = FACTOR_PSD_TOL,
    recon_tol: float = RECONSTRUCTION_TOL,
) -> DecompositionCheck:
    factors_psd = all(
        is_psd(fa, psd_tol) and is_psd(fc, psd_tol) for _, fa, fc in dec.terms
    )
    weights_ok = all(w >= 0 for w, _, _ in dec.terms) and (
        dec.residual_identity_coeff >= 0
    )
    d = dec.local_dim
    cap = (d ** len(dec.cut[0]) * d ** len(dec.cut[1])) ** 2
    count_ok = len(dec.terms) + (1 if dec.residual_identity_coeff else 0) <= cap
    rel_err = None
    if target is not None:
        recon = dec.reconstruct()
        scale = max(float(np.linalg.norm(target.matrix)), 1e-300)
        rel_err = float(np.linalg.norm(recon.matrix - embed(target, recon.support).matrix)) / scale
    ok = factors_psd and weights_ok and count_ok and (
        rel_err is None or rel_err <= recon_tol
    )
    return DecompositionCheck(factors_psd, weights_ok, count_ok, rel_err, ok)


@dataclass(frozen=True, eq=False)
class Certificate:
    verdict: str
    negativity: float | None = None
    min_pt_eig: float | None = None
    ball_margin: float | None = None
    decomposition: SeparableDecomposition | None = None


def ball_radius(dim_a: int, dim_c: int) -> float:
    """Operator-norm radius around the identity inside which 1 + Delta stays
    separable across the cut."""
    return 1.0 / math.sqrt(dim_a * dim_c)


def identity_ball_certificate(delta: LocalOperator, cut) -> Certificate:
    """Certify 1 + Delta via the separability ball around the identity.

    The ball dimensions are those of Delta's support.  When the ball test
    passes, PPT is additionally run as a sanity oracle and must agree.
    """
    cut_a, cut_c = _check_cut(delta, cut)
    if not delta.is_hermitian():
        raise GeometryError("the perturbation must be Hermitian")
    d = delta.local_dim
    radius = ball_radius(d ** len(cut_a), d ** len(cut_c))
    nrm = op_norm(delta)
    state = identity(delta.support, d) + delta
    tr = state.trace().real
    neg = negativity(state * (1.0 / tr), (cut_a, cut_c)) if tr > 0 else None
    margin = radius - nrm
    if nrm <= radius * (1 + 1e-12):
        if neg is None or neg.negativity > FACTOR_PSD_TOL:
            raise RuntimeError(
                "ball condition held but the PPT sanity oracle failed; "
                "this indicates an implementation bug"
            )
        return Certificate(
            VERDICT_SEPARABLE,
            negativity=neg.negativity,
            min_pt_eig=neg.min_pt_eig,
            ball_margin=margin,
        )
    if neg is not None and neg.negativity > NEGATIVITY_ZERO_TOL:
        return Certificate(
            VERDICT_ENTANGLED,
            negativity=neg.negativity,
            min_pt_eig=neg.min_pt_eig,
            ball_margin=margin,
        )
    return Certificate(
        VERDICT_PPT,
        negativity=None if neg is None else neg.negativity,
        min_pt_eig=None if neg is None else neg.min_pt_eig,
        ball_margin=margin,
    )


def exact_sep_test(rho: LocalOperator, cut) -> Certificate:
    """PPT as an exact separability test, valid only for 2x2 and 2x3 cuts."""
    cut_a, cut_c = _check_cut(rho, cut)
    d = rho.local_dim
    if d ** len(cut_a) * d ** len(cut_c) > 6:
        raise GeometryError(
            "PPT is only exact up to 2x3; use certify_marginal or the "
            "identity-ball certificate for larger cuts"
        )
    neg = negativity(rho, (cut_a, cut_c))
    verdict = (
        VERDICT_SEPARABLE if neg.negativity <= NEGATIVITY_ZERO_TOL else VERDICT_ENTANGLED
    )
    return Certificate(verdict, negativity=neg.negativity, min_pt_eig=neg.min_pt_eig)


# ---------------------------------------------------------------------------
# Constructive decomposition of the conjugated truncated marginal
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoreDecomposition:
    """Split of e^{H_AC/2} rho_AC e^{H_AC/2} on the k-neighbourhood into
    separable product terms + identity budget + a small remainder."""

    k: int
    cut: tuple[tuple[int, ...], tuple[int, ...]]
    gamma: float
    shift_a: float
    shift_c: float
    min_eig_a: float
    min_eig_c: float
    gamma_terms: SeparableDecomposition
    delta: LocalOperator
    tilde_ac: LocalOperator
    delta_norm: float
    ball_ratio: float
    ball_threshold: float
    ball_ok: bool
    factors_psd: bool
    reconstruction_rel_err: float


def decompose_truncated_marginal(
    ia: Interaction,
    regions: RegionsABC,
    k: int,
    budget: int = DEFAULT_BUDGET,
) -> CoreDecomposition:
    """Constructive separable + identity split on the k-neighbourhood of B.

    The identity budget is gamma(k) = (min eig of the conjugated A-marginal)
    x (min eig of the conjugated C-marginal) / 2, with per-side shifts equal
    to the measured minima, so all shifted factors are PSD by construction.
    """
    if len(regions.b) < ia.interaction_range:
        raise GeometryError("|B| must be at least the interaction range")
    hood = k_neighborhood(regions, k)
    hood_set = set(hood)
    a_clip = tuple(s for s in regions.a if s in hood_set)
    c_clip = tuple(s for s in regions.c if s in hood_set)
    if not a_clip or not c_clip:
        raise EmptyIntersectionError(
            f"k={k} clips A or C to nothing inside the neighbourhood"
        )
    d = ia.local_dim
    g = gibbs(ia, hood, budget)
    ac = a_clip + c_clip
    rho_a = marginal(g, a_clip)
    rho_c = marginal(g, c_clip)
    rho_ac = marginal(g, ac)

    exp_a = herm_exp(hamiltonian(ia, a_clip), 0.5)
    exp_c = herm_exp(hamiltonian(ia, c_clip), 0.5)
    tilde_a = exp_a @ rho_a @ exp_a
    tilde_c = exp_c @ rho_c @ exp_c
    sandwich = herm_exp(hamiltonian(ia, ac), 0.5)
    tilde_ac = sandwich @ rho_ac @ sandwich
    delta = tilde_ac - (embed(tilde_a, ac) @ embed(tilde_c, ac))

    a_min = min_eig(tilde_a)
    c_min = min_eig(tilde_c)
    if a_min <= 0 or c_min <= 0:
        raise RuntimeError(
            "conjugated marginals should be positive definite; got "
            f"min eigs {a_min}, {c_min}"
        )
    gamma = a_min * c_min / 2.0
    fa = tilde_a - a_min * identity(a_clip, d)
    fc = tilde_c - c_min * identity(c_clip, d)
    dec = SeparableDecomposition(
        (a_clip, c_clip),
        (
            (1.0, fa, fc),
            (a_min, identity(a_clip, d), fc),
            (c_min, fa, identity(c_clip, d)),
        ),
        residual_identity_coeff=gamma,
    )
    recon = dec.reconstruct() + gamma * identity(ac, d) + delta
    scale = max(float(np.linalg.norm(tilde_ac.matrix)), 1e-300)
    rel_err = float(np.linalg.norm(recon.matrix - tilde_ac.matrix)) / scale

    delta_norm = op_norm(delta)
    threshold = ball_radius(d ** len(a_clip), d ** len(c_clip))
    ratio = delta_norm / gamma
    factors_psd = is_psd(fa) and is_psd(fc)
    if not factors_psd:
        raise RuntimeError(
            "shifted factors are not PSD although the shifts equal the "
            "measured minimal eigenvalues; this indicates a bug"
        )
    return CoreDecomposition(
        k=k,
        cut=(a_clip, c_clip),
        gamma=gamma,
        shift_a=a_min,
        shift_c=c_min,
        min_eig_a=a_min,
        min_eig_c=c_min,
        gamma_terms=dec,
        delta=delta,
        tilde_ac=tilde_ac,
        delta_norm=delta_norm,
        ball_ratio=ratio,
        ball_threshold=threshold,
        ball_ok=ratio <= threshold * (1 + 1e-12),
        factors_psd=factors_psd,
        reconstruction_rel_err=rel_err,
    )


# ---------------------------------------------------------------------------
# Tail terms and the telescoping identity
# ---------------------------------------------------------------------------

def _traced_interface_product(
    ia: Interaction,
    regions: RegionsABC,
    kk: int,
    s: float,
    budget: int,
    target: tuple[int, ...],
) -> LocalOperator:
    """tr_B[rho^B F_kk] on target minus B, where F_kk is the four-factor
    product of k-truncated interface operators."""
    ea = embed(_truncated_or_identity(ia, regions, "A:B", kk, s, budget), target)
    ec = embed(_truncated_or_identity(ia, regions, "AB:C", kk, s, budget), target)
    f = ea.dagger() @ ec.dagger() @ ec @ ea
    rho_b = gibbs(ia, regions.b, budget).rho
    return partial_trace(embed(rho_b, target) @ f, regions.b)


@dataclass(frozen=True, eq=False)
class TailTerm:
    k: int
    op: LocalOperator
    norm: float
    support_size: int


def tail_term(
    ia: Interaction,
    regions: RegionsABC,
    k: int,
    s: float = 0.5,
    budget: int = DEFAULT_BUDGET,
) -> TailTerm:
    """Difference of traced interface products between radii k+1 and k."""
    if k < 0:
        raise GeometryError("k must be nonnegative")
    target = k_neighborhood(regions, k + 1)
    out_support = tuple(t for t in target if t not in set(regions.b))
    kmax = max(len(regions.a), len(regions.c))
    if k >= kmax:
        d = ia.local_dim
        side = d ** len(out_support)
        op = LocalOperator(out_support, np.zeros((side, side)), d)
        return TailTerm(k, op, 0.0, len(out_support))
    upper = _traced_interface_product(ia, regions, k + 1, s, budget, target)
    lower = _traced_interface_product(ia, regions, k, s, budget, target)
    op = upper - lower
    return TailTerm(k, op, op_norm(op), len(out_support))


def tail_norm_bound(g_emp: float, k: int, r: int) -> float:
    """4 g^3 g^k / (floor(k/r)+1)!, the proof's tail norm budget."""
    return 4.0 * g_emp**3 * factorial_decay_bound(g_emp, k, r)


@dataclass(frozen=True)
class TelescopeReport:
    k0: int
    identity_rel_err: float
    k0_term_rel_err: float
    tail_norms: tuple[float, ...]


def telescope_verify(
    ia: Interaction,
    regions: RegionsABC,
    k0: int,
    s: float = 0.5,
    budget: int = DEFAULT_BUDGET,
) -> TelescopeReport:
    """Check the telescoping split of the conjugated marginal numerically.

    Verifies (a) that the full sandwiched marginal equals the k0 traced
    term plus the finite tail sum, and (b) that the traced k0 term equals
    its partition-ratio closed form.  Both identities hold at s = 1/2.
    """
    if len(regions.b) < ia.interaction_range:
        raise GeometryError("|B| must be at least the interaction range")
    if k0 < 1:
        raise GeometryError("k0 must be >= 1")
    sites = regions.all_sites
    acs = regions.ac
    g_full = gibbs(ia, sites, budget)
    z_b = partition_function(ia, regions.b, budget)
    sandwich = herm_exp(hamiltonian(ia, acs), s)
    lhs = (g_full.z / z_b) * (sandwich @ marginal(g_full, acs) @ sandwich)

    kmax = max(len(regions.a), len(regions.c))
    t_k0 = embed(
        _traced_interface_product(ia, regions, k0, s, budget, sites), acs
    )
    rhs = t_k0
    tail_norms = []
    for k in range(k0, kmax):
        t = tail_term(ia, regions, k, s, budget)
        tail_norms.append(t.norm)
        rhs = rhs + embed(t.op, acs)
    scale = max(float(np.linalg.norm(lhs.matrix)), 1e-300)
    identity_rel_err = float(np.linalg.norm(lhs.matrix - rhs.matrix)) / scale

    # closed form of the k0 term via the truncated Gibbs state
    hood = k_neighborhood(regions, k0)
    ac_clip = tuple(t for t in hood if t not in set(regions.b))
    g_k = gibbs(ia, hood, budget)
    z_k0 = g_k.z
    sw = herm_exp(hamiltonian(ia, ac_clip), s)
    closed = embed((z_k0 / z_b) * (sw @ marginal(g_k, ac_clip) @ sw), acs)
    cscale = max(float(np.linalg.norm(closed.matrix)), 1e-300)
    k0_term_rel_err = float(np.linalg.norm(t_k0.matrix - closed.matrix)) / cscale
    return TelescopeReport(k0, identity_rel_err, k0_term_rel_err, tuple(tail_norms))


# ---------------------------------------------------------------------------
# The full certification pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TailCheck:
    k: int
    norm: float
    identity_budget: float
    ball_margin: float
    factorial_bound: float


@dataclass(frozen=True, eq=False)
class DecompositionReport:
    verdict: str
    k0: int
    gamma_k0: float
    z_ratio: float
    reconstruction_rel_err: float
    per_k: tuple[TailCheck, ...]
    constants_used: dict
    core: CoreDecomposition
    negativity_cross_check: float
    k0_closed_form: float
    attempted_k0: tuple[int, ...] = ()


def _attempt_certificate(
    ia: Interaction,
    regions: RegionsABC,
    k0: int,
    s: float,
    budget: int,
    recon_tol: float,
) -> DecompositionReport:
    d = ia.local_dim
    r = ia.interaction_range
    kmax = max(len(regions.a), len(regions.c))
    core = decompose_truncated_marginal(ia, regions, k0, budget)
    z_b = partition_function(ia, regions.b, budget)
    z_k0 = partition_function(ia, k_neighborhood(regions, k0), budget)
    ratio = z_k0 / z_b
    identity_mass = ratio * core.gamma
    g_emp = covering_bound(ia, regions, range(k0, kmax + 2), s, budget)

    per_k = []
    tails = []
    for k in range(k0, kmax):
        t = tail_term(ia, regions, k, s, budget)
        budget_k = identity_mass * 2.0 ** (-(k - k0 + 1))
        dim_a = d ** min(k + 1, len(regions.a))
        dim_c = d ** min(k + 1, len(regions.c))
        margin = budget_k * ball_radius(dim_a, dim_c) - t.norm
        per_k.append(
            TailCheck(k, t.norm, budget_k, margin, tail_norm_bound(g_emp, k, r))
        )
        tails.append(t.op)

    acs = regions.ac
    sites = regions.all_sites
    g_full = gibbs(ia, sites, budget)
    sandwich = herm_exp(hamiltonian(ia, acs), s)
    rho_ac = marginal(g_full, acs)
    lhs = (g_full.z / z_b) * (sandwich @ rho_ac @ sandwich)
    rhs = ratio * embed(core.tilde_ac, acs)
    for t_op in tails:
        rhs = rhs + embed(t_op, acs)
    scale = max(float(np.linalg.norm(lhs.matrix)), 1e-300)
    rel_err = float(np.linalg.norm(lhs.matrix - rhs.matrix)) / scale

    ok = (
        core.ball_ok
        and core.factors_psd
        and all(c.ball_margin >= 0 for c in per_k)
        and rel_err <= recon_tol
    )
    neg = negativity(rho_ac, (regions.a, regions.c)).negativity

    # comparison-only closed form of k0; the feasibility search is authoritative
    c_prime = max(1.0, 8.0 * d * g_emp**3 / max(identity_mass, 1e-300))
    alpha_prime = math.log(2.0 * g_emp * d)
    alpha_zero = math.log(2.0)
    reff = max(r, 1)
    k0_closed = reff * math.e * math.exp(
        reff * (math.log(c_prime) + alpha_zero + alpha_prime)
    )
    constants = {
        "C": identity_mass,
        "alpha": 0.0,
        "C_prime": min(core.min_eig_a, core.min_eig_c),
        "alpha_prime": 0.0,
        "g_emp": g_emp,
        "gamma_k0": core.gamma,
        "z_ratio": ratio,
    }
    return DecompositionReport(
        verdict=VERDICT_SEPARABLE if ok else VERDICT_UNDETERMINED,
        k0=k0,
        gamma_k0=core.gamma,
        z_ratio=ratio,
        reconstruction_rel_err=rel_err,
        per_k=tuple(per_k),
        constants_used=constants,
        core=core,
        negativity_cross_check=neg,
        k0_closed_form=k0_closed,
    )


def certify_marginal(
    ia: Interaction,
    regions: RegionsABC,
    k0: int | None = None,
    s: float = 0.5,
    budget: int = DEFAULT_BUDGET,
    recon_tol: float = RECONSTRUCTION_TOL,
) -> DecompositionReport:
    """Run the full separability pipeline for rho_AC across the A:C cut.

    If k0 is not given, the smallest feasible k0 in {1..max(|A|,|C|)} is
    searched; the report of the last attempt is returned when none passes.
    """
    if len(regions.b) < ia.interaction_range:
        raise GeometryError("|B| must be at least the interaction range")
    kmax = max(len(regions.a), len(regions.c))
    candidates = [k0] if k0 is not None else list(range(1, kmax + 1))
    attempted = []
    report = None
    for cand in candidates:
        report = _attempt_certificate(ia, regions, cand, s, budget, recon_tol)
        attempted.append(cand)
        if report.verdict == VERDICT_SEPARABLE:
            break
    return DecompositionReport(
        verdict=report.verdict,
        k0=report.k0,
        gamma_k0=report.gamma_k0,
        z_ratio=report.z_ratio,
        reconstruction_rel_err=report.reconstruction_rel_err,
        per_k=report.per_k,
        constants_used=report.constants_used,
        core=report.core,
        negativity_cross_check=report.negativity_cross_check,
        k0_closed_form=report.k0_closed_form,
        attempted_k0=tuple(attempted),
    )


# ---------------------------------------------------------------------------
# Certificate serialization (documented external format)
# ---------------------------------------------------------------------------

def _matrix_to_lists(m: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_lists(data) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data])


def decomposition_to_dict(dec: SeparableDecomposition) -> dict:
    return {
        "cut": [list(dec.cut[0]), list(dec.cut[1])],
        "local_dim": dec.local_dim,
        "residual_identity_coeff": dec.residual_identity_coeff,
        "terms": [
            {
                "weight": w,
                "factor_a": _matrix_to_lists(fa.matrix),
                "factor_c": _matrix_to_lists(fc.matrix),
            }
            for w, fa, fc in dec.terms
        ],
    }


def decomposition_from_dict(data: dict) -> SeparableDecomposition:
    cut_a = tuple(data["cut"][0])
    cut_c = tuple(data["cut"][1])
    d = data["local_dim"]
    terms = tuple(
        (
            float(t["weight"]),
            LocalOperator(cut_a, _matrix_from_lists(t["factor_a"]), d),
            LocalOperator(cut_c, _matrix_from_lists(t["factor_c"]), d),
        )
        for t in data["terms"]
    )
    return SeparableDecomposition(
        (cut_a, cut_c), terms, float(data["residual_identity_coeff"])
    )


def certificate_to_json(cert: Certificate) -> str:
    payload = {
        "format": "chainsep-certificate-v1",
        "verdict": cert.verdict,
        "negativity": cert.negativity,
        "min_pt_eig": cert.min_pt_eig,
        "ball_margin": cert.ball_margin,
        "tolerances": {
            "factor_psd": FACTOR_PSD_TOL,
            "reconstruction": RECONSTRUCTION_TOL,
            "negativity_zero": NEGATIVITY_ZERO_TOL,
        },
        "decomposition": (
            None
            if cert.decomposition is None
            else decomposition_to_dict(cert.decomposition)
        ),
    }
    return json.dumps(payload, indent=2)


def certificate_from_json(text: str) -> Certificate:
    data = json.loads(text)
    dec = data.get("decomposition")
    return Certificate(
        verdict=data["verdict"],
        negativity=data.get("negativity"),
        min_pt_eig=data.get("min_pt_eig"),
        ball_margin=data.get("ball_margin"),
        decomposition=None if dec is None else decomposition_from_dict(dec),
    )
