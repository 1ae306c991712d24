"""One-shot exponents for distinguishability distillation and dilution.

Everything here is phrased for a pair of same-dimension density operators
(rho, sigma).  The four exponent programs and the two smooth relative
entropies are solved as semidefinite programs with primal and dual
witnesses attached; the remaining operations evaluate the Renyi bounds,
the exact identities linking the programs to each other, and the
single-copy state-pair transformation exponent.

Conventions: all values are in bits, a transformation error of exactly
zero maps to ``math.inf``, and ``2**(-value)`` always reproduces the
``epsilon`` field of a result.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .entropy import dmax_exact, petz_renyi, sandwiched_renyi
from .linalg import (
    check_density,
    eig_hermitian,
    herm,
    partial_trace,
    support_projector,
)
from .sdp import SdpProblem, SdpSolution, check_slackness, map_rep, mat_to_vec, solve

INF = math.inf

# default interior-point tolerance for exponent programs
SOLVE_TOL = 1e-9
# tightened tolerance for dilution near the feasibility edge, where the
# error is tiny and -log2(eps) amplifies absolute noise
CRITICAL_TOL = 1e-10
# slack below which a feasibility precheck declares the zero-error case
ZERO_MASS_TOL = 1e-12
# coarse grid size and final bracket width of the 1-D searches
SEARCH_POINTS = 64
SEARCH_WIDTH = 1e-10

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class StatePair:
    """A pair of density operators on the same space."""

    rho: np.ndarray
    sigma: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho", check_density(self.rho, name="rho"))
        object.__setattr__(self, "sigma", check_density(self.sigma, name="sigma"))
        if self.rho.shape != self.sigma.shape:
            raise ValueError(
                f"state dimensions differ: {self.rho.shape[0]} vs {self.sigma.shape[0]}"
            )

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def swapped(self) -> "StatePair":
        """The same pair with the roles of the two states exchanged."""
        return StatePair(self.sigma, self.rho)


@dataclass
class ExponentResult:
    """Value and witnesses of one exponent program.

    ``epsilon`` is the mass the program optimizes: the transformation
    error for the error exponents and the surviving success weight for
    the strong-converse ones, so that 2**(-value) == epsilon in either
    case.  ``slackness`` maps each optimality condition of the program
    to its residual at the returned witnesses.
    """

    value: float
    epsilon: float
    primal_witness: object
    dual_witness: object
    gap: float
    slackness: dict[str, float] = field(default_factory=dict)
    note: str | None = None


@dataclass
class SmoothEntropyResult:
    value: float
    witness: object
    dual_witness: object
    gap: float
    note: str | None = None


@dataclass
class BoundReport:
    """Outcome of a one-sided Renyi bound against a computed exponent.

    ``slack = target_value - bound_value`` and is +inf when the exponent
    itself is infinite, so a nonnegative slack always certifies the
    inequality.  Optional fields carry the constructive extras some
    bounds produce.
    """

    bound_value: float
    maximizing_alpha: float
    target_value: float
    slack: float
    test_prior: float | None = None
    test_operator: np.ndarray | None = None
    branches: dict[str, float] | None = None


@dataclass
class PropositionReport:
    """Numerical verdict on one exact identity or inequality."""

    name: str
    holds: bool
    defect: float
    tolerance: float
    details: dict[str, float] = field(default_factory=dict)
    note: str | None = None


# ---------------------------------------------------------------------------
# shared numeric helpers


def _check_rate(m: float, name: str = "m") -> float:
    m = float(m)
    if not math.isfinite(m) or m < 0.0:
        raise ValueError(f"{name} must be a finite nonnegative rate, got {m}")
    return m


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not (0.0 <= eps < 1.0):
        raise ValueError(f"eps must lie in [0, 1), got {eps}")
    return eps


def _neglog2(x: float) -> float:
    return INF if x <= 0.0 else -math.log2(x)


def pow2_neg(x: float) -> float:
    """2**(-x) with the convention 2**(-inf) = 0."""
    if x == INF:
        return 0.0
    return 2.0**-x


def _solved(problem: SdpProblem, tol: float) -> SdpSolution:
    # "inaccurate" still carries a certified gap within 100x of tol, which
    # is orders of magnitude tighter than any tolerance used downstream
    sol = solve(problem, tol=tol)
    if sol.status not in ("optimal", "inaccurate"):
        raise RuntimeError(f"exponent program ended with status {sol.status!r}")
    return sol


def _clip01(x: float) -> float:
    return min(max(x, 0.0), 1.0)


# ---------------------------------------------------------------------------
# program builders


def _distill_program(rho: np.ndarray, sigma: np.ndarray, m: float) -> SdpProblem:
    """max Tr[L rho] over 0 <= L <= I with Tr[L sigma] <= 2^-m."""
    d = rho.shape[0]
    phi = np.vstack([np.eye(d * d), mat_to_vec(sigma)[None, :]])
    return SdpProblem(
        primal_dims=[d],
        constraint_dims=[d, 1],
        a_blocks=[rho.astype(complex)],
        b_blocks=[np.eye(d, dtype=complex), np.array([[2.0**-m]], dtype=complex)],
        phi=phi,
    )


def _dilute_program(rho: np.ndarray, sigma: np.ndarray, m: float) -> SdpProblem:
    """min Tr Z over states rt <= 2^m sigma with Z >= rt - rho, Z >= 0."""
    d = rho.shape[0]
    n = d * d
    zero = np.zeros((n, n))
    phi = np.block([[np.eye(n), -np.eye(n)], [np.eye(n), zero]])
    return SdpProblem(
        primal_dims=[d, d],
        constraint_dims=[d, d],
        a_blocks=[np.zeros((d, d), dtype=complex), -np.eye(d, dtype=complex)],
        b_blocks=[rho.astype(complex), (2.0**m) * sigma.astype(complex)],
        phi=phi,
        eq_matrix=np.concatenate([mat_to_vec(np.eye(d)), np.zeros(n)])[None, :],
        eq_rhs=np.array([1.0]),
    )


def _dmin_program(rho: np.ndarray, sigma: np.ndarray, eps: float) -> SdpProblem:
    """min Tr[L sigma] over 0 <= L <= I with Tr[L rho] >= 1 - eps."""
    d = rho.shape[0]
    phi = np.vstack([np.eye(d * d), -mat_to_vec(rho)[None, :]])
    return SdpProblem(
        primal_dims=[d],
        constraint_dims=[d, 1],
        a_blocks=[-sigma.astype(complex)],
        b_blocks=[np.eye(d, dtype=complex), np.array([[-(1.0 - eps)]], dtype=complex)],
        phi=phi,
    )


def _dmax_program(rho: np.ndarray, sigma: np.ndarray, eps: float) -> SdpProblem:
    """min lam over rt <= lam sigma, rho - rt <= Z, Tr Z <= eps, Tr rt = 1."""
    d = rho.shape[0]
    n = d * d
    zero = np.zeros((n, n))
    sig_col = -mat_to_vec(sigma)[:, None]
    phi = np.block(
        [
            [np.eye(n), zero, sig_col],
            [-np.eye(n), -np.eye(n), np.zeros((n, 1))],
            [np.zeros((1, n)), mat_to_vec(np.eye(d))[None, :], np.zeros((1, 1))],
        ]
    )
    return SdpProblem(
        primal_dims=[d, d, 1],
        constraint_dims=[d, d, 1],
        a_blocks=[
            np.zeros((d, d), dtype=complex),
            np.zeros((d, d), dtype=complex),
            np.array([[-1.0]], dtype=complex),
        ],
        b_blocks=[
            np.zeros((d, d), dtype=complex),
            -rho.astype(complex),
            np.array([[eps]], dtype=complex),
        ],
        phi=phi,
        eq_matrix=np.concatenate([mat_to_vec(np.eye(d)), np.zeros(n + 1)])[None, :],
        eq_rhs=np.array([1.0]),
    )


# ---------------------------------------------------------------------------
# optimality conditions of the two exponent programs


def _distill_slackness(
    rho: np.ndarray,
    sigma: np.ndarray,
    m: float,
    lam_op: np.ndarray,
    lam_mult: float,
    w: np.ndarray,
) -> dict[str, float]:
    eye = np.eye(rho.shape[0])
    budget = 2.0**-m - float(np.trace(lam_op @ sigma).real)
    return {
        "test_stationarity": float(np.linalg.norm((lam_mult * sigma + w - rho) @ lam_op)),
        "budget_complementarity": abs(lam_mult * budget),
        "cap_complementarity": float(np.linalg.norm((eye - lam_op) @ w)),
    }


def _dilute_slackness(
    rho: np.ndarray,
    sigma: np.ndarray,
    m: float,
    rho_t: np.ndarray,
    zmat: np.ndarray,
    kappa: float,
    r: np.ndarray,
    s: np.ndarray,
) -> dict[str, float]:
    eye = np.eye(rho.shape[0])
    return {
        "z_cap_complementarity": float(np.linalg.norm((eye - r) @ zmat)),
        "state_stationarity": float(np.linalg.norm((r + s - kappa * eye) @ rho_t)),
        "error_activation": float(np.linalg.norm((zmat - rho_t + rho) @ r)),
        "budget_complementarity": float(np.linalg.norm(((2.0**m) * sigma - rho_t) @ s)),
    }


# ---------------------------------------------------------------------------
# smooth min and max relative entropies


def smooth_dmin(pair: StatePair, eps: float) -> SmoothEntropyResult:
    """Hypothesis-testing relative entropy -log2 of the optimal type-II error.

    The primal optimizes a test operator 0 <= L <= I keeping at least
    1 - eps of the rho-mass; the dual witness (mu, X) satisfies
    mu rho <= sigma + X.
    """
    eps = _check_eps(eps)
    rho, sigma = pair.rho, pair.sigma
    d = pair.dim
    kernel_mass = 1.0 - float(np.trace(support_projector(sigma) @ rho).real)
    if kernel_mass >= 1.0 - eps - ZERO_MASS_TOL:
        # the kernel of sigma already holds enough rho-mass: error-free test
        lam_op = herm(np.eye(d) - support_projector(sigma))
        return SmoothEntropyResult(
            value=INF,
            witness=lam_op,
            dual_witness=(0.0, np.zeros((d, d), dtype=complex)),
            gap=0.0,
            note="test supported on ker(sigma); type-II error vanishes",
        )
    sol = _solved(_dmin_program(rho, sigma, eps), SOLVE_TOL)
    beta = _clip01(-sol.primal_value)
    lam_op = herm(sol.x_blocks[0])
    x = herm(sol.y_blocks[0])
    mu = float(sol.y_blocks[1].real[0, 0])
    return SmoothEntropyResult(
        value=_neglog2(beta),
        witness=lam_op,
        dual_witness=(mu, x),
        gap=abs(sol.gap),
    )


def smooth_dmax(pair: StatePair, eps: float) -> SmoothEntropyResult:
    """Smoothed max-relative entropy log2 of the optimal dominance factor.

    Minimizes lam subject to rt <= lam sigma over normalized rt within
    trace distance eps of rho (trace-norm epigraph variable Z).  At
    eps = 0 the program collapses to the exact max-relative entropy and
    is answered analytically together with its rank-one dual witness.
    """
    eps = _check_eps(eps)
    rho, sigma = pair.rho, pair.sigma
    d = pair.dim
    if eps <= ZERO_MASS_TOL:
        value = dmax_exact(rho, sigma)
        zero = np.zeros((d, d), dtype=complex)
        if value == INF:
            return SmoothEntropyResult(
                value=INF,
                witness=(INF, rho.astype(complex), zero),
                dual_witness=None,
                gap=0.0,
                note="rho has mass outside supp(sigma) and eps = 0",
            )
        # rank-one dual witness: X = w w* with w = sigma^{-1/2} v for the
        # top eigenvector v of sigma^{-1/2} rho sigma^{-1/2}
        spec_s = eig_hermitian(sigma)
        inv_root = (spec_s.vectors * _safe_inv_sqrt(spec_s.values)) @ spec_s.vectors.conj().T
        core = herm(inv_root @ rho @ inv_root)
        spec_c = eig_hermitian(core)
        v = spec_c.vectors[:, int(np.argmax(spec_c.values))]
        w = inv_root @ v
        x = herm(np.outer(w, w.conj()))
        t = float(np.vdot(w, w).real)
        return SmoothEntropyResult(
            value=value,
            witness=(2.0**value, rho.astype(complex), zero),
            dual_witness=(t, x, x, 0.0),
            gap=0.0,
        )
    sol = _solved(_dmax_program(rho, sigma, eps), SOLVE_TOL)
    lam_star = max(-sol.primal_value, 1.0)  # unit trace of rt forces lam >= 1
    rho_t = herm(sol.x_blocks[0])
    zmat = herm(sol.x_blocks[1])
    x = herm(sol.y_blocks[0])
    q = herm(sol.y_blocks[1])
    t = float(sol.y_blocks[2].real[0, 0])
    mu = -float(sol.eq_multipliers[0])
    return SmoothEntropyResult(
        value=math.log2(lam_star),
        witness=(lam_star, rho_t, zmat),
        dual_witness=(t, x, q, mu),
        gap=abs(sol.gap),
    )


def _safe_inv_sqrt(values: np.ndarray) -> np.ndarray:
    out = np.zeros_like(values)
    pos = values > ZERO_MASS_TOL
    out[pos] = values[pos] ** -0.5
    return out


# ---------------------------------------------------------------------------
# the four exponents


def _pair_memo(fn):
    """Cache a core solve on (rate, pair bytes).

    The error and strong-converse exponents of one task read the same
    program, and sweeps revisit each grid point for several quantities,
    so every hit saves a full interior-point run.  Witness arrays are
    shared between the paired results; treat them as read-only.
    """
    cache: dict[tuple, tuple] = {}

    @functools.wraps(fn)
    def wrapped(pair: StatePair, m: float):
        key = (m, pair.rho.tobytes(), pair.sigma.tobytes())
        if key not in cache:
            if len(cache) >= 1024:
                cache.clear()
            cache[key] = fn(pair, m)
        return cache[key]

    return wrapped


@_pair_memo
def _distill_core(pair: StatePair, m: float):
    """Solve the distillation test program once; both exponents read it."""
    rho, sigma = pair.rho, pair.sigma
    overlap = float(np.trace(support_projector(rho) @ sigma).real)
    if overlap <= 2.0**-m + ZERO_MASS_TOL:
        # the support test alone meets the budget, so the error vanishes;
        # lam = 0, W = rho is the matching zero-gap dual point
        lam_op = support_projector(rho)
        slack = _distill_slackness(rho, sigma, m, lam_op, 0.0, rho)
        return 0.0, lam_op, (0.0, rho.astype(complex)), 0.0, slack, (
            "support projector satisfies the budget; zero transformation error"
        )
    sol = _solved(_distill_program(rho, sigma, m), SOLVE_TOL)
    success = _clip01(sol.primal_value)
    lam_op = herm(sol.x_blocks[0])
    w = herm(sol.y_blocks[0])
    lam_mult = float(sol.y_blocks[1].real[0, 0])
    slack = _distill_slackness(rho, sigma, m, lam_op, lam_mult, w)
    note = None
    if np.linalg.matrix_rank(sigma, tol=1e-10) < pair.dim:
        note = "sigma has a nontrivial kernel; the test acts freely there"
    return 1.0 - success, lam_op, (lam_mult, w), abs(sol.gap), slack, note


def err_exp_distill(pair: StatePair, m: float) -> ExponentResult:
    """Error exponent of distinguishability distillation at rate m.

    -log2(1 - s) for the optimal success mass s of the budgeted test;
    the returned witnesses are the test operator and the dual pair
    (lam, W) with rho <= lam sigma + W.
    """
    m = _check_rate(m)
    eps, lam_op, dual, gap, slackness, note = _distill_core(pair, m)
    return ExponentResult(_neglog2(eps), eps, lam_op, dual, gap, slackness, note)


def sc_exp_distill(pair: StatePair, m: float) -> ExponentResult:
    """Strong-converse exponent of distillation: -log2 of the success mass."""
    m = _check_rate(m)
    eps, lam_op, dual, gap, slackness, note = _distill_core(pair, m)
    success = 1.0 - eps
    return ExponentResult(_neglog2(success), success, lam_op, dual, gap, slackness, note)


@_pair_memo
def _dilute_core(pair: StatePair, m: float):
    """Solve the dilution program once; both exponents read it."""
    rho, sigma = pair.rho, pair.sigma
    d = pair.dim
    dmax = dmax_exact(rho, sigma)
    if m >= dmax - ZERO_MASS_TOL:
        # rho itself is dominated by 2^m sigma: exact dilution
        zero = np.zeros((d, d), dtype=complex)
        slack = _dilute_slackness(rho, sigma, m, rho, zero, 0.0, zero, zero)
        return 0.0, (rho.astype(complex), zero), (0.0, zero, zero), 0.0, slack, (
            "rate meets the exact max-divergence; zero dilution error"
        )
    tol = CRITICAL_TOL if (dmax != INF and dmax - m <= 1.0) else SOLVE_TOL
    sol = _solved(_dilute_program(rho, sigma, m), tol)
    eps = _clip01(-sol.primal_value)
    rho_t = herm(sol.x_blocks[0])
    zmat = herm(sol.x_blocks[1])
    r = herm(sol.y_blocks[0])
    s = herm(sol.y_blocks[1])
    kappa = -float(sol.eq_multipliers[0])
    slack = _dilute_slackness(rho, sigma, m, rho_t, zmat, kappa, r, s)
    return eps, (rho_t, zmat), (kappa, r, s), abs(sol.gap), slack, None


def err_exp_dilute(pair: StatePair, m: float) -> ExponentResult:
    """Error exponent of dilution from rate m: -log2 of the best trace
    distance between rho and the states dominated by 2^m sigma.

    Witnesses are the optimal pair (rt, Z) and the dual triple
    (kappa, R, S) with R <= I and kappa I <= R + S.
    """
    m = _check_rate(m)
    eps, primal, dual, gap, slackness, note = _dilute_core(pair, m)
    return ExponentResult(_neglog2(eps), eps, primal, dual, gap, slackness, note)


def sc_exp_dilute(pair: StatePair, m: float) -> ExponentResult:
    """Strong-converse exponent of dilution: -log2(1 - eps)."""
    m = _check_rate(m)
    eps, primal, dual, gap, slackness, note = _dilute_core(pair, m)
    fidelity_mass = 1.0 - eps
    if eps >= 1.0 - 1e-10:
        return ExponentResult(
            INF, 0.0, primal, dual, gap, slackness,
            note="dilution error saturates at 1; the surviving mass vanishes",
        )
    return ExponentResult(
        _neglog2(fidelity_mass), fidelity_mass, primal, dual, gap, slackness, note
    )


# ---------------------------------------------------------------------------
# 1-D suprema over Renyi orders


def _supremum(fn, lo: float, hi: float) -> tuple[float, float]:
    """Coarse grid then golden-section refinement of a scalar maximum.

    The grid guards against non-unimodal objectives; the refinement
    narrows the bracket around the best grid point to SEARCH_WIDTH.
    """
    xs = np.linspace(lo, hi, SEARCH_POINTS)
    vals = []
    for x in xs:
        v = fn(float(x))
        vals.append(-INF if math.isnan(v) else v)
    k = int(np.argmax(vals))
    a = float(xs[max(k - 1, 0)])
    b = float(xs[min(k + 1, SEARCH_POINTS - 1)])
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fn(x1), fn(x2)
    while b - a > SEARCH_WIDTH:
        if (f1 if not math.isnan(f1) else -INF) >= (f2 if not math.isnan(f2) else -INF):
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fn(x2)
    best = max(vals[k], f1 if not math.isnan(f1) else -INF, f2 if not math.isnan(f2) else -INF)
    if best == vals[k]:
        return vals[k], float(xs[k])
    return (f1, x1) if f1 >= f2 else (f2, x2)


def _sup_floor(val: float) -> float:
    """Clamp a searched supremum at zero.

    Every Renyi objective here carries a prefactor vanishing at one open
    endpoint of its interval, so zero lies in the closure of the range
    and the true supremum is never negative; a finite search can only
    undershoot that.
    """
    return max(val, 0.0)


def bound_sc_distill(pair: StatePair, m: float) -> BoundReport:
    """Lower bound on the distillation strong-converse exponent.

    sup over alpha in (1, 1e3] of ((alpha-1)/alpha)(m - sandwiched
    divergence), searched through the substitution u = 1 - 1/alpha.
    """
    m = _check_rate(m)
    rho, sigma = pair.rho, pair.sigma

    def g(u: float) -> float:
        alpha = 1.0 / (1.0 - u)
        return u * (m - sandwiched_renyi(rho, sigma, alpha))

    bound, u_star = _supremum(g, 1e-9, 0.999)
    bound = _sup_floor(bound)
    target = sc_exp_distill(pair, m).value
    return BoundReport(
        bound_value=bound,
        maximizing_alpha=1.0 / (1.0 - u_star),
        target_value=target,
        slack=target - bound if target != INF else INF,
    )


def bound_err_distill(pair: StatePair, m: float) -> BoundReport:
    """Lower bound on the distillation error exponent, with the
    constructive prior p(alpha) and its induced likelihood-ratio test."""
    m = _check_rate(m)
    rho, sigma = pair.rho, pair.sigma

    def g(alpha: float) -> float:
        return (1.0 - alpha) / alpha * (petz_renyi(rho, sigma, alpha) - m)

    bound, a_star = _supremum(g, 1e-4, 1.0 - 1e-6)
    bound = _sup_floor(bound)
    target = err_exp_distill(pair, m).value
    d_star = petz_renyi(rho, sigma, a_star)
    prior = None
    test = None
    if d_star != INF:
        prior = 1.0 / (1.0 + 2.0 ** (m / a_star) * 2.0 ** ((a_star - 1.0) * d_star / a_star))
        if 0.0 < prior < 1.0:
            test = np_test_operator(prior, pair)
    return BoundReport(
        bound_value=bound,
        maximizing_alpha=a_star,
        target_value=target,
        slack=target - bound if target != INF else INF,
        test_prior=prior,
        test_operator=test,
    )


def bound_sc_dilute(pair: StatePair, m: float) -> BoundReport:
    """Two-branch lower bound on the dilution strong-converse exponent."""
    m = _check_rate(m)
    rho, sigma = pair.rho, pair.sigma

    def petz_branch(alpha: float) -> float:
        return (1.0 - alpha) / 2.0 * (petz_renyi(rho, sigma, alpha) - m)

    def sandwiched_branch(alpha: float) -> float:
        return (1.0 - alpha) / (2.0 * alpha) * (sandwiched_renyi(rho, sigma, alpha) - m)

    b1, a1 = _supremum(petz_branch, 1e-6, 1.0 - 1e-6)
    b2, a2 = _supremum(sandwiched_branch, 0.5 + 1e-6, 1.0 - 1e-6)
    b1, b2 = _sup_floor(b1), _sup_floor(b2)
    bound, a_star = (b1, a1) if b1 >= b2 else (b2, a2)
    target = sc_exp_dilute(pair, m).value
    return BoundReport(
        bound_value=bound,
        maximizing_alpha=a_star,
        target_value=target,
        slack=target - bound if target != INF else INF,
        branches={"petz": b1, "sandwiched": b2},
    )


def bound_sd22(pair: StatePair, m: float) -> BoundReport:
    """Sharpened one-branch bound on the dilution strong-converse
    exponent; twice the petz branch of bound_sc_dilute pointwise."""
    m = _check_rate(m)
    rho, sigma = pair.rho, pair.sigma

    def g(alpha: float) -> float:
        return (1.0 - alpha) * (petz_renyi(rho, sigma, alpha) - m)

    bound, a_star = _supremum(g, 1e-6, 1.0 - 1e-6)
    bound = _sup_floor(bound)
    target = sc_exp_dilute(pair, m).value
    petz_half = _sup_floor(
        _supremum(lambda a: 0.5 * (1.0 - a) * (petz_renyi(rho, sigma, a) - m), 1e-6, 1.0 - 1e-6)[0]
    )
    return BoundReport(
        bound_value=bound,
        maximizing_alpha=a_star,
        target_value=target,
        slack=target - bound if target != INF else INF,
        branches={"petz_half": petz_half},
    )


def hoeffding_rhs(pair: StatePair, rate: float) -> float:
    """sup over alpha in (0,1) of ((alpha-1)/alpha)(rate - petz divergence)."""
    if rate <= 0.0:
        raise ValueError(f"rate must be positive, got {rate}")
    rho, sigma = pair.rho, pair.sigma
    val, _ = _supremum(
        lambda a: (1.0 - a) / a * (petz_renyi(rho, sigma, a) - rate), 1e-4, 1.0 - 1e-9
    )
    return _sup_floor(val)


def sc_rhs(pair: StatePair, rate: float) -> float:
    """sup over alpha > 1 of ((alpha-1)/alpha)(rate - sandwiched divergence)."""
    if rate <= 0.0:
        raise ValueError(f"rate must be positive, got {rate}")
    rho, sigma = pair.rho, pair.sigma

    def g(u: float) -> float:
        return u * (rate - sandwiched_renyi(rho, sigma, 1.0 / (1.0 - u)))

    val, _ = _supremum(g, 1e-9, 1.0 - 1e-6)
    return _sup_floor(val)


# ---------------------------------------------------------------------------
# optimal tests


def np_test_operator(p: float, pair: StatePair) -> np.ndarray:
    """Projector onto the positive eigenspace of p rho - (1-p) sigma.

    Minimizes p Tr[(I-T) rho] + (1-p) Tr[T sigma]; zero modes contribute
    nothing to the optimum and are left out of the projector.
    """
    p = float(p)
    if not (0.0 < p < 1.0):
        raise ValueError(f"prior must lie in (0, 1), got {p}")
    diff = herm(p * pair.rho - (1.0 - p) * pair.sigma)
    spec = eig_hermitian(diff)
    keep = (spec.values > ZERO_MASS_TOL).astype(float)
    return herm((spec.vectors * keep) @ spec.vectors.conj().T)


# ---------------------------------------------------------------------------
# exact identities between the programs


def dmin_errexp_link(pair: StatePair, eps: float) -> PropositionReport:
    """At rate m equal to the eps-hypothesis-testing entropy, the
    distillation error exponent equals -log2(eps); the dual witnesses
    map onto each other by lam = 1/mu, W = X/mu."""
    eps = _check_eps(eps)
    if eps == 0.0:
        raise ValueError("the link needs eps in (0, 1)")
    res = smooth_dmin(pair, eps)
    if res.value == INF:
        return PropositionReport(
            name="dmin-errexp-link",
            holds=True,
            defect=0.0,
            tolerance=1e-5,
            note="hypothesis-testing entropy is infinite; link is vacuous",
        )
    m = res.value
    exp_res = err_exp_distill(pair, m)
    target = -math.log2(eps)
    defect = abs(exp_res.value - target) if exp_res.value != INF else INF
    details = {"m": m, "err_exp": exp_res.value, "neg_log2_eps": target}
    mu, x = res.dual_witness
    if mu > 1e-9:
        lam_sub = 1.0 / mu
        w_sub = x / mu
        feas = -min(np.linalg.eigvalsh(herm(lam_sub * pair.sigma + w_sub - pair.rho)).min(), 0.0)
        obj = lam_sub * 2.0**-m + float(np.trace(w_sub).real)
        details["substituted_dual_infeasibility"] = float(feas)
        details["substituted_dual_value_defect"] = abs(obj - (1.0 - eps))
        defect = max(defect, float(feas), abs(obj - (1.0 - eps)))
    return PropositionReport(
        name="dmin-errexp-link",
        holds=defect <= 1e-5,
        defect=defect,
        tolerance=1e-5,
        details=details,
    )


def dmin_swap_identity(pair: StatePair, eps: float) -> PropositionReport:
    """With m = log2(1/eps), the strong-converse distillation exponent of
    the swapped pair and the hypothesis-testing entropy tile the unit:
    2^-sc(sigma||rho) + 2^-dmin(rho||sigma) = 1."""
    eps = _check_eps(eps)
    if eps == 0.0:
        raise ValueError("the identity needs eps in (0, 1)")
    m = math.log2(1.0 / eps)
    swapped = pair.swapped()
    sc = sc_exp_distill(swapped, m).value
    dmin = smooth_dmin(pair, eps).value
    ed_swap = err_exp_distill(swapped, m).value
    unit_defect = abs(pow2_neg(sc) + pow2_neg(dmin) - 1.0)
    if dmin == INF and ed_swap == INF:
        equal_defect = 0.0
    elif INF in (dmin, ed_swap):
        equal_defect = INF
    else:
        equal_defect = abs(dmin - ed_swap)
    defect = max(unit_defect, equal_defect)
    return PropositionReport(
        name="dmin-swap-identity",
        holds=defect <= 1e-7,
        defect=defect,
        tolerance=1e-7,
        details={
            "sum_of_powers": pow2_neg(sc) + pow2_neg(dmin),
            "dmin": dmin,
            "err_exp_swapped": ed_swap,
        },
    )


def dmax_errexp_link(pair: StatePair, eps: float) -> PropositionReport:
    """At rate m equal to the eps-smooth max-relative entropy, the
    dilution error exponent equals -log2(eps); both substitution
    directions between the dual witnesses are exercised."""
    eps = _check_eps(eps)
    if eps == 0.0:
        raise ValueError("the link needs eps in (0, 1)")
    res = smooth_dmax(pair, eps)
    if res.value == INF:
        return PropositionReport(
            name="dmax-errexp-link",
            holds=True,
            defect=0.0,
            tolerance=1e-5,
            note="smooth max-relative entropy is infinite; link is vacuous",
        )
    m = res.value
    exp_res = err_exp_dilute(pair, m)
    target = -math.log2(eps)
    defect = abs(exp_res.value - target) if exp_res.value != INF else INF
    details = {"m": m, "dilute_err_exp": exp_res.value, "neg_log2_eps": target}
    rho, sigma = pair.rho, pair.sigma
    eye = np.eye(pair.dim)
    if res.dual_witness is not None:
        t, x, q, mu = res.dual_witness
        if t > 1e-9:
            s_sub = x / t
            r_sub = herm(eye - q / t)
            kappa_sub = 1.0 + mu / t
            feas = -min(np.linalg.eigvalsh(herm(r_sub + s_sub - kappa_sub * eye)).min(), 0.0)
            feas = max(feas, -min(np.linalg.eigvalsh(r_sub).min(), 0.0))
            obj = kappa_sub - float(np.trace(r_sub @ rho).real) - 2.0**m * float(
                np.trace(s_sub @ sigma).real
            )
            details["forward_infeasibility"] = float(feas)
            details["forward_value_defect"] = abs(obj - eps)
            defect = max(defect, float(feas), abs(obj - eps))
    kappa, r, s = exp_res.dual_witness
    trace_s = float(np.trace(s @ sigma).real)
    if trace_s > 1e-9:
        t_inv = 1.0 / trace_s
        x_inv = s * t_inv
        q_inv = herm((eye - r) * t_inv)
        mu_inv = (kappa - 1.0) * t_inv
        feas = -min(np.linalg.eigvalsh(herm(x_inv - q_inv - mu_inv * eye)).min(), 0.0)
        feas = max(feas, -min(np.linalg.eigvalsh(herm(t_inv * eye - q_inv)).min(), 0.0))
        feas = max(feas, float(np.trace(x_inv @ sigma).real) - 1.0)
        obj = float(np.trace(q_inv @ rho).real) - t_inv * eps + mu_inv
        details["inverse_infeasibility"] = float(max(feas, 0.0))
        details["inverse_value_defect"] = abs(obj - 2.0**m)
        defect = max(defect, float(max(feas, 0.0)), abs(obj - 2.0**m))
    return PropositionReport(
        name="dmax-errexp-link",
        holds=defect <= 1e-5,
        defect=defect,
        tolerance=1e-5,
        details=details,
    )


def bound_err_dilute_check(pair: StatePair, m: float) -> PropositionReport:
    """Converse check on the dilution error exponent at a fixed grid of
    sandwiched orders: the rate gap is capped by the exponent plus a
    saturation correction."""
    m = _check_rate(m)
    exp_res = err_exp_dilute(pair, m)
    e_c = exp_res.value
    if e_c == INF:
        return PropositionReport(
            name="dilute-converse-grid",
            holds=True,
            defect=0.0,
            tolerance=1e-6,
            note="dilution error vanishes; the inequality is vacuous",
        )
    details = {}
    defect = -INF
    for alpha in (1.5, 2.0, 3.0, 5.0):
        lhs = (alpha - 1.0) / 2.0 * (m - sandwiched_renyi(pair.rho, pair.sigma, alpha))
        if e_c <= 0.0:
            rhs = INF
        else:
            rhs = e_c + (alpha - 1.0) / 2.0 * math.log2(1.0 / (1.0 - 2.0 ** (-2.0 * e_c)))
        details[f"margin_alpha_{alpha:g}"] = rhs - lhs if rhs != INF else INF
        defect = max(defect, lhs - rhs if rhs != INF else -INF)
    return PropositionReport(
        name="dilute-converse-grid",
        holds=defect <= 1e-6,
        defect=defect,
        tolerance=1e-6,
        details=details,
    )


def cross_bounds(pair: StatePair, k: float, m: float) -> PropositionReport:
    """Triangle-style inequalities tying distillation at rate m to
    dilution at rate k, including the summed two-exponent form."""
    k = _check_rate(k, "k")
    m = _check_rate(m, "m")
    e_c = err_exp_dilute(pair, k).value
    sc_d = sc_exp_distill(pair, m).value
    e_d = err_exp_distill(pair, m).value
    sc_c = sc_exp_dilute(pair, k).value
    gap_pow = 2.0 ** (k - m)
    lhs1 = _neglog2(pow2_neg(e_c) + gap_pow)
    lhs2 = _neglog2(pow2_neg(e_d) + gap_pow)
    total = pow2_neg(sc_d) + pow2_neg(sc_c)
    d1 = lhs1 - sc_d
    d2 = lhs2 - sc_c
    d3 = total - (1.0 + gap_pow)
    defect = max(d1, d2, d3)
    return PropositionReport(
        name="cross-rate-bounds",
        holds=defect <= 1e-7,
        defect=defect,
        tolerance=1e-7,
        details={
            "distill_side_margin": -d1,
            "dilute_side_margin": -d2,
            "summed_margin": -d3,
        },
    )


# ---------------------------------------------------------------------------
# single-copy state-pair transformations


def _channel_rep(x: np.ndarray, ds: int, dt: int) -> np.ndarray:
    """Coordinates of J -> Tr_in[(x^T (x) I) J] for fixed input x."""
    lift = np.kron(x.T, np.eye(dt))
    return map_rep(lambda e: partial_trace(lift @ e, (ds, dt), 1), ds * dt, dt)


def statepair_err_exp(source: StatePair, target: StatePair) -> ExponentResult:
    """Best single-copy transformation error between state pairs.

    Minimizes the trace distance between the pushed-forward first state
    and its target over all channels carrying sigma exactly to omega,
    optimizing the channel's Choi operator directly.  The exponent is
    -log2 of that error; errors below 1e-9 are reported as infinite.
    """
    ds, dt = source.dim, target.dim
    if ds > 4 or dt > 4:
        raise ValueError("state-pair programs are limited to dimension 4 per side")
    rho, sigma = source.rho, source.sigma
    tau, omega = target.rho, target.sigma
    dj = ds * dt
    nj, nt = dj * dj, dt * dt
    push_rho = _channel_rep(rho, ds, dt)
    push_sigma = _channel_rep(sigma, ds, dt)
    keep_input = map_rep(lambda e: partial_trace(e, (ds, dt), 0), dj, ds)
    phi = np.hstack([push_rho, -np.eye(nt)])
    eq_matrix = np.vstack(
        [
            np.hstack([push_sigma, np.zeros((nt, nt))]),
            np.hstack([keep_input, np.zeros((ds * ds, nt))]),
        ]
    )
    eq_rhs = np.concatenate([mat_to_vec(omega), mat_to_vec(np.eye(ds))])
    problem = SdpProblem(
        primal_dims=[dj, dt],
        constraint_dims=[dt],
        a_blocks=[np.zeros((dj, dj), dtype=complex), -np.eye(dt, dtype=complex)],
        b_blocks=[tau.astype(complex)],
        phi=phi,
        eq_matrix=eq_matrix,
        eq_rhs=eq_rhs,
    )
    sol = _solved(problem, SOLVE_TOL)
    eps = _clip01(-sol.primal_value)
    choi = herm(sol.x_blocks[0])
    report = check_slackness(problem, sol)
    slackness = {
        "constraint_products": report.residual_by,
        "stationarity_products": report.residual_ax,
    }
    if eps < 1e-9:
        return ExponentResult(
            INF, 0.0, choi, sol.y_blocks, abs(sol.gap), slackness,
            note="transformation error vanishes at solver precision",
        )
    return ExponentResult(_neglog2(eps), eps, choi, sol.y_blocks, abs(sol.gap), slackness)


def statepair_sc_bound(source: StatePair, target: StatePair, ratio: float) -> BoundReport:
    """Two-branch Renyi bound on the strong-converse exponent of
    state-pair transformations at the given rate ratio.

    When ratio == 1 the single-copy exponent is computed as the target;
    other ratios have no single-copy referent and report infinite slack.
    """
    ratio = float(ratio)
    if ratio <= 0.0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    rho, sigma = source.rho, source.sigma
    tau, omega = target.rho, target.sigma

    def petz_branch(alpha: float) -> float:
        return (1.0 - alpha) / 2.0 * (
            ratio * petz_renyi(tau, omega, alpha) - petz_renyi(rho, sigma, 2.0 - alpha)
        )

    def sandwiched_branch(alpha: float) -> float:
        partner = alpha / (2.0 * alpha - 1.0)
        return (1.0 - alpha) / (2.0 * alpha) * (
            ratio * sandwiched_renyi(tau, omega, alpha)
            - sandwiched_renyi(rho, sigma, partner)
        )

    b1, a1 = _supremum(petz_branch, 1e-6, 1.0 - 1e-6)
    b2, a2 = _supremum(sandwiched_branch, 0.5 + 1e-6, 1.0 - 1e-6)
    b1, b2 = _sup_floor(b1), _sup_floor(b2)
    bound, a_star = (b1, a1) if b1 >= b2 else (b2, a2)
    if ratio == 1.0:
        eps = statepair_err_exp(source, target).epsilon
        target_value = _neglog2(1.0 - eps) if eps < 1.0 else INF
    else:
        target_value = INF
    return BoundReport(
        bound_value=bound,
        maximizing_alpha=a_star,
        target_value=target_value,
        slack=target_value - bound if target_value != INF else INF,
        branches={"petz": b1, "sandwiched": b2},
    )


# ---------------------------------------------------------------------------
# commuting fast path


def classical_fast_path(p: np.ndarray, q: np.ndarray, m: float) -> dict[str, float]:
    """Exact exponents for commuting pairs given as probability vectors.

    Distillation solves the budgeted test greedily on likelihood ratios
    with one fractional element; dilution is the excess-mass formula
    sum_i (p_i - 2^m q_i)_+.  Zero-mass q entries with positive p sort
    first as infinite ratios.
    """
    m = _check_rate(m)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape or p.ndim != 1:
        raise ValueError("p and q must be probability vectors of equal length")
    for vec, name in ((p, "p"), (q, "q")):
        if vec.min() < -1e-12:
            raise ValueError(f"{name} has negative entries")
        if abs(math.fsum(vec) - 1.0) > 1e-10:
            raise ValueError(f"{name} does not sum to 1")
    budget = 2.0**-m
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(q > 0.0, p / np.where(q > 0.0, q, 1.0), np.where(p > 0.0, INF, 0.0))
    order = np.argsort(-ratio, kind="stable")
    success = 0.0
    spent = 0.0
    for i in order:
        if q[i] <= 0.0:
            success += p[i]
            continue
        if spent + q[i] <= budget:
            success += p[i]
            spent += q[i]
        else:
            success += p[i] * (budget - spent) / q[i]
            break
    success = _clip01(success)
    eps_dilute = math.fsum(max(pi - 2.0**m * qi, 0.0) for pi, qi in zip(p, q))
    return {
        "err_exp": _neglog2(1.0 - success),
        "sc_exp": _neglog2(success),
        "dilute_err_exp": _neglog2(eps_dilute),
    }
