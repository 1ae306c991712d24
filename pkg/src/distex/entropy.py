"""Relative entropies and Renyi divergences between density operators.

All quantities are in bits.  Divergences that are undefined because the
first state has mass outside the support of the second return
``math.inf``; finite results are ordinary floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    SUPPORT_CUTOFF,
    check_density,
    eig_hermitian,
    frac_power,
    herm,
    trace_norm,
)

INF = math.inf

# mass of rho outside supp(sigma) above this triggers the +inf branch
SUPPORT_MASS_TOL = 1e-10

# largest Renyi order evaluated directly; the sandwiched family is clamped
# to its max-relative-entropy limit beyond this
ALPHA_CLAMP = 1e6


@dataclass(frozen=True)
class RenyiOrder:
    """A Renyi order together with the divergence family it refers to."""

    alpha: float
    family: str = "petz"

    def __post_init__(self) -> None:
        if self.family not in ("petz", "sandwiched"):
            raise ValueError(f"unknown Renyi family {self.family!r}")
        if not (0.0 < self.alpha and self.alpha != 1.0):
            raise ValueError(f"Renyi order must be positive and != 1, got {self.alpha}")
        if self.alpha >= ALPHA_CLAMP and self.family == "petz":
            raise ValueError(f"Petz order {self.alpha} exceeds the evaluation clamp {ALPHA_CLAMP:.0e}")

    def beta(self) -> float:
        """Companion order 2 - alpha."""
        return 2.0 - self.alpha

    def gamma(self) -> float:
        """Companion order alpha / (2 alpha - 1)."""
        return self.alpha / (2.0 * self.alpha - 1.0)


def _kernel_mass(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Mass of rho on the kernel of sigma."""
    spec = eig_hermitian(sigma, tol=1e-9)
    ker = spec.values <= SUPPORT_CUTOFF
    if not ker.any():
        return 0.0
    v = spec.vectors[:, ker]
    return float(np.trace(v.conj().T @ rho @ v).real)


def support_violated(rho: np.ndarray, sigma: np.ndarray) -> bool:
    """Whether supp(rho) leaks out of supp(sigma) beyond tolerance."""
    return _kernel_mass(rho, sigma) > SUPPORT_MASS_TOL


def rel_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Umegaki relative entropy D(rho || sigma) in bits."""
    rho = check_density(rho, "rho")
    sigma = check_density(sigma, "sigma")
    if support_violated(rho, sigma):
        return INF
    ws = eig_hermitian(rho)
    pos = ws.values > SUPPORT_CUTOFF
    h_rho = float(np.sum(ws.values[pos] * np.log2(ws.values[pos])))
    spec = eig_hermitian(sigma)
    keep = spec.values > SUPPORT_CUTOFF
    diag = np.real(np.einsum("ij,ji->i", spec.vectors.conj().T, rho @ spec.vectors))
    cross = float(np.sum(diag[keep] * np.log2(spec.values[keep])))
    return h_rho - cross


def petz_renyi(rho: np.ndarray, sigma: np.ndarray, alpha: float) -> float:
    """Petz Renyi divergence (1/(alpha-1)) log2 Tr[rho^a sigma^(1-a)]."""
    RenyiOrder(alpha, "petz")
    rho = check_density(rho, "rho")
    sigma = check_density(sigma, "sigma")
    if alpha > 1.0 and support_violated(rho, sigma):
        return INF
    q = float(np.trace(frac_power(rho, alpha) @ frac_power(sigma, 1.0 - alpha)).real)
    if q <= 0.0:
        return INF
    return math.log2(q) / (alpha - 1.0)


def sandwiched_renyi(rho: np.ndarray, sigma: np.ndarray, alpha: float) -> float:
    """Sandwiched Renyi divergence in bits.

    Orders at or above the clamp return dmax_exact, the alpha -> inf limit.
    """
    if alpha >= ALPHA_CLAMP:
        return dmax_exact(rho, sigma)
    RenyiOrder(alpha, "sandwiched")
    rho = check_density(rho, "rho")
    sigma = check_density(sigma, "sigma")
    if alpha > 1.0 and support_violated(rho, sigma):
        return INF
    e = (1.0 - alpha) / (2.0 * alpha)
    s_pow = frac_power(sigma, e)
    w = np.linalg.eigvalsh(herm(s_pow @ rho @ s_pow))
    w = w[w > 0.0]
    if w.size == 0:
        return INF
    # log-domain sum so large orders cannot overflow the power
    logs = alpha * np.log2(w)
    top = float(logs.max())
    log_q = top + math.log2(float(np.sum(2.0 ** (logs - top))))
    return log_q / (alpha - 1.0)


def renyi_divergence(rho: np.ndarray, sigma: np.ndarray, order: RenyiOrder) -> float:
    if order.family == "petz":
        return petz_renyi(rho, sigma, order.alpha)
    return sandwiched_renyi(rho, sigma, order.alpha)


def dmax_exact(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Max-relative entropy log2 lambda_max(sigma^-1/2 rho sigma^-1/2)."""
    rho = check_density(rho, "rho")
    sigma = check_density(sigma, "sigma")
    if support_violated(rho, sigma):
        return INF
    inv_root = frac_power(sigma, -0.5)
    w = np.linalg.eigvalsh(herm(inv_root @ rho @ inv_root))
    top = float(w.max())
    if top <= 0.0:
        return INF
    return math.log2(top)


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the trace norm of rho - sigma."""
    return 0.5 * trace_norm(np.asarray(rho) - np.asarray(sigma))
