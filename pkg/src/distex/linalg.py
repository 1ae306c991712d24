"""Dense Hermitian linear algebra for small state pairs.

Everything here works on plain complex ``numpy`` arrays.  Matrices are
validated at the API boundary (Hermiticity, positivity, unit trace) and
eigenvalue cutoffs are shared module-wide so that support decisions are
consistent across the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERM_TOL = 1e-12
PSD_TOL = 1e-10
SUPPORT_CUTOFF = 1e-12

# dense tensor powers beyond this output dimension would not fit desk memory;
# commuting pairs should go through tensor_power_probs instead
MAX_DENSE_DIM = 4096


def herm(a: np.ndarray) -> np.ndarray:
    """Hermitian part (A + A^dag)/2, used to scrub rounding noise."""
    return 0.5 * (a + a.conj().T)


def hermiticity_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T)))


def check_hermitian(a: np.ndarray, tol: float = HERM_TOL, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name}: expected a square matrix, got shape {a.shape}")
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ValueError(f"{name}: not Hermitian, symmetry defect {defect:.3e} exceeds {tol:.1e}")
    return a


def check_density(rho: np.ndarray, name: str = "state") -> np.ndarray:
    """Validate a density operator: Hermitian, PSD and unit trace."""
    rho = check_hermitian(rho, name=name)
    w = np.linalg.eigvalsh(rho)
    if w.min() < -PSD_TOL:
        raise ValueError(f"{name}: negative eigenvalue {w.min():.3e} violates positivity")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > PSD_TOL:
        raise ValueError(f"{name}: trace {tr!r} deviates from 1 beyond {PSD_TOL:.1e}")
    return rho


def check_measurement(lam: np.ndarray, tol: float = PSD_TOL, name: str = "test operator") -> np.ndarray:
    """Validate 0 <= lam <= I."""
    lam = check_hermitian(lam, name=name)
    w = np.linalg.eigvalsh(lam)
    if w.min() < -tol or w.max() > 1.0 + tol:
        raise ValueError(f"{name}: eigenvalues in [{w.min():.3e}, {w.max():.3e}] leave [0, 1]")
    return lam


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def eig_hermitian(a: np.ndarray, tol: float = HERM_TOL) -> Spectrum:
    """Full eigendecomposition, rejecting non-Hermitian input."""
    a = check_hermitian(a, tol=tol)
    w, v = np.linalg.eigh(a)
    return Spectrum(values=w[::-1].copy(), vectors=v[:, ::-1].copy())


def frac_power(a: np.ndarray, s: float, cutoff: float = SUPPORT_CUTOFF) -> np.ndarray:
    """A**s for PSD A, taken on the support.

    Eigenvalues at or below ``cutoff`` are treated as exact zeros, so
    negative powers act as pseudo-inverses and 0**0 = 0 by convention.
    """
    spec = eig_hermitian(a)
    w = spec.values
    if w.min() < -PSD_TOL:
        raise ValueError(f"frac_power: matrix has negative eigenvalue {w.min():.3e}")
    out = np.zeros_like(w)
    on = w > cutoff
    out[on] = w[on] ** s
    if s == 0.0:
        # support projector convention
        out[~on] = 0.0
    return herm((spec.vectors * out) @ spec.vectors.conj().T)


def trace_norm(a: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    a = check_hermitian(a, tol=1e-9, name="trace_norm input")
    return float(np.sum(np.abs(np.linalg.eigvalsh(a))))


def positive_part(a: np.ndarray) -> np.ndarray:
    """Projection onto the nonnegative eigenspace, applied to A."""
    spec = eig_hermitian(a, tol=1e-9)
    w = np.clip(spec.values, 0.0, None)
    return herm((spec.vectors * w) @ spec.vectors.conj().T)


def support_projector(a: np.ndarray, cutoff: float = SUPPORT_CUTOFF) -> np.ndarray:
    spec = eig_hermitian(a, tol=1e-9)
    w = (spec.values > cutoff).astype(float)
    return herm((spec.vectors * w) @ spec.vectors.conj().T)


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity, the squared trace norm of sqrt(rho) sqrt(sigma)."""
    root = frac_power(rho, 0.5)
    w = np.linalg.eigvalsh(herm(root @ sigma @ root))
    val = float(np.sum(np.sqrt(np.clip(w, 0.0, None))) ** 2)
    return min(val, 1.0) if val < 1.0 + 1e-9 else val


def psd_leq(a: np.ndarray, b: np.ndarray, tol: float = PSD_TOL) -> bool:
    """Whether A <= B in the PSD order, up to eigenvalue tolerance."""
    gap = np.linalg.eigvalsh(herm(np.asarray(b) - np.asarray(a)))
    return bool(gap.min() >= -tol)


def tensor_power(rho: np.ndarray, n: int) -> np.ndarray:
    """n-fold Kronecker power of a density matrix, dense."""
    if n < 1:
        raise ValueError("tensor_power: n must be >= 1")
    d = rho.shape[0]
    if d**n > MAX_DENSE_DIM:
        raise ValueError(
            f"tensor_power: output dimension {d}^{n} exceeds dense cap {MAX_DENSE_DIM}; "
            "use tensor_power_probs for commuting pairs"
        )
    out = np.asarray(rho, dtype=complex)
    for _ in range(n - 1):
        out = np.kron(out, rho)
    return out


def tensor_power_probs(p: np.ndarray, n: int) -> np.ndarray:
    """n-fold product distribution, for the commuting fast path."""
    if n < 1:
        raise ValueError("tensor_power_probs: n must be >= 1")
    p = np.asarray(p, dtype=float)
    if len(p) ** n > 2**24:
        raise ValueError(f"tensor_power_probs: {len(p)}^{n} entries is too large")
    out = p
    for _ in range(n - 1):
        out = np.multiply.outer(out, p).ravel()
    return out


def pi_state(m_value: float) -> np.ndarray:
    """The qubit flag state diag(1/M, 1 - 1/M) for M >= 1."""
    if m_value < 1.0:
        raise ValueError(f"pi_state: M must be >= 1, got {m_value}")
    return np.diag([1.0 / m_value, 1.0 - 1.0 / m_value]).astype(complex)


def partial_trace(m: np.ndarray, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite operator on C^d1 (x) C^d2."""
    d1, d2 = dims
    t = np.asarray(m).reshape(d1, d2, d1, d2)
    if keep == 0:
        return np.trace(t, axis1=1, axis2=3)
    if keep == 1:
        return np.trace(t, axis1=0, axis2=2)
    raise ValueError("partial_trace: keep must be 0 or 1")


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return herm(g)


def random_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    """Ginibre-induced random density matrix, full rank by default."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return herm(rho / np.trace(rho).real)


def haar_isometry(rng: np.random.Generator, dim_in: int, dim_out: int) -> np.ndarray:
    """Haar-random isometry C^dim_in -> C^dim_out (dim_out >= dim_in)."""
    if dim_out < dim_in:
        raise ValueError("haar_isometry: dim_out must be >= dim_in")
    g = rng.standard_normal((dim_out, dim_in)) + 1j * rng.standard_normal((dim_out, dim_in))
    q, r = np.linalg.qr(g)
    # fix phases so the distribution is Haar
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph.conj()
