"""Small dense semidefinite programs with primal and dual certificates.

Problems are stated in the inequality standard form

    maximize    <A, X>
    subject to  Phi(X) <= B        (PSD order, blockwise)
                Psi(X)  = b        (optional real equality rows)
                X >= 0

over block-diagonal Hermitian X, with the dual

    minimize    <B, Y> + <b, nu>
    subject to  Phi^T(Y) + Psi^T(nu) >= A
                Y >= 0,  nu free.

Hermitian blocks are coordinatized in the orthonormal basis
{E_ii} u {(E_ij + E_ji)/sqrt2} u {i(E_ij - E_ji)/sqrt2}, so every linear
map is a plain real matrix and the adjoint is its transpose.

The solver is a primal-dual path-following method with Nesterov-Todd
scaling and a Mehrotra predictor-corrector step, fraction-to-boundary
0.98, allowing infeasible starts.  It is meant for desk-scale instances
(a few hundred real parameters), where dense factorizations are cheap
and duality gaps near 1e-10 are routinely reachable.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .linalg import herm

MAX_PRIMAL_PARAMS = 2048
_SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Hermitian <-> real coordinates


@lru_cache(maxsize=64)
def _triu(d: int):
    return np.triu_indices(d, 1)


@lru_cache(maxsize=64)
def basis_elements(d: int) -> np.ndarray:
    """Orthonormal Hermitian basis of C^{d x d}, shape (d*d, d, d)."""
    iu, ju = _triu(d)
    out = np.zeros((d * d, d, d), dtype=complex)
    for k in range(d):
        out[k, k, k] = 1.0
    npairs = len(iu)
    for t, (i, j) in enumerate(zip(iu, ju)):
        out[d + t, i, j] = out[d + t, j, i] = 1.0 / _SQRT2
        out[d + npairs + t, i, j] = 1j / _SQRT2
        out[d + npairs + t, j, i] = -1j / _SQRT2
    return out


def mat_to_vec(a: np.ndarray) -> np.ndarray:
    """Coordinates of a Hermitian matrix in the orthonormal basis."""
    d = a.shape[0]
    iu, ju = _triu(d)
    return np.concatenate(
        [np.diagonal(a).real, _SQRT2 * a[iu, ju].real, _SQRT2 * a[iu, ju].imag]
    )


def vec_to_mat(v: np.ndarray, d: int) -> np.ndarray:
    """Inverse of mat_to_vec.  Preserves extended precision coordinates."""
    iu, ju = _triu(d)
    n = len(iu)
    a = np.zeros((d, d), dtype=np.promote_types(v.dtype, np.complex64))
    np.fill_diagonal(a, v[:d])
    upper = (v[d : d + n] + 1j * v[d + n :]) / _SQRT2
    a[iu, ju] = upper
    a[ju, iu] = upper.conj()
    return a


def blocks_to_vec(blocks: list[np.ndarray]) -> np.ndarray:
    return np.concatenate([mat_to_vec(b) for b in blocks]) if blocks else np.zeros(0)


def vec_to_blocks(v: np.ndarray, dims: list[int]) -> list[np.ndarray]:
    out, k = [], 0
    for d in dims:
        out.append(vec_to_mat(v[k : k + d * d], d))
        k += d * d
    return out


def congruence_rep(m: np.ndarray) -> np.ndarray:
    """Real matrix of u -> m u m^dag in the orthonormal basis."""
    d = m.shape[0]
    e = basis_elements(d)
    target = np.promote_types(m.dtype, np.complex128)
    if e.dtype != target:
        e = e.astype(target)
    f = np.einsum("ab,kbc,dc->kad", m, e, m.conj())
    return np.einsum("jba,kba->jk", e.conj(), f).real


def map_rep(fn, d_in: int, d_out: int) -> np.ndarray:
    """Real matrix of a Hermitian-preserving map given as a function."""
    e = basis_elements(d_in)
    cols = [mat_to_vec(herm(fn(e[k]))) for k in range(d_in * d_in)]
    return np.stack(cols, axis=1)


# ---------------------------------------------------------------------------
# Problem and solution containers


@dataclass
class SdpProblem:
    """Standard-form data (A, B, Phi) plus optional equality rows.

    ``phi`` is the real coordinate matrix of the constraint map; its
    adjoint is the transpose, which is what apply_adjoint uses.  Optional
    analytic interior points can be attached so probe_slater can check
    them instead of solving auxiliary programs.
    """

    primal_dims: list[int]
    constraint_dims: list[int]
    a_blocks: list[np.ndarray]
    b_blocks: list[np.ndarray]
    phi: np.ndarray
    eq_matrix: np.ndarray | None = None
    eq_rhs: np.ndarray | None = None
    analytic_primal: list[np.ndarray] | None = None
    analytic_dual: list[np.ndarray] | None = None

    def __post_init__(self) -> None:
        self.phi = np.asarray(self.phi, dtype=float)
        np_, nc = self.primal_size, self.constraint_size
        if np_ > MAX_PRIMAL_PARAMS:
            raise ValueError(f"primal dimension {np_} exceeds cap {MAX_PRIMAL_PARAMS}")
        if self.phi.shape != (nc, np_):
            raise ValueError(f"phi shape {self.phi.shape} does not match ({nc}, {np_})")
        for blk, d, nm in ((self.a_blocks, self.primal_dims, "A"), (self.b_blocks, self.constraint_dims, "B")):
            if [m.shape[0] for m in blk] != list(d):
                raise ValueError(f"{nm} blocks do not match declared dimensions")
        if (self.eq_matrix is None) != (self.eq_rhs is None):
            raise ValueError("equality matrix and rhs must be given together")
        if self.eq_matrix is not None:
            self.eq_matrix = np.atleast_2d(np.asarray(self.eq_matrix, dtype=float))
            self.eq_rhs = np.atleast_1d(np.asarray(self.eq_rhs, dtype=float))
            if self.eq_matrix.shape != (len(self.eq_rhs), np_):
                raise ValueError("equality rows do not match the primal dimension")

    @property
    def primal_size(self) -> int:
        return sum(d * d for d in self.primal_dims)

    @property
    def constraint_size(self) -> int:
        return sum(d * d for d in self.constraint_dims)

    def apply(self, x_blocks: list[np.ndarray]) -> list[np.ndarray]:
        return vec_to_blocks(self.phi @ blocks_to_vec(x_blocks), self.constraint_dims)

    def apply_adjoint(self, y_blocks: list[np.ndarray]) -> list[np.ndarray]:
        return vec_to_blocks(self.phi.T @ blocks_to_vec(y_blocks), self.primal_dims)

    def to_text(self) -> str:
        """Self-describing text dump (block dims, coordinates, dense map)."""
        def cplx(blocks):
            return [[[float(z.real), float(z.imag)] for z in m.ravel()] for m in blocks]

        doc = {
            "format": "sdp-problem/1",
            "primal_dims": list(map(int, self.primal_dims)),
            "constraint_dims": list(map(int, self.constraint_dims)),
            "objective_blocks": cplx(self.a_blocks),
            "bound_blocks": cplx(self.b_blocks),
            "map_matrix": self.phi.tolist(),
        }
        if self.eq_matrix is not None:
            doc["equality_matrix"] = self.eq_matrix.tolist()
            doc["equality_rhs"] = self.eq_rhs.tolist()
        return json.dumps(doc, indent=1)

    @classmethod
    def from_text(cls, text: str) -> "SdpProblem":
        doc = json.loads(text)
        if doc.get("format") != "sdp-problem/1":
            raise ValueError(f"unrecognized problem format {doc.get('format')!r}")

        def blocks(key, dims):
            out = []
            for raw, d in zip(doc[key], dims):
                flat = np.array([complex(re, im) for re, im in raw])
                out.append(flat.reshape(d, d))
            return out

        pd, cd = doc["primal_dims"], doc["constraint_dims"]
        return cls(
            primal_dims=pd,
            constraint_dims=cd,
            a_blocks=blocks("objective_blocks", pd),
            b_blocks=blocks("bound_blocks", cd),
            phi=np.array(doc["map_matrix"], dtype=float),
            eq_matrix=np.array(doc["equality_matrix"], dtype=float) if "equality_matrix" in doc else None,
            eq_rhs=np.array(doc["equality_rhs"], dtype=float) if "equality_rhs" in doc else None,
        )


@dataclass
class SdpSolution:
    status: str
    x_blocks: list[np.ndarray]
    y_blocks: list[np.ndarray]
    eq_multipliers: np.ndarray | None
    primal_value: float
    dual_value: float
    gap: float
    primal_residual: float
    dual_residual: float
    iterations: int


@dataclass
class SlacknessReport:
    residual_by: float
    residual_ax: float

    @property
    def worst(self) -> float:
        return max(self.residual_by, self.residual_ax)


@dataclass
class SlaterReport:
    primal_feasible: bool
    primal_strict: bool
    dual_feasible: bool
    dual_strict: bool
    primal_margin: float
    dual_margin: float
    used_analytic: bool


# ---------------------------------------------------------------------------
# Dtype-generic dense kernels
#
# LAPACK stops at double precision, but the certificate tolerances ask for
# duality gaps well below what cond(N) ~ 1/mu leaves us there, so the last
# iterations rerun in 80-bit extended floats with these small hand-rolled
# kernels.  Block sizes are tiny; none of this is performance-critical.


def _is_lapack(a: np.ndarray) -> bool:
    return a.dtype in (np.float64, np.complex128)


def _eigh_any(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigensystem of a Hermitian matrix, any float precision."""
    if _is_lapack(a):
        return np.linalg.eigh(a)
    d = a.shape[0]
    rdt = np.real(a).dtype
    m = a.astype(np.promote_types(a.dtype, np.complex64)).copy()
    v = np.eye(d, dtype=m.dtype)
    if d == 1:
        return m.real[0].copy(), v
    scale = max(float(np.abs(m).max()), 1.0)
    eps = float(np.finfo(rdt).eps)
    for _ in range(60):  # cyclic Jacobi sweeps; quadratic once nearly diagonal
        off = float(np.sqrt(sum(abs(m[p, q]) ** 2 for p in range(d) for q in range(p + 1, d))))
        if off <= eps * scale * d:
            break
        thresh = off / (d * d)
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = m[p, q]
                mag = abs(apq)
                if mag <= thresh:
                    continue
                w = apq / mag
                tau = (m[q, q].real - m[p, p].real) / (2 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1 + tau * tau))
                cth = 1 / np.sqrt(1 + t * t)
                sth = t * cth
                cp, cq = m[:, p].copy(), m[:, q].copy()
                m[:, p] = cth * cp - sth * np.conj(w) * cq
                m[:, q] = sth * cp + cth * np.conj(w) * cq
                rp, rq = m[p, :].copy(), m[q, :].copy()
                m[p, :] = cth * rp - sth * w * rq
                m[q, :] = sth * rp + cth * w * rq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = cth * vp - sth * np.conj(w) * vq
                v[:, q] = sth * vp + cth * np.conj(w) * vq
    vals = m.diagonal().real.copy()
    order = np.argsort(vals)
    return vals[order], v[:, order]


def _eigmin_any(a: np.ndarray) -> float:
    if _is_lapack(a):
        return float(np.linalg.eigvalsh(a).min())
    return float(_eigh_any(a)[0][0])


def _sv_right(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Singular values (descending) and right singular vectors.

    One-sided Jacobi rather than an eigendecomposition of m^dag m: the
    latter squares the condition number and loses the small singular
    values the scaling point is built from once the gap is tiny.
    """
    if _is_lapack(m):
        u, sv, vh = np.linalg.svd(m)
        return sv, vh.conj().T
    d = m.shape[1]
    a = m.astype(np.promote_types(m.dtype, np.complex64)).copy()
    v = np.eye(d, dtype=a.dtype)
    if d == 1:
        return np.sqrt(np.sum((a.conj() * a).real, axis=0)), v
    eps = float(np.finfo(np.real(a).dtype).eps)
    for _ in range(60):
        worst = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                app = float(np.real(a[:, p].conj() @ a[:, p]))
                aqq = float(np.real(a[:, q].conj() @ a[:, q]))
                apq = a[:, p].conj() @ a[:, q]
                mag = abs(apq)
                denom = math.sqrt(app * aqq)
                if denom <= 0.0:
                    continue
                rel = float(mag / denom)
                worst = max(worst, rel)
                if rel <= eps:
                    continue
                w = apq / mag
                tau = (aqq - app) / (2 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1 + tau * tau))
                cth = 1 / np.sqrt(1 + t * t)
                sth = t * cth
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = cth * cp - sth * np.conj(w) * cq
                a[:, q] = sth * cp + cth * np.conj(w) * cq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = cth * vp - sth * np.conj(w) * vq
                v[:, q] = sth * vp + cth * np.conj(w) * vq
        if worst <= eps * d:
            break
    sv = np.sqrt(np.sum((a.conj() * a).real, axis=0))
    order = np.argsort(sv)[::-1]
    return sv[order], v[:, order]


def _chol_any(a: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor; raises LinAlgError when not positive definite."""
    if _is_lapack(a):
        return np.linalg.cholesky(a)
    m = a.copy()
    d = m.shape[0]
    for j in range(d):
        if j:
            m[j:, j] -= m[j:, :j] @ m[j, :j].conj()
        piv = m[j, j].real
        if not piv > 0:
            raise np.linalg.LinAlgError("matrix is not positive definite")
        root = np.sqrt(piv)
        m[j, j] = root
        m[j + 1 :, j] /= root
    return np.tril(m)


def _solve_lower(lo: np.ndarray, b: np.ndarray) -> np.ndarray:
    x = b.astype(np.promote_types(lo.dtype, b.dtype)).copy()
    for i in range(lo.shape[0]):
        if i:
            x[i] -= lo[i, :i] @ x[:i]
        x[i] /= lo[i, i]
    return x


def _solve_upper_conj(lo: np.ndarray, b: np.ndarray) -> np.ndarray:
    # solves lo^H x = b by back substitution
    x = b.astype(np.promote_types(lo.dtype, b.dtype)).copy()
    d = lo.shape[0]
    for i in range(d - 1, -1, -1):
        if i < d - 1:
            x[i] -= lo[i + 1 :, i].conj() @ x[i + 1 :]
        x[i] /= lo[i, i].conj()
    return x


def _solve_pd(a_fac: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve with a precomputed Cholesky factor, either precision."""
    if _is_lapack(a_fac):
        return np.linalg.solve(a_fac.conj().T, np.linalg.solve(a_fac, b))
    return _solve_upper_conj(a_fac, _solve_lower(a_fac, b))


def _chol_psd(a: np.ndarray) -> np.ndarray:
    try:
        return _chol_any(a)
    except np.linalg.LinAlgError:
        w, v = _eigh_any(herm(a))
        floor = max(float(w.max()), 1.0) * float(np.finfo(np.real(a).dtype).eps) * 100
        lifted = herm((v * np.clip(w, floor, None)) @ v.conj().T)
        return _chol_any(lifted)


class _Scaling:
    """Per-block Nesterov-Todd scaling r, r^-1 and scaled point lambda."""

    def __init__(self, s: np.ndarray, z: np.ndarray):
        ls = _chol_psd(s)
        lz = _chol_psd(z)
        m = lz.conj().T @ ls
        sv, v = _sv_right(m)
        tiny = math.sqrt(float(np.finfo(np.real(s).dtype).tiny))
        sv = np.clip(sv, tiny, None)
        root = np.sqrt(sv)
        self.lam = sv
        self.r = (ls @ v) / root
        eye = np.eye(ls.shape[0], dtype=ls.dtype)
        self.rinv = (root[:, None] * v.conj().T) @ _solve_lower_mat(ls, eye)
        w_inv = self.rinv.conj().T @ self.rinv
        self.winv_rep = congruence_rep(w_inv)

    def scale_s(self, ds: np.ndarray) -> np.ndarray:
        return self.rinv @ ds @ self.rinv.conj().T

    def scale_z(self, dz: np.ndarray) -> np.ndarray:
        return self.r.conj().T @ dz @ self.r


def _solve_lower_mat(lo: np.ndarray, b: np.ndarray) -> np.ndarray:
    if _is_lapack(lo):
        return np.linalg.solve(lo, b)
    return _solve_lower(lo, b)


def _step_to_boundary(lam: np.ndarray, dlam: np.ndarray) -> float:
    root = np.sqrt(lam)
    h = dlam / np.outer(root, root)
    wmin = _eigmin_any(herm(h))
    return math.inf if wmin >= -1e-300 else 1.0 / (-wmin)


def _iterate(c_red, g_red, h_red, cone_dims, start, tol, max_iter, mty=False):
    """Core predictor-corrector loop in the dtype of the inputs.

    Returns (status, xi, s, z, iterations).  `start` is either None for
    the scaled-identity cold start or a warm (xi, s, z) triple.

    Mehrotra's corrector is fast but its cross term wrecks the step size
    on degenerate instances once the gap is tiny, so the polishing phase
    sets ``mty`` and alternates plain centering steps with plain affine
    steps, gated by an explicit proximity measure.
    """
    rdt = c_red.dtype
    slices, k = [], 0
    for d in cone_dims:
        slices.append(slice(k, k + d * d))
        k += d * d
    nu = sum(cone_dims)
    ncone = g_red.shape[0]

    if start is None:
        xi = np.zeros(g_red.shape[1], dtype=rdt)
        scale0 = max(1.0, float(np.linalg.norm(h_red)) / max(1.0, math.sqrt(ncone)))
        zscale = max(1.0, float(np.linalg.norm(c_red)) / max(1.0, math.sqrt(ncone)))
        s = np.concatenate([scale0 * mat_to_vec(np.eye(d, dtype=rdt)) for d in cone_dims])
        z = np.concatenate([zscale * mat_to_vec(np.eye(d, dtype=rdt)) for d in cone_dims])
    else:
        xi, s, z = (np.asarray(v, dtype=rdt).copy() for v in start)

    h_norm = 1.0 + float(np.linalg.norm(h_red))
    c_norm = 1.0 + float(np.linalg.norm(c_red))
    status = "max_iter"
    iters = 0
    best = None  # (merit, xi, s, z); iterates can degrade once mu hits noise
    best_age = 0
    # handoff: the deepest well-centered iterate whose residuals are
    # negligible next to its own gap; a clean restart point for polishing
    hand = None
    # while set, skip centering until the gap falls below this mark
    force_below = None
    # acceptable worst complementarity product for the polish phase
    stol = 10.0 * tol * max(h_norm, c_norm)
    # residual requirement; the polish phase needs an extra decade since
    # feasibility error leaks into the duality gap the caller computes
    rtol = 0.1 * tol if mty else tol

    def _phi(xi_v, s_v, z_v):
        # worst requirement ratio at a point: residuals and gap against
        # their targets, raw complementarity against stol; <= 1 means done
        rx_v = c_red + g_red.T @ z_v
        rz_v = g_red @ xi_v + s_v - h_red
        gs = max(1.0, abs(float(c_red @ xi_v)), abs(float(h_red @ z_v)))
        comps = [
            float(np.linalg.norm(rz_v)) / h_norm / rtol,
            float(np.linalg.norm(rx_v)) / c_norm / rtol,
            float(s_v @ z_v) / (gs * tol),
        ]
        if mty:
            comps.append(
                max(
                    float(np.linalg.norm(sb @ zb))
                    for sb, zb in zip(
                        vec_to_blocks(s_v, cone_dims), vec_to_blocks(z_v, cone_dims)
                    )
                )
                / stol
            )
        return max(comps)

    def _prox_of(s_v, z_v):
        mu_v = (s_v @ z_v) / nu
        lam2 = np.concatenate(
            [
                _Scaling(sb, zb).lam ** 2
                for sb, zb in zip(
                    vec_to_blocks(s_v, cone_dims), vec_to_blocks(z_v, cone_dims)
                )
            ]
        )
        return float(np.linalg.norm(lam2 / mu_v - 1.0))

    for _ in range(max_iter):
        iters += 1
        rx = c_red + g_red.T @ z
        rz = g_red @ xi + s - h_red
        gap = s @ z
        mu = gap / nu
        s_blocks = vec_to_blocks(s, cone_dims)
        z_blocks = vec_to_blocks(z, cone_dims)

        pres = float(np.linalg.norm(rz)) / h_norm
        dres = float(np.linalg.norm(rx)) / c_norm
        gscale = max(1.0, abs(float(c_red @ xi)), abs(float(h_red @ z)))
        phi = max(pres / rtol, dres / rtol, float(gap) / (gscale * tol))
        slackmax = math.inf
        if mty:
            # the polish phase is judged by what the caller will see: the
            # worst raw product ||SZ||, which off-center iterates can leave
            # orders of magnitude above the gap itself
            slackmax = max(
                float(np.linalg.norm(sb @ zb)) for sb, zb in zip(s_blocks, z_blocks)
            )
            phi = max(phi, slackmax / stol)
        if best is None or phi < best[0] * (1.0 - 1e-3):
            best = (phi, xi.copy(), s.copy(), z.copy())
            best_age = 0
        else:
            best_age += 1
        if phi <= 1.0:
            status = "optimal"
            break
        if best_age >= (30 if mty else 10):
            break  # noise floor reached; fall back to the best iterate

        # certificates of infeasibility (conservative heuristics)
        hz = float(h_red @ z)
        if hz < -1e-8 * max(1.0, float(np.linalg.norm(z))):
            if float(np.linalg.norm(g_red.T @ z)) <= 1e-10 * abs(hz):
                status = "primal_infeasible"
                break
        cx = float(c_red @ xi)
        if cx < -1e-8 * max(1.0, float(np.linalg.norm(xi))):
            if float(np.linalg.norm(g_red @ xi + s)) <= 1e-10 * abs(cx):
                status = "dual_infeasible"
                break

        try:
            scl = [_Scaling(sb, zb) for sb, zb in zip(s_blocks, z_blocks)]
        except np.linalg.LinAlgError:
            break

        lam2_now = np.concatenate([sc.lam**2 for sc in scl])
        prox_now = float(np.linalg.norm(lam2_now / mu - 1.0))
        if os.environ.get("SDP_TRACE"):
            raw = max(
                float(np.linalg.norm(sb @ zb)) for sb, zb in zip(s_blocks, z_blocks)
            )
            print(
                f"  {'p2' if mty else 'p1'} it={iters} gap={float(gap):.3e} prox={prox_now:.2e}"
                f" pres={pres:.2e} dres={dres:.2e} phi={phi:.3e} slack={raw:.2e}"
                f" ratio={raw / max(float(gap), 1e-300):.1e} age={best_age}"
            )
        if prox_now <= 3.0 and max(pres, dres) <= 0.01 * float(gap) / gscale:
            if hand is None or float(gap) < hand[0]:
                hand = (float(gap), xi.copy(), s.copy(), z.copy())

        big = g_red.T @ np.vstack([sc.winv_rep @ g_red[sl] for sc, sl in zip(scl, slices)])
        big = 0.5 * (big + big.T)

        if mty:
            # factorization ladder for the polish phase: Cholesky while the
            # matrix is numerically definite, then eigendecomposition
            # pseudo-inverses with a tight and a loose truncation.  Near a
            # degenerate optimum no single rung is right for every iterate
            # (a shifted factorization solves the wrong problem by O(1),
            # an aggressive truncation throws away genuine curvature), so
            # rungs are tried in order and judged by measured residual.
            fac: dict = {}

            def _solver(level):
                if level in fac:
                    return fac[level]
                sv = None
                if level == 0:
                    try:
                        f = _chol_any(big)
                    except np.linalg.LinAlgError:
                        f = None
                    if f is not None:

                        def sv(rhs, f=f):
                            w = _solve_pd(f, rhs)
                            return w + _solve_pd(f, rhs - big @ w)

                else:
                    if "eig" not in fac:
                        w_e, v_e = _eigh_any(big)
                        fac["eig"] = (
                            w_e.astype(rdt),
                            np.ascontiguousarray(v_e.real.astype(rdt)),
                        )
                    wr, vr = fac["eig"]
                    wmax = max(float(wr.max()), 0.0)
                    eps = float(np.finfo(rdt).eps)
                    tau = wmax * (big.shape[0] * eps if level == 1 else eps**0.5)
                    keep = wr > tau
                    inv = np.where(keep, 1.0 / np.where(keep, wr, 1.0), 0.0).astype(rdt)

                    def sv(rhs, vr=vr, inv=inv):
                        w = vr @ (inv * (vr.T @ rhs))
                        return w + vr @ (inv * (vr.T @ (rhs - big @ w)))

                fac[level] = sv
                return sv

        else:
            nfac = None
            try:
                nfac = _chol_any(big)
            except np.linalg.LinAlgError:
                jitter = 0.0
                for _ in range(3):
                    jitter = max(
                        jitter * 100.0,
                        1e-13 * (1.0 + float(np.trace(big)) / big.shape[0]),
                    )
                    try:
                        nfac = _chol_any(big + jitter * np.eye(big.shape[0], dtype=rdt))
                        break
                    except np.linalg.LinAlgError:
                        continue
                if nfac is None:
                    break

            def nsolve(rhs):
                w = _solve_pd(nfac, rhs)
                return w + _solve_pd(nfac, rhs - big @ w)

        def newton_once(rx_t, rz_t, d_blocks, sv):
            rdr = np.concatenate(
                [mat_to_vec(herm(sc.r @ db @ sc.r.conj().T)) for sc, db in zip(scl, d_blocks)]
            )
            q = rdr - rz_t
            cq = np.concatenate([sc.winv_rep @ q[sl] for sc, sl in zip(scl, slices)])
            dx = sv(rx_t - g_red.T @ cq)
            gdx_q = g_red @ dx + q
            dz = np.concatenate([sc.winv_rep @ gdx_q[sl] for sc, sl in zip(scl, slices)])
            ds = rz_t - g_red @ dx
            return dx, dz, ds

        def _direction_residual(rx_t, rz_t, d_blocks, dx, dz, ds):
            r1 = rx_t - g_red.T @ dz
            r2 = rz_t - (g_red @ dx + ds)
            r3 = []
            for sc, dsb, dzb, db in zip(
                scl,
                vec_to_blocks(ds, cone_dims),
                vec_to_blocks(dz, cone_dims),
                d_blocks,
            ):
                r3.append(db - sc.scale_s(dsb) - sc.scale_z(dzb))
            res = max(
                float(np.linalg.norm(r1)),
                float(np.linalg.norm(r2)),
                max(float(np.linalg.norm(rb)) for rb in r3),
            )
            return res, r1, r2, r3

        def newton(rx_t, rz_t, d_blocks):
            # a direction is only as good as its measured residual: the
            # normal equations lose most of their digits once active and
            # inactive constraints split the scaling over many orders of
            # magnitude, and an under-resolved direction violates the
            # complementarity rows badly enough to flip the sign of the
            # predicted gap change
            d_norm = max(float(np.linalg.norm(db)) for db in d_blocks)
            scale = max(
                float(np.linalg.norm(rx_t)), float(np.linalg.norm(rz_t)), d_norm, 1e-300
            )

            def refine(sv, rounds):
                dx, dz, ds = newton_once(rx_t, rz_t, d_blocks, sv)
                res, r1, r2, r3 = _direction_residual(rx_t, rz_t, d_blocks, dx, dz, ds)
                out = (res, dx, dz, ds)
                for _ in range(rounds):
                    if res <= 1e-16 * scale:
                        break
                    ex, ez, es = newton_once(r1, r2, r3, sv)
                    dx, dz, ds = dx + ex, dz + ez, ds + es
                    prev = res
                    res, r1, r2, r3 = _direction_residual(
                        rx_t, rz_t, d_blocks, dx, dz, ds
                    )
                    if res < out[0]:
                        out = (res, dx, dz, ds)
                    if res >= 0.5 * prev:
                        break
                return out

            if not mty:
                best_dir = refine(nsolve, 1)
            else:
                best_dir = None
                for level in (0, 1, 2):
                    sv = _solver(level)
                    if sv is None:
                        continue
                    cand = refine(sv, 4)
                    if best_dir is None or cand[0] < best_dir[0]:
                        best_dir = cand
                    if best_dir[0] <= 1e-6 * scale:
                        break
            res, dx, dz, ds = best_dir
            if os.environ.get("SDP_TRACE"):
                print(f"        newton res={res:.2e} rel={res / scale:.2e}")
            return dx, dz, ds

        cdt = np.promote_types(rdt, np.complex64)
        if mty:
            prox = prox_now
            if force_below is not None and float(gap) <= force_below:
                force_below = None
            sigma = 1.0 if (prox > 0.05 and force_below is None) else 0.0
            d_step = [np.diag((sigma * mu - sc.lam**2) / sc.lam).astype(cdt) for sc in scl]
            dx0, dz0, ds0 = newton(-rx, -rz, d_step)
            # second-order correction: near-degenerate optima curve the
            # central path so sharply that the linear prediction fails at
            # every usable step size.  The cross term is damped so it can
            # never overturn the first-order gap decrease, which it would
            # whenever the probe direction dwarfs the current iterate
            cls = [sc.scale_s(db) for sc, db in zip(scl, vec_to_blocks(ds0, cone_dims))]
            clz = [sc.scale_z(db) for sc, db in zip(scl, vec_to_blocks(dz0, cone_dims))]
            cross = sum(float(np.trace(a_s @ a_z).real) for a_s, a_z in zip(cls, clz))
            damp = min(1.0, 0.5 * float(gap) / abs(cross)) if cross else 1.0
            d_corr = []
            for sc, a_s, a_z in zip(scl, cls, clz):
                tgt = sigma * mu * np.eye(len(sc.lam), dtype=rdt) - np.diag(sc.lam**2)
                tgt = tgt - damp * 0.5 * (a_s @ a_z + a_z @ a_s)
                denom = 0.5 * (sc.lam[:, None] + sc.lam[None, :])
                d_corr.append((tgt / denom).astype(cdt))
            dx, dz, ds = newton(-rx, -rz, d_corr)
        else:
            # predictor
            d_aff = [-np.diag(sc.lam).astype(cdt) for sc in scl]
            dxa, dza, dsa = newton(-rx, -rz, d_aff)

            dls = [sc.scale_s(db) for sc, db in zip(scl, vec_to_blocks(dsa, cone_dims))]
            dlz = [sc.scale_z(db) for sc, db in zip(scl, vec_to_blocks(dza, cone_dims))]
            alpha = 1.0
            for sc, a_s, a_z in zip(scl, dls, dlz):
                alpha = min(
                    alpha, _step_to_boundary(sc.lam, a_s), _step_to_boundary(sc.lam, a_z)
                )
            gap_aff = (s + alpha * dsa) @ (z + alpha * dza)
            sigma = min(1.0, max(0.0, float(gap_aff / gap))) ** 3
            if prox_now > 1.0:
                # off-central drift makes the raw complementarity products
                # decay like sqrt(mu) instead of mu, which poisons the
                # handoff to the polish phase; a centering floor keeps the
                # trail clean at the price of a slower gap schedule
                sigma = max(sigma, min(0.5, 0.1 * prox_now))

            # corrector
            d_corr = []
            for sc, a_s, a_z in zip(scl, dls, dlz):
                target = sigma * mu * np.eye(len(sc.lam), dtype=rdt) - np.diag(sc.lam**2)
                target = target - 0.5 * (a_s @ a_z + a_z @ a_s)
                denom = 0.5 * (sc.lam[:, None] + sc.lam[None, :])
                d_corr.append(target / denom)
            dx, dz, ds = newton(-rx, -rz, d_corr)

        dls = [sc.scale_s(db) for sc, db in zip(scl, vec_to_blocks(ds, cone_dims))]
        dlz = [sc.scale_z(db) for sc, db in zip(scl, vec_to_blocks(dz, cone_dims))]
        amax = math.inf
        for sc, a_s, a_z in zip(scl, dls, dlz):
            amax = min(amax, _step_to_boundary(sc.lam, a_s), _step_to_boundary(sc.lam, a_z))
        cap = 0.98 if not mty else (0.95 if sigma == 1.0 else 0.9)
        step = min(1.0, cap * amax)
        if step <= 1e-10 and not mty:
            break

        if mty:
            # a Newton step legitimately trades gap for feasibility or
            # centering, so no metric is gated in isolation: accept on
            # sufficient decrease of the worst requirement ratio; the
            # proximity cap keeps iterates where the scaled Newton
            # system is still numerically solvable
            def _attempt(adx, adz, ads):
                a_sl = [
                    sc.scale_s(db) for sc, db in zip(scl, vec_to_blocks(ads, cone_dims))
                ]
                a_zl = [
                    sc.scale_z(db) for sc, db in zip(scl, vec_to_blocks(adz, cone_dims))
                ]
                am = math.inf
                for sc, b_s, b_z in zip(scl, a_sl, a_zl):
                    am = min(
                        am, _step_to_boundary(sc.lam, b_s), _step_to_boundary(sc.lam, b_z)
                    )
                st = min(1.0, (0.95 if sigma == 1.0 else 0.9) * am)
                if st <= 1e-10 or (sigma == 1.0 and st < 1e-4):
                    # a boundary step this small marks a direction blown up
                    # by an eigenvalue the equality rows pin near zero
                    return None
                for _ in range(12):
                    s_c = s + st * ads
                    z_c = z + st * adz
                    try:
                        prox_c = _prox_of(s_c, z_c)
                    except np.linalg.LinAlgError:
                        st *= 0.5
                        continue
                    if prox_c > max(3.0, 1.05 * prox):
                        st *= 0.5
                        continue
                    xi_c = xi + st * adx
                    # feasibility must never be traded away: a correct
                    # direction cannot raise the residuals, so any rise
                    # beyond noise marks direction error leaking in at
                    # this step size, which the merit maximum would hide
                    # behind whichever component currently dominates
                    pres_c = float(np.linalg.norm(g_red @ xi_c + s_c - h_red)) / h_norm
                    dres_c = float(np.linalg.norm(c_red + g_red.T @ z_c)) / c_norm
                    if pres_c > max(1.05 * pres, 0.5 * rtol) or dres_c > max(
                        1.05 * dres, 0.5 * rtol
                    ):
                        st *= 0.5
                        continue
                    phi_c = _phi(xi_c, s_c, z_c)
                    ok = phi_c <= 1.0 or phi_c <= phi * (1.0 - 0.01 * float(st))
                    if not ok and sigma == 1.0:
                        # centering legitimately trades a bounded merit rise
                        # for proximity; the best-iterate net catches drift
                        ok = prox_c <= 0.9 * prox and phi_c <= 3.0 * phi
                    if ok:
                        return st, s_c, z_c
                    st *= 0.5
                return None

            got = _attempt(dx, dz, ds)
            if os.environ.get("SDP_TRACE"):
                print(f"      sigma={sigma} main: {'refused' if got is None else f'step={float(got[0]):.2e}'}")
            if got is None and sigma == 0.0:
                # near a degenerate optimum the direction norm explodes and
                # couples the feasibility targets into the gap hard enough
                # to flip its sign; dropping those targets leaves a bounded
                # direction whose first-order gap decrease is exact
                dx, dz, ds = newton(0.0 * rx, 0.0 * rz, d_corr)
                got = _attempt(dx, dz, ds)
            if got is None:
                if sigma == 1.0:
                    # centering refuses from here; predict instead until the
                    # gap has dropped well below this level, then retry
                    force_below = float(gap) / 4.0
                    continue
                break
            step, s_t, z_t = got
        else:
            s_t = s + step * ds
            z_t = z + step * dz
            if max(pres, dres) <= 1e-6:
                # endgame guard: near the numerical floor a garbage direction
                # can clear the boundary test yet send the gap up by orders
                # of magnitude; shrink until the gap stays monotone-ish
                limit = float(gap) * 1.25 + 100.0 * float(np.finfo(rdt).eps) * nu
                ok = False
                for _ in range(25):
                    if float(s_t @ z_t) <= limit:
                        ok = True
                        break
                    step *= 0.5
                    s_t = s + step * ds
                    z_t = z + step * dz
                if not ok:
                    break

        xi = xi + step * dx
        s = s_t
        z = z_t

    if best is not None and status != "optimal":
        if best[0] < _phi(xi, s, z):
            _, xi, s, z = best

    return status, xi, s, z, iters, hand


def _merit_of(c_red, g_red, h_red, xi, s, z) -> float:
    xi = np.asarray(xi, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    rx = c_red + g_red.T @ z
    rz = g_red @ xi + s - h_red
    gscale = max(1.0, abs(float(c_red @ xi)), abs(float(h_red @ z)))
    return max(
        float(np.linalg.norm(rz)) / (1.0 + float(np.linalg.norm(h_red))),
        float(np.linalg.norm(rx)) / (1.0 + float(np.linalg.norm(c_red))),
        float(s @ z) / gscale,
    )


# keep extended precision for instances this small (real parameter count)
EXTEND_LIMIT = 200


def solve(
    problem: SdpProblem,
    tol: float = 1e-8,
    max_iter: int = 500,
    extend: bool | None = None,
) -> SdpSolution:
    """Run the interior-point method on a standard-form problem.

    Equality rows are eliminated up front: the variable is written as
    x0 + Nxi with N an orthonormal null-space basis, so the cone solver
    never sees them and the rows hold exactly at every iterate.  This
    sidesteps the squared conditioning a Schur-complement treatment of
    the multipliers suffers from once the barrier parameter is small.

    ``extend`` controls the extended-precision continuation that pushes
    the duality gap toward 1e-13 so complementarity products come out
    certificate-grade; default is on for small instances.

    Status is ``"optimal"`` when residuals and gap meet ``tol``, and
    ``"inaccurate"`` when the iteration stalled within 100x of it, which
    happens on instances whose optimal primal and dual faces overlap (no
    strictly complementary pair exists).  Values and certificates are
    still trustworthy at that coarser level; callers with hard accuracy
    requirements should check ``gap`` and the residuals, not the label.
    """
    pdims, cdims = list(problem.primal_dims), list(problem.constraint_dims)
    cone_dims = pdims + cdims
    n = problem.primal_size
    c = -blocks_to_vec(problem.a_blocks)
    g = np.vstack([-np.eye(n), problem.phi])
    hvec = np.concatenate([np.zeros(n), blocks_to_vec(problem.b_blocks)])

    if problem.eq_matrix is not None:
        u, sv, vt = np.linalg.svd(problem.eq_matrix)
        keep = sv > (sv.max() if len(sv) else 1.0) * 1e-12
        rank = int(keep.sum())
        e_mat = vt[:rank]
        recover = u[:, :rank] / sv[:rank]  # maps reduced multipliers back
        x0 = vt[:rank].T @ (u[:, :rank].T @ problem.eq_rhs / sv[:rank])
        if np.linalg.norm(problem.eq_matrix @ x0 - problem.eq_rhs) > 1e-9 * (
            1.0 + np.linalg.norm(problem.eq_rhs)
        ):
            return _empty_solution(problem, "primal_infeasible")
        null = vt[rank:].T
    else:
        e_mat = recover = None
        x0 = np.zeros(n)
        null = np.eye(n)

    c_red = null.T @ c
    g_red = g @ null
    h_red = hvec - g @ x0

    status, xi, s, z, iters, hand = _iterate(c_red, g_red, h_red, cone_dims, None, tol, max_iter)

    if extend is None:
        extend = n <= EXTEND_LIMIT
    if extend and status in ("optimal", "max_iter"):
        ld = np.longdouble
        warm = (hand[1], hand[2], hand[3]) if hand is not None else (xi, s, z)
        status2, xi2, s2, z2, it2, _ = _iterate(
            c_red.astype(ld),
            g_red.astype(ld),
            h_red.astype(ld),
            cone_dims,
            warm,
            max(tol, float(np.finfo(ld).eps) * 1e4),
            60,
            mty=True,
        )
        iters += it2
        if status2 in ("optimal", "max_iter"):
            merit_new = _merit_of(c_red, g_red, h_red, xi2, s2, z2)
            merit_old = _merit_of(c_red, g_red, h_red, xi, s, z)
            if merit_new <= max(merit_old, tol):
                xi, s, z = xi2, s2, z2

    xi = np.asarray(xi, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)

    y = -(e_mat @ (c + g.T @ z)) if e_mat is not None else None
    x = x0 + null @ xi
    pval = -float(c @ x)
    dval = float(hvec @ z) + (float(problem.eq_rhs @ (recover @ y)) if y is not None else 0.0)
    rx_full = c + g.T @ z + (e_mat.T @ y if y is not None else 0.0)
    rz_full = g @ x + s - hvec
    if status == "max_iter":
        # grade what was actually reached: degenerate instances stall a
        # couple of digits short of tol, and the returned point is still
        # a perfectly certified answer at the coarser level
        gscale = max(1.0, abs(pval), abs(dval))
        worst = max(
            np.linalg.norm(rz_full) / (1.0 + np.linalg.norm(hvec)),
            np.linalg.norm(rx_full) / (1.0 + np.linalg.norm(c)),
            abs(dval - pval) / gscale,
        )
        if worst <= tol:
            status = "optimal"
        elif worst <= 100.0 * tol:
            status = "inaccurate"
    x_blocks = [herm(m) for m in vec_to_blocks(x, pdims)]
    y_blocks = [herm(m) for m in vec_to_blocks(z[n:], cdims)]
    return SdpSolution(
        status=status,
        x_blocks=x_blocks,
        y_blocks=y_blocks,
        eq_multipliers=(recover @ y) if y is not None else None,
        primal_value=pval,
        dual_value=dval,
        gap=dval - pval,
        primal_residual=float(np.linalg.norm(rz_full)),
        dual_residual=float(np.linalg.norm(rx_full)),
        iterations=iters,
    )


def _empty_solution(problem: SdpProblem, status: str) -> SdpSolution:
    return SdpSolution(
        status=status,
        x_blocks=[np.zeros((d, d), dtype=complex) for d in problem.primal_dims],
        y_blocks=[np.zeros((d, d), dtype=complex) for d in problem.constraint_dims],
        eq_multipliers=None,
        primal_value=math.nan,
        dual_value=math.nan,
        gap=math.nan,
        primal_residual=math.inf,
        dual_residual=math.inf,
        iterations=0,
    )


# ---------------------------------------------------------------------------
# Certificates


def check_slackness(problem: SdpProblem, solution: SdpSolution) -> SlacknessReport:
    """Frobenius residuals of B Y = Phi(X) Y and Phi^T(Y) X = A X."""
    phix = problem.apply(solution.x_blocks)
    r_by = 0.0
    for b, f, yb in zip(problem.b_blocks, phix, solution.y_blocks):
        r_by = max(r_by, float(np.linalg.norm((b - f) @ yb)))
    adj = problem.apply_adjoint(solution.y_blocks)
    if solution.eq_multipliers is not None:
        extra = vec_to_blocks(problem.eq_matrix.T @ solution.eq_multipliers, problem.primal_dims)
        adj = [a + e for a, e in zip(adj, extra)]
    r_ax = 0.0
    for a, t, xb in zip(problem.a_blocks, adj, solution.x_blocks):
        r_ax = max(r_ax, float(np.linalg.norm((t - a) @ xb)))
    return SlacknessReport(residual_by=r_by, residual_ax=r_ax)


def _min_gap_blocks(blocks: list[np.ndarray]) -> float:
    return min(float(np.linalg.eigvalsh(herm(b)).min()) for b in blocks)


def probe_slater(
    problem: SdpProblem,
    primal_point: list[np.ndarray] | None = None,
    dual_point: list[np.ndarray] | None = None,
    tol: float = 1e-7,
) -> SlaterReport:
    """Estimate strict feasibility margins on both sides.

    Analytic points (passed in or attached to the problem) are checked
    directly; otherwise small auxiliary programs maximize the margin.
    """
    primal_point = primal_point if primal_point is not None else problem.analytic_primal
    dual_point = dual_point if dual_point is not None else problem.analytic_dual
    used_analytic = False

    if primal_point is not None:
        used_analytic = True
        slack = [b - f for b, f in zip(problem.b_blocks, problem.apply(primal_point))]
        pm = min(_min_gap_blocks(primal_point), _min_gap_blocks(slack))
        p_feas, p_strict = pm >= -tol, pm > tol
    else:
        pm, p_feas, p_strict = _margin_program(problem, side="primal", tol=tol)

    if dual_point is not None:
        used_analytic = True
        gap = [t - a for t, a in zip(problem.apply_adjoint(dual_point), problem.a_blocks)]
        dm = min(_min_gap_blocks(dual_point), _min_gap_blocks(gap))
        d_feas, d_strict = dm >= -tol, dm > tol
    else:
        dm, d_feas, d_strict = _margin_program(problem, side="dual", tol=tol)

    return SlaterReport(
        primal_feasible=p_feas,
        primal_strict=p_strict,
        dual_feasible=d_feas,
        dual_strict=d_strict,
        primal_margin=pm,
        dual_margin=dm,
        used_analytic=used_analytic,
    )


def _margin_program(problem: SdpProblem, side: str, tol: float) -> tuple[float, bool, bool]:
    """Maximize t such that the shifted point stays t-deep inside both cones."""
    if side == "primal":
        dims, cdims = list(problem.primal_dims), list(problem.constraint_dims)
        base = problem.phi
        shift = blocks_to_vec(problem.apply([np.eye(d, dtype=complex) for d in dims]))
        shift = shift + blocks_to_vec([np.eye(d, dtype=complex) for d in cdims])
        bound = problem.b_blocks
        eq_m, eq_r = problem.eq_matrix, problem.eq_rhs
        if eq_m is not None:
            eq_shift = eq_m @ blocks_to_vec([np.eye(d, dtype=complex) for d in dims])
    else:
        # dual margin: Y = Y' + tI >= tI with Phi^T(Y) - tI >= A
        dims, cdims = list(problem.constraint_dims), list(problem.primal_dims)
        base = -problem.phi.T
        shift = -problem.phi.T @ blocks_to_vec([np.eye(d, dtype=complex) for d in dims])
        shift = shift + blocks_to_vec([np.eye(d, dtype=complex) for d in cdims])
        bound = [-a for a in problem.a_blocks]
        eq_m = eq_r = None

    nvar = sum(d * d for d in dims)
    phi = np.zeros((sum(d * d for d in cdims) + 1, nvar + 1))
    phi[:-1, :nvar] = base
    phi[:-1, nvar] = shift
    phi[-1, nvar] = 1.0  # cap t <= 1
    a_blocks = [np.zeros((d, d), dtype=complex) for d in dims] + [np.eye(1, dtype=complex)]
    b_blocks = list(bound) + [np.eye(1, dtype=complex)]
    eq_matrix = eq_rhs = None
    if eq_m is not None:
        eq_matrix = np.hstack([eq_m, eq_shift[:, None]])
        eq_rhs = eq_r
    aux = SdpProblem(
        primal_dims=dims + [1],
        constraint_dims=cdims + [1],
        a_blocks=a_blocks,
        b_blocks=b_blocks,
        phi=phi,
        eq_matrix=eq_matrix,
        eq_rhs=eq_rhs,
    )
    sol = solve(aux, tol=1e-9)
    if sol.status not in ("optimal", "inaccurate", "max_iter"):
        return -math.inf, False, False
    margin = sol.primal_value
    return margin, margin >= -tol, margin > tol


# ---------------------------------------------------------------------------
# Complex-to-real embedding (consistency checks)


def _embed(a: np.ndarray) -> np.ndarray:
    re, im = a.real, a.imag
    return np.block([[re, -im], [im, re]]).astype(complex)


def _extract(y: np.ndarray, d: int) -> np.ndarray:
    y11, y12 = y[:d, :d], y[:d, d:]
    y21, y22 = y[d:, :d], y[d:, d:]
    return herm(0.5 * (y11 + y22) + 0.5j * (y21 - y12))


def real_embedding(problem: SdpProblem) -> SdpProblem:
    """Double every block into its real symmetric embedding.

    The doubled variable is pinned to the image of the embedding (real
    entries, J-invariant with J the standard symplectic form) by equality
    rows, under which the embedded optimum is exactly twice the original.
    A cheap independent consistency check on the solver.
    """
    pd = [2 * d for d in problem.primal_dims]
    cd = [2 * d for d in problem.constraint_dims]

    extract_rep = _block_diag(
        [map_rep(lambda u, dd=d: _extract(u, dd), 2 * d, d) for d in problem.primal_dims]
    )
    emb_rows = _block_diag([map_rep(_embed, d, 2 * d) for d in problem.constraint_dims])
    phi = emb_rows @ problem.phi @ extract_rep

    # rows of I - P, P the projector onto the embedded subspace; solve()
    # orthonormalizes so the redundancy is harmless
    sym_rows = []
    for d in problem.primal_dims:
        dd = 2 * d
        jmat = np.block(
            [[np.zeros((d, d)), -np.eye(d)], [np.eye(d), np.zeros((d, d))]]
        ).astype(complex)
        realify = map_rep(lambda u: herm(u.conj()), dd, dd)
        s_rep = 0.5 * (np.eye(dd * dd) + congruence_rep(jmat))
        r_rep = 0.5 * (np.eye(dd * dd) + realify)
        sym_rows.append(np.eye(dd * dd) - s_rep @ r_rep)
    sym_matrix = _block_diag(sym_rows)

    eq_matrix = sym_matrix
    eq_rhs = np.zeros(sym_matrix.shape[0])
    if problem.eq_matrix is not None:
        eq_matrix = np.vstack([problem.eq_matrix @ extract_rep, sym_matrix])
        eq_rhs = np.concatenate([problem.eq_rhs, eq_rhs])
    return SdpProblem(
        primal_dims=pd,
        constraint_dims=cd,
        a_blocks=[herm(_embed(a)) for a in problem.a_blocks],
        b_blocks=[herm(_embed(b)) for b in problem.b_blocks],
        phi=phi,
        eq_matrix=eq_matrix,
        eq_rhs=eq_rhs,
    )


def _block_diag(mats: list[np.ndarray]) -> np.ndarray:
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = np.zeros((rows, cols))
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out
