"""Solver-level tests: duality, slackness residuals, embeddings, IO."""

import numpy as np
import pytest

from distex import linalg
from distex.sdp import (
    SdpProblem,
    check_slackness,
    congruence_rep,
    mat_to_vec,
    probe_slater,
    real_embedding,
    solve,
    vec_to_mat,
)

TOL = 1e-9


def identity_instance(d: int = 2) -> SdpProblem:
    return SdpProblem(
        primal_dims=[d],
        constraint_dims=[d],
        a_blocks=[np.eye(d)],
        b_blocks=[np.eye(d)],
        phi=np.eye(d * d),
    )


def hand_lp() -> SdpProblem:
    """max 0.75 x1 + 0.25 x2 with 0.5 x1 + 0.5 x2 <= 0.25, 0 <= xi <= 1.

    Vertices of the feasible polygon put the optimum at x = (0.5, 0),
    value 0.375, with the budget row active (multiplier 1.5).
    """
    a = np.diag([0.75, 0.25])
    budget = mat_to_vec(np.diag([0.5, 0.5]))[None, :]
    return SdpProblem(
        primal_dims=[2],
        constraint_dims=[2, 1],
        a_blocks=[a],
        b_blocks=[np.eye(2), np.array([[0.25]])],
        phi=np.vstack([np.eye(4), budget]),
    )


def test_identity_instance():
    sol = solve(identity_instance(), tol=TOL)
    assert sol.status == "optimal"
    assert sol.primal_value == pytest.approx(2.0, abs=1e-8)
    assert np.allclose(sol.x_blocks[0], np.eye(2), atol=1e-6)
    assert abs(sol.gap) <= TOL * max(1.0, abs(sol.primal_value))


def test_hand_lp_value_and_multiplier():
    sol = solve(hand_lp(), tol=TOL)
    assert sol.status == "optimal"
    assert sol.primal_value == pytest.approx(0.375, abs=1e-8)
    # the budget row is active; its dual block carries the LP multiplier
    assert sol.y_blocks[1][0, 0].real == pytest.approx(1.5, abs=1e-6)


def test_identity_slackness_example():
    prob = identity_instance()
    rep = check_slackness(prob, solve(prob, tol=TOL))
    assert rep.residual_by <= 1e-7
    assert rep.residual_ax <= 1e-7


def test_slackness_bound_and_scaling():
    for factor in (1.0, 2.0):
        prob = hand_lp()
        prob = SdpProblem(
            primal_dims=prob.primal_dims,
            constraint_dims=prob.constraint_dims,
            a_blocks=[factor * blk for blk in prob.a_blocks],
            b_blocks=prob.b_blocks,
            phi=prob.phi,
        )
        sol = solve(prob, tol=TOL)
        rep = check_slackness(prob, sol)
        norms = 1.0 + sum(np.linalg.norm(b) for b in prob.b_blocks)
        norms += sum(np.linalg.norm(a) for a in prob.a_blocks)
        assert rep.worst <= 10 * TOL * norms


def test_slackness_detects_perturbed_primal():
    prob = hand_lp()
    sol = solve(prob, tol=TOL)
    clean = check_slackness(prob, sol).worst
    sol.x_blocks[0][1, 1] += 0.05
    dirty = check_slackness(prob, sol)
    norms = 1.0 + sum(np.linalg.norm(b) for b in prob.b_blocks)
    norms += sum(np.linalg.norm(a) for a in prob.a_blocks)
    assert dirty.residual_ax > 10 * TOL * norms
    assert dirty.residual_ax > 100 * clean


def random_map_instance(rng: np.random.Generator, d_in: int, d_out: int) -> SdpProblem:
    # CPTP-free random positive-ish map: X -> sum_k K_k X K_k^dag
    kraus = [
        (rng.normal(size=(d_out, d_in)) + 1j * rng.normal(size=(d_out, d_in))) / 2.0
        for _ in range(2)
    ]
    rep = sum(congruence_rep_rect(k) for k in kraus)
    a = linalg.random_hermitian(rng, d_in) + d_in * np.eye(d_in)
    b = linalg.random_hermitian(rng, d_out) + 3.0 * d_out * np.eye(d_out)
    return SdpProblem(
        primal_dims=[d_in],
        constraint_dims=[d_out],
        a_blocks=[a],
        b_blocks=[b],
        phi=rep,
    )


def congruence_rep_rect(k: np.ndarray) -> np.ndarray:
    d_out, d_in = k.shape
    cols = []
    for j in range(d_in * d_in):
        e = np.zeros(d_in * d_in)
        e[j] = 1.0
        cols.append(mat_to_vec(k @ vec_to_mat(e, d_in) @ k.conj().T))
    return np.array(cols).T


def test_weak_duality_random_instances():
    rng = np.random.default_rng(11)
    for _ in range(10):
        prob = random_map_instance(rng, int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        sol = solve(prob, tol=TOL)
        assert sol.primal_value <= sol.dual_value + 1e-6


def test_solution_feasibility_invariants():
    rng = np.random.default_rng(12)
    prob = random_map_instance(rng, 3, 2)
    sol = solve(prob, tol=TOL)
    for x in sol.x_blocks:
        assert float(np.linalg.eigvalsh(x).min()) >= -1e-8
    for fx, b in zip(prob.apply(sol.x_blocks), prob.b_blocks):
        assert float(np.linalg.eigvalsh(b - fx).min()) >= -1e-8


def test_real_embedding_consistency():
    # two certified solves of the same optimum agree within the sum of
    # their duality gaps plus the residual leakage their status grades
    # allow; anything tighter would test luck, not the certificates
    rng = np.random.default_rng(13)
    for _ in range(10):
        prob = random_map_instance(rng, int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        sol = solve(prob, tol=TOL)
        emb = solve(real_embedding(prob), tol=TOL)
        assert sol.status in ("optimal", "inaccurate")
        assert emb.status in ("optimal", "inaccurate")
        budget = abs(sol.gap) + abs(emb.gap) / 2.0 + 10 * TOL * max(1.0, abs(sol.primal_value))
        assert abs(emb.primal_value / 2.0 - sol.primal_value) <= budget


def test_unitary_conjugation_invariance():
    rng = np.random.default_rng(14)
    prob = random_map_instance(rng, 3, 3)
    u = linalg.haar_isometry(rng, 3, 3)
    v = linalg.haar_isometry(rng, 3, 3)
    ru, rv = congruence_rep(u), congruence_rep(v)
    conj = SdpProblem(
        primal_dims=prob.primal_dims,
        constraint_dims=prob.constraint_dims,
        a_blocks=[u @ prob.a_blocks[0] @ u.conj().T],
        b_blocks=[v @ prob.b_blocks[0] @ v.conj().T],
        phi=rv @ prob.phi @ ru.T,
    )
    base = solve(prob, tol=TOL)
    rot = solve(conj, tol=TOL)
    assert base.status in ("optimal", "inaccurate")
    assert rot.status in ("optimal", "inaccurate")
    budget = abs(base.gap) + abs(rot.gap) + 10 * TOL * max(1.0, abs(base.primal_value))
    assert abs(rot.primal_value - base.primal_value) <= budget


def distill_instance(rho, sigma, m):
    d = rho.shape[0]
    return SdpProblem(
        primal_dims=[d],
        constraint_dims=[d, 1],
        a_blocks=[rho],
        b_blocks=[np.eye(d), np.array([[2.0 ** (-m)]])],
        phi=np.vstack([np.eye(d * d), mat_to_vec(sigma)[None, :]]),
    )


def dilute_instance(rho, sigma, m):
    d = rho.shape[0]
    n = d * d
    phi = np.zeros((2 * n, 2 * n))
    phi[:n, :n] = np.eye(n)
    phi[:n, n:] = -np.eye(n)
    phi[n:, :n] = np.eye(n)
    eq = np.zeros((1, 2 * n))
    eq[0, :n] = mat_to_vec(np.eye(d))
    return SdpProblem(
        primal_dims=[d, d],
        constraint_dims=[d, d],
        a_blocks=[np.zeros((d, d)), -np.eye(d)],
        b_blocks=[rho, (2.0 ** m) * sigma],
        phi=phi,
        eq_matrix=eq,
        eq_rhs=np.array([1.0]),
    )


def test_probe_slater_distillation():
    rng = np.random.default_rng(15)
    rho = linalg.random_density(rng, 2)
    sigma = linalg.random_density(rng, 2)
    rep = probe_slater(distill_instance(rho, sigma, 1.0))
    assert rep.primal_feasible
    assert rep.dual_feasible and rep.dual_strict


def test_probe_slater_dilution():
    rng = np.random.default_rng(16)
    rho = linalg.random_density(rng, 2)
    sigma = linalg.random_density(rng, 2)
    rep = probe_slater(dilute_instance(rho, sigma, 1.0))
    assert rep.primal_feasible
    assert rep.dual_feasible and rep.dual_strict


def test_probe_slater_empty_interior():
    prob = SdpProblem(
        primal_dims=[2],
        constraint_dims=[2],
        a_blocks=[np.eye(2)],
        b_blocks=[np.zeros((2, 2))],
        phi=np.eye(4),
    )
    rep = probe_slater(prob)
    assert not rep.primal_strict


def test_equality_rows_and_rank_deficiency():
    rng = np.random.default_rng(17)
    a = linalg.random_hermitian(rng, 3)
    want = float(np.linalg.eigvalsh(a).max())
    eq = mat_to_vec(np.eye(3))[None, :]
    base = SdpProblem(
        primal_dims=[3],
        constraint_dims=[3],
        a_blocks=[a],
        b_blocks=[3.0 * np.eye(3)],
        phi=np.eye(9),
        eq_matrix=eq,
        eq_rhs=np.array([1.0]),
    )
    sol = solve(base, tol=TOL)
    assert sol.primal_value == pytest.approx(want, abs=1e-7)
    # duplicated rows must not change anything
    dup = SdpProblem(
        primal_dims=[3],
        constraint_dims=[3],
        a_blocks=[a],
        b_blocks=[3.0 * np.eye(3)],
        phi=np.eye(9),
        eq_matrix=np.vstack([eq, eq]),
        eq_rhs=np.array([1.0, 1.0]),
    )
    assert solve(dup, tol=TOL).primal_value == pytest.approx(want, abs=1e-7)
    # contradictory rows are reported, not silently dropped
    bad = SdpProblem(
        primal_dims=[3],
        constraint_dims=[3],
        a_blocks=[a],
        b_blocks=[3.0 * np.eye(3)],
        phi=np.eye(9),
        eq_matrix=np.vstack([eq, eq]),
        eq_rhs=np.array([1.0, 2.0]),
    )
    assert solve(bad, tol=TOL).status == "primal_infeasible"


def test_max_iter_returns_partial_solution():
    sol = solve(hand_lp(), tol=1e-16, max_iter=2, extend=False)
    assert sol.status == "max_iter"
    assert np.isfinite(sol.primal_value)
    assert np.isfinite(sol.primal_residual)
    assert len(sol.x_blocks) == 1


def test_dump_load_round_trip(tmp_path):
    prob = hand_lp()
    text = prob.to_text()
    back = SdpProblem.from_text(text)
    assert back.primal_dims == prob.primal_dims
    assert back.constraint_dims == prob.constraint_dims
    assert np.allclose(back.phi, prob.phi)
    for x, y in zip(back.a_blocks, prob.a_blocks):
        assert np.allclose(x, y)
    assert solve(back, tol=TOL).primal_value == pytest.approx(0.375, abs=1e-8)


def test_degenerate_quantum_instances_close_gap():
    """Distillation/dilution programs near the critical budget are the
    numerically nastiest inputs this package generates; the solver must
    still certify them tightly."""
    rng = np.random.default_rng(42)
    rho = linalg.random_density(rng, 2)
    sigma = linalg.random_density(rng, 2)
    for m in (0.25, 1.0, 2.0):
        for prob in (distill_instance(rho, sigma, m), dilute_instance(rho, sigma, m)):
            sol = solve(prob, tol=TOL)
            # these programs pair optimal faces that overlap, so the label
            # may honestly report a stall; the certificates must not
            assert sol.status in ("optimal", "inaccurate")
            gscale = max(1.0, abs(sol.primal_value), abs(sol.dual_value))
            assert abs(sol.gap) <= 1e-7 * gscale
            assert check_slackness(prob, sol).worst <= 1e-6
