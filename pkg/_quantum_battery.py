"""Scratch: quantum distill/dilute instances, slackness floor check."""
import sys, time

sys.path.insert(0, "src")
import numpy as np
from distex import linalg, entropy
from distex.sdp import SdpProblem, solve, check_slackness

rng = np.random.default_rng(42)
rho = linalg.random_density(rng, 2)
sigma = linalg.random_density(rng, 2)
dmax = entropy.dmax_exact(rho, sigma)
print(f"dmax = {dmax:.6f}")

eye = np.eye(2)


def distill_problem(m):
    # max Tr[L rho]  s.t.  L <= I, Tr[L sigma] <= 2^-m  (scalar row as 1x1 block)
    from distex.sdp import mat_to_vec, congruence_rep

    phi_rows = [np.eye(4), mat_to_vec(sigma)[None, :]]
    return SdpProblem(
        primal_dims=[2],
        constraint_dims=[2, 1],
        a_blocks=[rho.copy()],
        b_blocks=[eye.copy(), np.array([[2.0 ** (-m)]])],
        phi=np.vstack(phi_rows),
    )


def dilute_problem(m):
    # min Tr Z  s.t. Z >= rhot - rho, rhot <= 2^m sigma, Tr rhot = 1, Z,rhot >= 0
    # max -Tr Z: A = (0, -I_Z); constraints: rhot - Z <= rho; rhot <= 2^m sigma
    from distex.sdp import mat_to_vec

    n1 = 4
    phi = np.zeros((8, 8))
    phi[0:4, 0:4] = np.eye(4)      # rhot
    phi[0:4, 4:8] = -np.eye(4)     # -Z
    phi[4:8, 0:4] = np.eye(4)      # rhot
    eq = np.zeros((1, 8))
    eq[0, 0:4] = mat_to_vec(eye)
    return SdpProblem(
        primal_dims=[2, 2],
        constraint_dims=[2, 2],
        a_blocks=[np.zeros((2, 2)), -eye.copy()],
        b_blocks=[rho.copy(), (2.0 ** m) * sigma],
        phi=phi,
        eq_matrix=eq,
        eq_rhs=np.array([1.0]),
    )


worst_all = 0.0
for m in [0.25, 0.5, 1.0, 2.0, 0.9 * dmax, 0.99 * dmax]:
    t0 = time.time()
    sol = solve(distill_problem(m), tol=1e-9)
    rep = check_slackness(distill_problem(m), sol)
    ms = (time.time() - t0) * 1e3
    print(
        f"distill m={m:8.5f}: {sol.status:8s} val={sol.primal_value:+.9f} "
        f"gap={abs(sol.gap):.2e} slack={rep.worst:.2e} it={sol.iterations} {ms:.0f}ms"
    )
    worst_all = max(worst_all, rep.worst)

for m in [0.05, 0.25, 0.5, 0.9 * dmax]:
    t0 = time.time()
    sol = solve(dilute_problem(m), tol=1e-9)
    rep = check_slackness(dilute_problem(m), sol)
    ms = (time.time() - t0) * 1e3
    print(
        f"dilute  m={m:8.5f}: {sol.status:8s} eps={-sol.primal_value:+.9f} "
        f"gap={abs(sol.gap):.2e} slack={rep.worst:.2e} it={sol.iterations} {ms:.0f}ms"
    )
    worst_all = max(worst_all, rep.worst)

print(f"\nWORST SLACKNESS: {worst_all:.3e}  ({'OK <= 1e-6' if worst_all <= 1e-6 else 'FAIL'})")
