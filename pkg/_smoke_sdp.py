import numpy as np
import sys
sys.path.insert(0, "src")
from distex import sdp, linalg

rng = np.random.default_rng(7)

# 1. identity instance: max Tr X s.t. X <= I, X >= 0 -> 2
p = sdp.SdpProblem(
    primal_dims=[2], constraint_dims=[2],
    a_blocks=[np.eye(2, dtype=complex)], b_blocks=[np.eye(2, dtype=complex)],
    phi=np.eye(4),
)
sol = sdp.solve(p)
print("identity:", sol.status, sol.primal_value, sol.dual_value, sol.iterations)
assert abs(sol.primal_value - 2) < 1e-7, sol.primal_value

# 2. hand LP as diagonal SDP: max 0.75 l1 + 0.25 l2 s.t. 0.5 l1 + 0.5 l2 <= 0.25, 0 <= li <= 1
# optimum: l1 = 0.5, l2 = 0 -> 0.375, dual lambda = 1.5
rho = np.diag([0.75, 0.25]).astype(complex)
sigma = np.diag([0.5, 0.5]).astype(complex)
m = 2.0
phi_rows = np.vstack([sdp.mat_to_vec(sigma)])  # Tr[Lam sigma] row as 1x1 block? need map rep
# constraint blocks: Lam <= I (2x2), Tr[Lam sigma] <= 2^-m (1x1)
phi = np.vstack([np.eye(4), sdp.mat_to_vec(sigma)[None, :]])
p2 = sdp.SdpProblem(
    primal_dims=[2], constraint_dims=[2, 1],
    a_blocks=[rho], b_blocks=[np.eye(2, dtype=complex), np.array([[2.0**-m]], dtype=complex)],
    phi=phi,
)
sol2 = sdp.solve(p2)
print("distill LP:", sol2.status, sol2.primal_value, sol2.dual_value, sol2.iterations)
assert abs(sol2.primal_value - 0.375) < 1e-7, sol2.primal_value
lam_dual = sol2.y_blocks[1][0, 0].real
print("  dual lambda:", lam_dual)
assert abs(lam_dual - 1.5) < 1e-6
rep = sdp.check_slackness(p2, sol2)
print("  slackness:", rep.worst)
assert rep.worst < 1e-6

# 3. weak duality on random instances + embedding
for t in range(5):
    d = 3
    a = linalg.random_hermitian(rng, d)
    b = linalg.random_density(rng, d) + 0.5 * np.eye(d)
    u = linalg.random_hermitian(rng, d) * 0.3
    def fn(x, u=u):
        return x + u @ x @ u.conj().T
    phi = sdp.map_rep(fn, d, d)
    prob = sdp.SdpProblem([d], [d], [a], [b], phi)
    s1 = sdp.solve(prob)
    emb = sdp.real_embedding(prob)
    s2 = sdp.solve(emb)
    print(f"rand {t}: {s1.status} {s1.primal_value:.10f} emb/2 {s2.primal_value/2:.10f} gap {s1.gap:.2e} it {s1.iterations}")
    assert s1.status in ("optimal", "max_iter") and max(s1.primal_residual, s1.dual_residual) < 1e-6
    assert abs(s2.primal_value / 2 - s1.primal_value) < 1e-6

# 4. equality-constrained: max <A,X> s.t. Tr X = 1, X >= 0, X <= I -> max eigenvalue
a = linalg.random_hermitian(rng, 3)
p4 = sdp.SdpProblem(
    primal_dims=[3], constraint_dims=[3],
    a_blocks=[a], b_blocks=[np.eye(3, dtype=complex)],
    phi=np.eye(9),
    eq_matrix=sdp.mat_to_vec(np.eye(3))[None, :], eq_rhs=np.array([1.0]),
)
s4 = sdp.solve(p4)
wmax = np.linalg.eigvalsh(a).max()
print("eq lambda_max:", s4.status, s4.primal_value, "expect", wmax, "nu:", s4.eq_multipliers)
assert abs(s4.primal_value - wmax) < 1e-7

# duplicate equality row (rank deficiency)
p5 = sdp.SdpProblem(
    primal_dims=[3], constraint_dims=[3],
    a_blocks=[a], b_blocks=[np.eye(3, dtype=complex)],
    phi=np.eye(9),
    eq_matrix=np.vstack([sdp.mat_to_vec(np.eye(3)), 2 * sdp.mat_to_vec(np.eye(3))]),
    eq_rhs=np.array([1.0, 2.0]),
)
s5 = sdp.solve(p5)
print("dup eq:", s5.status, s5.primal_value)
assert abs(s5.primal_value - wmax) < 1e-7

# 5. probe_slater on the distill program
rep5 = sdp.probe_slater(p2)
print("slater distill:", rep5)

# empty interior toy: max 0 s.t. X <= 0 -> margin 0
p6 = sdp.SdpProblem(
    primal_dims=[2], constraint_dims=[2],
    a_blocks=[np.zeros((2, 2), dtype=complex)], b_blocks=[np.zeros((2, 2), dtype=complex)],
    phi=np.eye(4),
)
rep6 = sdp.probe_slater(p6)
print("slater empty:", rep6)
assert rep6.primal_feasible and not rep6.primal_strict

# 6. dump/load
text = p2.to_text()
p2b = sdp.SdpProblem.from_text(text)
s2b = sdp.solve(p2b)
assert abs(s2b.primal_value - sol2.primal_value) < 1e-9
print("dump/load ok")

print("ALL SMOKE OK")
