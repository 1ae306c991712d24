import math
import numpy as np

from distex.exponents import (
    StatePair, smooth_dmin, smooth_dmax, err_exp_distill, sc_exp_distill,
    err_exp_dilute, sc_exp_dilute, np_test_operator, classical_fast_path,
    dmin_errexp_link, dmin_swap_identity, dmax_errexp_link,
    bound_sc_distill, bound_err_distill, bound_sc_dilute, bound_sd22,
    bound_err_dilute_check, cross_bounds, hoeffding_rhs, sc_rhs,
    statepair_err_exp, statepair_sc_bound,
)
from distex.linalg import pi_state

rho = np.diag([0.75, 0.25]).astype(complex)
sig = np.diag([0.5, 0.5]).astype(complex)
pair = StatePair(rho, sig)

def show(name, got, want=None, tol=1e-8):
    flag = ""
    if want is not None:
        ok = (got == want) if (want == math.inf) else abs(got - want) <= tol
        flag = "OK" if ok else f"MISMATCH want {want}"
    print(f"{name:28s} {got!r:24s} {flag}")

show("E_d m=1", err_exp_distill(pair, 1.0).value, 2.0, 1e-7)
show("sc_d m=1", sc_exp_distill(pair, 1.0).value, -math.log2(0.75), 1e-7)
show("E_d m=2", err_exp_distill(pair, 2.0).value, -math.log2(0.625), 1e-7)
show("sc_d m=2", sc_exp_distill(pair, 2.0).value, -math.log2(0.375), 1e-7)
show("E_c m=0", err_exp_dilute(pair, 0.0).value, 2.0, 1e-7)
show("sc_c m=0", sc_exp_dilute(pair, 0.0).value, -math.log2(0.75), 1e-7)
show("E_c m=0.5", err_exp_dilute(pair, 0.5).value, -math.log2(0.75 - 2**0.5 * 0.5), 1e-6)
show("dmin eps=0.25", smooth_dmin(pair, 0.25).value, 1.0, 1e-7)
show("dmax eps=0", smooth_dmax(pair, 0.0).value, math.log2(1.5), 1e-12)
show("dmax eps=0.25", smooth_dmax(pair, 0.25).value, 0.0, 1e-7)

r1 = err_exp_distill(pair, 1.0)
print("distill slackness:", {k: f"{v:.2e}" for k, v in r1.slackness.items()}, "gap", f"{r1.gap:.2e}")
r2 = err_exp_dilute(pair, 0.5)
print("dilute slackness:", {k: f"{v:.2e}" for k, v in r2.slackness.items()}, "gap", f"{r2.gap:.2e}")
print("2^-E_d + 2^-sc identity:", 2.0**-r1.value + 2.0**-sc_exp_distill(pair, 1.0).value)

# rho == sigma
same = StatePair(sig, sig)
show("E_d rho=sigma m=1", err_exp_distill(same, 1.0).value, 1.0, 1e-7)
show("sc rho=sigma m=1", sc_exp_distill(same, 1.0).value, 1.0, 1e-7)

# NP test example
T = np_test_operator(0.5, pair)
err = 0.5 * (1 - np.trace(T @ rho).real) + 0.5 * np.trace(T @ sig).real
show("np_test err", float(err), 0.375, 1e-12)
print("T diag:", np.diag(T).real)

# classical fast path agreement
cfp = classical_fast_path(np.array([0.75, 0.25]), np.array([0.5, 0.5]), 1.0)
show("cfp err_exp m=1", cfp["err_exp"], 2.0, 1e-12)
show("cfp sc m=1", cfp["sc_exp"], -math.log2(0.75), 1e-12)
cfp2 = classical_fast_path(np.array([0.75, 0.25]), np.array([0.5, 0.5]), 0.5)
show("cfp dilute m=0.5", cfp2["dilute_err_exp"], -math.log2(0.75 - 2**0.5 * 0.5), 1e-12)

# links
for eps in (0.25, 0.1):
    rep = dmin_errexp_link(pair, eps)
    print(f"dmin link eps={eps}: holds={rep.holds} defect={rep.defect:.2e}")
rep = dmin_swap_identity(pair, 0.25)
print(f"swap identity: holds={rep.holds} defect={rep.defect:.2e} details={rep.details}")
for eps in (0.25, 0.1):
    rep = dmax_errexp_link(pair, eps)
    print(f"dmax link eps={eps}: holds={rep.holds} defect={rep.defect:.2e}")

# bounds
for name, rep in [
    ("bound_sc_distill m=1", bound_sc_distill(pair, 1.0)),
    ("bound_err_distill m=1", bound_err_distill(pair, 1.0)),
    ("bound_sc_dilute m=0.25", bound_sc_dilute(pair, 0.25)),
    ("bound_sd22 m=0.25", bound_sd22(pair, 0.25)),
]:
    print(f"{name}: bound={rep.bound_value:.6f} target={rep.target_value:.6f} slack={rep.slack:.3e} a*={rep.maximizing_alpha:.4f}")
rep = bound_err_dilute_check(pair, 0.25)
print(f"dilute converse grid: holds={rep.holds} defect={rep.defect:.3e}")
rep = cross_bounds(pair, 0.25, 1.0)
print(f"cross bounds: holds={rep.holds} defect={rep.defect:.3e} details={ {k: f'{v:.3e}' for k,v in rep.details.items()} }")

show("hoeffding_rhs R=0.1", hoeffding_rhs(pair, 0.1))
show("sc_rhs R=0.3", sc_rhs(pair, 0.3))

# state-pair: distillation target reproduces E_d^m (m=2 -> M=4)
tgt = StatePair(np.diag([1.0, 0.0]).astype(complex), pi_state(4))
sp = statepair_err_exp(pair, tgt)
show("statepair distill m=2", sp.value, -math.log2(0.625), 1e-5)
print("statepair slackness:", {k: f"{v:.2e}" for k, v in sp.slackness.items()}, "gap", f"{sp.gap:.2e}")
spb = statepair_sc_bound(pair, tgt, 1.0)
print(f"statepair sc bound: bound={spb.bound_value:.6f} target={spb.target_value:.6f} slack={spb.slack:.3e}")

# dilution direction: source (|0><0|, pi_4), target (rho, sigma), expect E_c^2-like
src = StatePair(np.diag([1.0, 0.0]).astype(complex), pi_state(4))
sp2 = statepair_err_exp(src, pair)
ec2 = err_exp_dilute(pair, 2.0)
show("statepair dilute m=2", sp2.value, ec2.value, 1e-5)
print("ALL SMOKE DONE")
