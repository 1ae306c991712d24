import math
import time
import numpy as np

from distex.exponents import (
    StatePair, smooth_dmin, smooth_dmax, err_exp_distill, sc_exp_distill,
    err_exp_dilute, sc_exp_dilute, dmin_swap_identity, bound_sc_distill,
    bound_err_distill, bound_sc_dilute, bound_sd22, bound_err_dilute_check,
    cross_bounds, hoeffding_rhs, sc_rhs, classical_fast_path, pow2_neg,
)
from distex.entropy import rel_entropy
from distex.linalg import random_density, haar_isometry, partial_trace, tensor_power_probs

rng = np.random.default_rng(7)
M_GRID = (0.0, 0.5, 1.0, 2.0, 4.0)

# --- criterion 1 + 2: identities, gaps, slackness on 50 pairs ---
t0 = time.time()
worst_ident = 0.0
worst_gap = 0.0
worst_slack = 0.0
pairs = [StatePair(random_density(rng, 2), random_density(rng, 2)) for _ in range(50)]
for pair in pairs:
    for m in M_GRID:
        ed = err_exp_distill(pair, m)
        sd = sc_exp_distill(pair, m)
        ec = err_exp_dilute(pair, m)
        sc = sc_exp_dilute(pair, m)
        worst_ident = max(worst_ident,
                          abs(pow2_neg(ed.value) - (1.0 - pow2_neg(sd.value))),
                          abs(pow2_neg(ec.value) - (1.0 - pow2_neg(sc.value))))
        for r in (ed, sd, ec, sc):
            worst_gap = max(worst_gap, r.gap)
            worst_slack = max(worst_slack, max(r.slackness.values()))
t1 = time.time()
print(f"crit1/2: ident={worst_ident:.3e} gap={worst_gap:.3e} slack={worst_slack:.3e} time={t1-t0:.1f}s")

# --- criterion 3: round trips both directions, 20 pairs ---
t0 = time.time()
worst_fwd = 0.0
worst_rev = 0.0
for pair in pairs[:20]:
    for eps in (0.1, 0.3):
        m = smooth_dmin(pair, eps).value
        if m != math.inf:
            worst_fwd = max(worst_fwd, abs(err_exp_distill(pair, m).value + math.log2(eps)))
        m = smooth_dmax(pair, eps).value
        worst_fwd = max(worst_fwd, abs(err_exp_dilute(pair, m).value + math.log2(eps)))
    for m0 in (0.5, 1.5):
        e = err_exp_distill(pair, m0).value
        if e != math.inf:
            worst_rev = max(worst_rev, abs(smooth_dmin(pair, 2.0**-e).value - m0))
        e = err_exp_dilute(pair, m0).value
        if e != math.inf:
            worst_rev = max(worst_rev, abs(smooth_dmax(pair, 2.0**-e).value - m0))
t1 = time.time()
print(f"crit3: fwd={worst_fwd:.3e} rev={worst_rev:.3e} time={t1-t0:.1f}s")

# --- criterion 4: swap identity ---
t0 = time.time()
worst = 0.0
for pair in pairs[:20]:
    for eps in (0.1, 0.3):
        rep = dmin_swap_identity(pair, eps)
        worst = max(worst, rep.defect)
print(f"crit4: swap defect={worst:.3e} time={time.time()-t0:.1f}s")

# --- criterion 5: bounds slack >= -1e-7, sd22 vs petz branch ---
t0 = time.time()
worst_slack5 = math.inf
worst_sd22 = math.inf
for pair in pairs[:12]:
    for m in (0.0, 0.25, 1.0):
        for rep in (bound_sc_distill(pair, m), bound_err_distill(pair, m),
                    bound_sc_dilute(pair, m), bound_sd22(pair, m)):
            worst_slack5 = min(worst_slack5, rep.slack)
        r22 = bound_sd22(pair, m)
        rsc = bound_sc_dilute(pair, m)
        worst_sd22 = min(worst_sd22, r22.bound_value - rsc.branches["petz"])
        chk = bound_err_dilute_check(pair, m)
        assert chk.holds, f"dilute converse failed: {chk}"
    rep = cross_bounds(pair, 0.25, 1.0)
    assert rep.holds, f"cross bounds failed: {rep}"
print(f"crit5: min slack={worst_slack5:.3e} sd22-petz min={worst_sd22:.3e} time={time.time()-t0:.1f}s")

# --- criterion 7: data processing, 100 channels ---
t0 = time.time()
base = StatePair(random_density(rng, 2), random_density(rng, 2))
m = 0.5
ed0 = err_exp_distill(base, m).value
sd0 = sc_exp_distill(base, m).value
ec0 = err_exp_dilute(base, m).value
sc0 = sc_exp_dilute(base, m).value
worst_dp = 0.0
for _ in range(100):
    v = haar_isometry(rng, 2, 4)
    out_r = partial_trace(v @ base.rho @ v.conj().T, (2, 2), 0)
    out_s = partial_trace(v @ base.sigma @ v.conj().T, (2, 2), 0)
    img = StatePair(out_r, out_s)
    worst_dp = max(worst_dp,
                   err_exp_distill(img, m).value - ed0,
                   sd0 - sc_exp_distill(img, m).value,
                   ec0 - err_exp_dilute(img, m).value,
                   sc_exp_dilute(img, m).value - sc0)
print(f"crit7: max DP violation={worst_dp:.3e} time={time.time()-t0:.1f}s")

# --- criterion 8: asymptotic trend via classical fast path ---
t0 = time.time()
p = np.array([0.75, 0.25]); q = np.array([0.5, 0.5])
pairc = StatePair(np.diag(p).astype(complex), np.diag(q).astype(complex))
D = rel_entropy(np.diag(p).astype(complex), np.diag(q).astype(complex))
R = 0.1
h = hoeffding_rhs(pairc, R)
gaps = {}
for n in range(2, 17):
    pn = tensor_power_probs(p, n); qn = tensor_power_probs(q, n)
    e = classical_fast_path(pn, qn, n * R)["err_exp"] / n
    assert e >= h - 1e-12, (n, e, h)
    gaps[n] = e - h
print(f"crit8 hoeffding: D={D:.4f} rhs={h:.6f} gap2={gaps[2]:.6f} gap16={gaps[16]:.6f} shrink={gaps[16] < gaps[2]}")
R2 = 0.4
s = sc_rhs(pairc, R2)
gaps2 = {}
for n in range(2, 17):
    pn = tensor_power_probs(p, n); qn = tensor_power_probs(q, n)
    e = classical_fast_path(pn, qn, n * R2)["sc_exp"] / n
    assert e >= s - 1e-12, (n, e, s)
    gaps2[n] = e - s
print(f"crit8 sc: rhs={s:.6f} gap2={gaps2[2]:.6f} gap16={gaps2[16]:.6f} shrink={gaps2[16] < gaps2[2]} time={time.time()-t0:.1f}s")

# --- monotonicity in m (module invariant) ---
t0 = time.time()
worst_mono = 0.0
for pair in pairs[:10]:
    prev = None
    for m in M_GRID:
        cur = (err_exp_distill(pair, m).value, sc_exp_distill(pair, m).value,
               err_exp_dilute(pair, m).value, sc_exp_dilute(pair, m).value)
        if prev is not None:
            fin = lambda a, b: a != math.inf and b != math.inf
            if fin(cur[0], prev[0]): worst_mono = max(worst_mono, cur[0] - prev[0])
            if fin(prev[1], cur[1]): worst_mono = max(worst_mono, prev[1] - cur[1])
            if fin(prev[2], cur[2]): worst_mono = max(worst_mono, prev[2] - cur[2])
            if fin(cur[3], prev[3]): worst_mono = max(worst_mono, cur[3] - prev[3])
        prev = cur
print(f"mono: worst={worst_mono:.3e} time={time.time()-t0:.1f}s")
print("BATTERY DONE")
