"""Release acceptance criteria.

One test per criterion; each prints a single `[acceptance] PASS/FAIL` line
(shown with `pytest -s`, or automatically for failing tests) and enforces a
pinned tolerance.  All simulation-backed criteria run at B = 10000
replications with a fixed seed, so every number below is reproducible
bit for bit.

The estimator-consistency criterion is known not to be met: the gap
estimator truncates the weighted survival integral at the largest
observation, which leaves a deterministic bias of roughly
(1/n)**gamma * (log(n)/gamma + 1/gamma**2) ~ 0.069 at n = 5000 for the
default order, on top of sampling noise.  The measured mean absolute error
is ~0.076, above the 0.05 target.  The test states the target honestly
instead of loosening it; see the failure line in the output.
"""

import math
import time

import numpy as np
import pytest

from gwentropy import (
    CriticalTable,
    EntropyOrder,
    EstimatorVariant,
    Sample,
    TestConfig,
    affine_identity_check,
    bound_check,
    critical_values,
    empirical_gwse,
    gdwse,
    gwse,
    hazard_from_gdwse,
    power_study,
    statistic,
)
from gwentropy.distributions import (
    Exponential,
    Gamma,
    Pareto,
    Rayleigh,
    SeededSampler,
    Uniform,
    Weibull,
)
from gwentropy.verification import run_closed_form_suite

ORD = EntropyOrder(0.26, 1.25)
SEED = 1234
B = 10_000

# Frozen reference critical values for the default order (0.26, 1.25) at
# levels (0.01, 0.05, 0.10), simulated independently at B = 10000.  The two
# n = 25 entries at levels 0.05 and 0.10 are internally inconsistent in the
# source (the 0.05 entry duplicates the n = 7 value 0.21810 and the 0.10
# entry breaks the otherwise strict growth in n by 0.023) and are excluded
# from the comparison below.
REFERENCE_CRITICAL_VALUES = {
    4: (0.07666, 0.13727, 0.16981),
    5: (0.12145, 0.17263, 0.20185),
    6: (0.14906, 0.19960, 0.22662),
    7: (0.16893, 0.21810, 0.24337),
    8: (0.19024, 0.23468, 0.26113),
    9: (0.20317, 0.24861, 0.27558),
    10: (0.21687, 0.26026, 0.28849),
    11: (0.22709, 0.27192, 0.30025),
    12: (0.23581, 0.28305, 0.31134),
    13: (0.24587, 0.28878, 0.31884),
    14: (0.25436, 0.29767, 0.32693),
    15: (0.26067, 0.30454, 0.33363),
    16: (0.26468, 0.31550, 0.34597),
    17: (0.27219, 0.32203, 0.35480),
    18: (0.28200, 0.33075, 0.36135),
    19: (0.28674, 0.33222, 0.36592),
    20: (0.28955, 0.33686, 0.36894),
    21: (0.29881, 0.34701, 0.37865),
    22: (0.30434, 0.35431, 0.38425),
    23: (0.30909, 0.35696, 0.39035),
    24: (0.31098, 0.36215, 0.39297),
    25: (0.31807, 0.21810, 0.37008),
    26: (0.32124, 0.37164, 0.40463),
    27: (0.32314, 0.37540, 0.40856),
    28: (0.32846, 0.37966, 0.41360),
    29: (0.33505, 0.38617, 0.41831),
    30: (0.34131, 0.38831, 0.42192),
    35: (0.35224, 0.40191, 0.43525),
    40: (0.37268, 0.42064, 0.45580),
    45: (0.38505, 0.43506, 0.47251),
    50: (0.39104, 0.44952, 0.48579),
    60: (0.41437, 0.47008, 0.50450),
    70: (0.43474, 0.48912, 0.52189),
    80: (0.44990, 0.50518, 0.54231),
    90: (0.46394, 0.51954, 0.55417),
    100: (0.47300, 0.52891, 0.56268),
}
LEVELS = (0.01, 0.05, 0.10)
EXCLUDED_CELLS = {(25, 0.05), (25, 0.10)}

# Frozen reference rejection rates at the reference critical values above,
# each estimated at B = 10000.
REFERENCE_POWER = [
    ("weibull(2)", Weibull(2.0), 10, 0.05, 0.6981),
    ("weibull(4)", Weibull(4.0), 5, 0.01, 0.6376),
    ("gamma(5)", Gamma(5.0), 15, 0.01, 0.8233),
    ("gamma(7)", Gamma(7.0), 25, 0.10, 1.0000),
]


def _report(label: str, ok: bool, detail: str) -> None:
    print(f"[acceptance] {'PASS' if ok else 'FAIL'} {label}: {detail}")


def _reference_table(n_values) -> CriticalTable:
    rows = {n: REFERENCE_CRITICAL_VALUES[n] for n in n_values}
    # replications/seed describe the frozen source, not a local simulation
    return CriticalTable(
        order=ORD,
        levels=LEVELS,
        rows=rows,
        replications=B,
        seed=0,
        variant=EstimatorVariant.GAPS_ONLY,
    )


# ---------- criterion: closed forms agree with quadrature ----------


def test_closed_form_oracle_suite():
    started = time.perf_counter()
    cells = run_closed_form_suite(draws=20, seed=20240, tol=1e-8)
    elapsed = time.perf_counter() - started
    worst = max(c.max_rel_err for c in cells)
    ok = all(c.ok for c in cells) and elapsed < 10.0
    _report(
        "closed-form oracle suite",
        ok,
        f"{len(cells)} cells x 20 draws, worst rel err {worst:.2e} (tol 1e-8), "
        f"{elapsed:.1f}s (limit 10s)",
    )
    for c in cells:
        assert c.ok, f"{c.name}: {c.max_rel_err:.3e} > 1e-8"
    assert elapsed < 10.0


# ---------- criterion: critical-value table reproduction ----------


def test_critical_table_reproduction():
    tol = 0.015
    cfg = TestConfig(order=ORD, replications=B, seed=SEED)
    table = critical_values(sorted(REFERENCE_CRITICAL_VALUES), LEVELS, cfg)
    worst = (0.0, None)
    checked = 0
    for n, refs in REFERENCE_CRITICAL_VALUES.items():
        for level, ref in zip(LEVELS, refs):
            if (n, level) in EXCLUDED_CELLS:
                continue
            diff = abs(table.value(n, level) - ref)
            checked += 1
            if diff > worst[0]:
                worst = (diff, (n, level))
    ok = worst[0] <= tol
    _report(
        "critical-table reproduction",
        ok,
        f"worst |simulated - reference| = {worst[0]:.4f} at {worst[1]} over "
        f"{checked} cells (tol {tol}, {len(EXCLUDED_CELLS)} inconsistent cells excluded)",
    )
    assert ok


# ---------- criterion: power anchors ----------


def test_power_anchors():
    tol = 0.02
    cfg = TestConfig(order=ORD, replications=B, seed=SEED)
    diffs = []
    for label, alt, n, level, ref in REFERENCE_POWER:
        res = power_study(alt, [n], (level,), cfg, table=_reference_table([n]))
        diffs.append((abs(res[0].power - ref), label, res[0].power, ref))
    worst = max(diffs)
    ok = worst[0] <= tol
    _report(
        "power anchors",
        ok,
        "; ".join(f"{d[1]}: {d[2]:.4f} vs {d[3]:.4f}" for d in sorted(diffs, key=lambda d: d[1]))
        + f" (tol {tol})",
    )
    assert ok, worst


# ---------- criterion: size calibration ----------


def test_size_calibration():
    tol = 0.01
    cfg = TestConfig(order=ORD, replications=B, seed=SEED)
    results = power_study(Exponential(1.0), [10, 30, 50], LEVELS, cfg)
    worst = max(abs(r.power - r.level) for r in results)
    ok = worst <= tol
    _report(
        "size calibration",
        ok,
        f"null rejection rate within {worst:.4f} of nominal over "
        f"n in (10, 30, 50) x levels {LEVELS} (tol {tol})",
    )
    for r in results:
        assert abs(r.power - r.level) <= tol, (r.n, r.level, r.power)


# ---------- criterion: identities, bounds, invariances ----------


def _random_order(rng, moment_bounds: bool) -> EntropyOrder:
    # gamma >= 1 keeps the moment comparisons applicable
    g = rng.uniform(1.0, 2.2) if moment_bounds else rng.uniform(0.2, 2.2)
    lo = max(0.05, 1.0 - g + 0.01)
    dl = rng.uniform(lo, 0.95)
    beta = (g + 1.0 + dl) / 2.0
    alpha = (g + 1.0 - dl) / 2.0
    return EntropyOrder(alpha, beta)


def _random_distribution(rng, g: float):
    pick = rng.integers(0, 6)
    if pick == 0:
        return Exponential(rng.uniform(0.3, 3.0))
    if pick == 1:
        return Rayleigh(rng.uniform(0.2, 2.0))
    if pick == 2:
        return Weibull(rng.uniform(0.8, 3.0))
    if pick == 3:
        return Gamma(rng.uniform(0.8, 4.0))
    if pick == 4:
        a = rng.uniform(0.0, 1.0)
        return Uniform(a, a + rng.uniform(0.5, 2.0))
    # keep both the weighted tail (shape * g > 2) and E[X**2] finite
    return Pareto((2.2 + rng.uniform(0.0, 2.0)) / min(g, 1.0), rng.uniform(0.5, 2.0))


def test_identity_and_bound_properties():
    rng = SeededSampler(777, 0).generator()
    parts = []

    # exp-scale affine covariance of the weighted measures
    worst_affine = 0.0
    for _ in range(20):
        d = _random_distribution(rng, 1.0)
        o = _random_order(rng, moment_bounds=False)
        if isinstance(d, Pareto) and d.shape * o.gamma <= 2.2:
            continue
        scale = rng.uniform(0.1, 10.0)
        shift = rng.uniform(0.0, 5.0)
        res = affine_identity_check(d, o, scale=scale, shift=shift)
        worst_affine = max(worst_affine, res.survival, res.failure or 0.0)
    parts.append(f"affine residual <= {worst_affine:.1e}")
    assert worst_affine <= 1e-8

    # the residual measure of a Rayleigh variable is flat and encodes the rate
    rate = 0.45
    vals = [float(gdwse(Rayleigh(rate), ORD, t, method="quadrature")) for t in np.arange(0.0, 3.1, 0.25)]
    spread = max(vals) - min(vals)
    recovered = math.exp(-ORD.delta * vals[0]) / (2.0 * ORD.gamma)
    parts.append(f"flat-residual spread {spread:.1e}, rate err {abs(recovered - rate):.1e}")
    assert spread <= 1e-7
    assert abs(recovered - rate) <= 1e-6

    # the hazard comes back out of the dynamic measure by differentiation
    worst_hazard = 0.0
    for d, t in [(Exponential(1.3), 0.8), (Weibull(1.7), 1.1), (Gamma(2.5), 1.9)]:
        rec = hazard_from_gdwse(lambda s: float(gdwse(d, ORD, s)), ORD, t)
        worst_hazard = max(worst_hazard, abs(rec - d.hazard(t)) / (1.0 + d.hazard(t)))
    parts.append(f"hazard round trip <= {worst_hazard:.1e}")
    assert worst_hazard <= 1e-4

    # moment and log-sum bounds across a randomized sweep
    min_margin = math.inf
    cases = 0
    while cases < 100:
        o = _random_order(rng, moment_bounds=cases % 2 == 0)
        d = _random_distribution(rng, o.gamma)
        t = float(d.quantile(rng.uniform(0.2, 0.8)))
        rep = bound_check(d, o, t=t)
        assert rep.failures() == [], (type(d).__name__, o, t, rep.failures())
        applicable = [r.margin for r in rep.results if r.applicable]
        if applicable:
            min_margin = min(min_margin, min(applicable))
        cases += 1
    parts.append(f"bound margins >= {min_margin:.1e} over 100 cases")
    assert min_margin >= -1e-9

    # exact scale rules of the estimator and the test statistic
    s = Sample(Exponential(1.0).sample_values(60, SeededSampler(777, 1).generator()))
    worst_eq = 0.0
    worst_inv = 0.0
    for c in (0.05, 0.8, 12.0):
        lhs = empirical_gwse(s.scaled(c), ORD)
        rhs = empirical_gwse(s, ORD) + 2.0 * math.log(c) / ORD.delta
        worst_eq = max(worst_eq, abs(lhs - rhs))
        worst_inv = max(worst_inv, abs(statistic(s.scaled(c)).t_value - statistic(s).t_value))
    parts.append(f"scale equivariance <= {worst_eq:.1e}, T invariance <= {worst_inv:.1e}")
    assert worst_eq <= 1e-12
    assert worst_inv <= 1e-12

    # simulated tables do not depend on the worker count
    cfg = TestConfig(order=ORD, replications=2000, seed=SEED)
    tables = [critical_values([6, 12], cfg=cfg, workers=w) for w in (1, 2, 8)]
    identical = tables[0].rows == tables[1].rows == tables[2].rows
    parts.append(f"worker-invariant tables: {'yes' if identical else 'NO'}")
    assert identical

    _report("identity and bound properties", True, "; ".join(parts))


# ---------- criterion: estimator consistency ----------


def test_estimator_consistency_at_n5000():
    target = 0.05
    n, reps = 5000, 200
    truth = float(gwse(Exponential(1.0), ORD))
    errs = np.empty(reps)
    for rep in range(reps):
        rng = SeededSampler(2026, rep).generator()
        s = Sample(Exponential(1.0).sample_values(n, rng))
        errs[rep] = abs(empirical_gwse(s, ORD) - truth)
    mean_err = float(errs.mean())
    ok = mean_err < target
    _report(
        "estimator consistency",
        ok,
        f"mean |estimate - truth| = {mean_err:.4f} over {reps} samples of "
        f"n = {n} (target < {target}); dominated by the deterministic "
        f"truncation bias of the gap estimator",
    )
    assert ok
