"""The full default suite: seeded batteries plus golden scenarios and property suites."""

import time

import numpy as np

from . import cones as C
from . import numerics
from .cones import Membership, Region
from .functionals import DenseCovector, TraceForm
from .operators import (
    Identity,
    inverse_residual,
    is_positive_map,
    rank_one_perturb,
    reverse_residual,
    sample_automorphism,
)
from .rng import stream
from .verify import Check, Report, default_cones, run_paper_examples, run_property_suite, show
from .witnesses import boundary_crossing, decompose_2x2, nonpositive_inverse_witness, smallest_scaling_n


def _random_cone(family, rng):
    if family == 0:
        return C.Orthant(int(rng.integers(2, 7)))
    if family == 1:
        return C.Lorentz(int(rng.integers(1, 6)))
    if family == 2:
        return C.Psd(int(rng.integers(2, 5)))
    if family == 3:
        return C.Copositive(int(rng.integers(2, 4)))
    if family == 4:
        return C.Lexicographic()
    if family == 5:
        n = int(rng.integers(2, 5))
        d = rng.standard_normal(n)
        return C.Ray(n, d / np.linalg.norm(d))
    return C.GridNonneg(np.sort(rng.uniform(-1, 1, int(rng.integers(5, 10)))))


def random_configurations(seed, count=200):
    """``count`` seeded ``(cone, T)`` pairs cycling through all seven families."""
    out = []
    for i in range(count):
        rng = stream(seed, "config", i)
        cone = _random_cone(i % 7, rng)
        s = sample_automorphism(cone, rng)
        f = cone.sample_dual(rng)
        u = cone.sample(Region.CONE, rng)
        if cone.point_norm(u) <= 1e-6:
            u = cone.unit()
        out.append((cone, rank_one_perturb(s, f, u, cone, rng)))
    return out


def inverse_exactness(seed, configs):
    worst_fwd = worst_rev = 0.0
    for i, (_, t) in enumerate(configs):
        rng = stream(seed, "inverse", i)
        worst_fwd = max(worst_fwd, inverse_residual(t, rng, 100))
        worst_rev = max(worst_rev, reverse_residual(t, rng, 100))
    name = "inverse-exactness"
    return [
        Check(name, f"max T(T⁻¹y) residual over {len(configs)} configurations", "<= 1e-09", show(worst_fwd),
              worst_fwd <= 1e-9),
        Check(name, f"max T⁻¹(Tx) residual over {len(configs)} configurations", "<= 1e-09", show(worst_rev),
              worst_rev <= 1e-9),
    ]


def positivity(seed, configs):
    bad = []
    worst = np.inf
    for i, (cone, t) in enumerate(configs):
        res = is_positive_map(t, cone, stream(seed, "positivity", i), 10_000, 1e-9)
        worst = min(worst, res.worst_margin)
        if not res:
            bad.append(f"{i}:{cone.to_text()}")
    return [Check("positivity", f"every T positive over 10⁴ samples ({len(configs)} configurations)",
                  "0 failures", f"{len(bad)} failures" + (f" ({', '.join(bad[:5])})" if bad else ""), not bad)]


def witness_families():
    fams = [C.Orthant(n) for n in range(2, 7)]
    fams += [C.Lorentz(d) for d in range(1, 6)]
    fams += [C.Psd(n) for n in range(2, 5)]
    fams += [C.Copositive(n) for n in range(2, 4)]
    fams += [C.GridNonneg(np.linspace(0.0, 1.0, m)) for m in range(5, 10)]
    return fams


def witness_coverage(seed, runs=25, budget=10_000):
    checks = []
    for cone in witness_families():
        found = 0
        strategies = {}
        for r in range(runs):
            rng = stream(seed, "witness", cone.to_text(), r)
            s = sample_automorphism(cone, rng)
            f = cone.sample_dual(rng)
            u = cone.sample(Region.INTERIOR, rng)
            t = rank_one_perturb(s, f, u, cone, rng)
            rep = nonpositive_inverse_witness(t, cone, rng, budget)
            ok = rep.found and rep.y_margin >= -1e-9 and rep.x_margin < -1e-6
            found += ok
            strategies[rep.strategy] = strategies.get(rep.strategy, 0) + ok
        detail = ", ".join(f"{k} {v}" for k, v in sorted(strategies.items()) if v)
        checks.append(Check("witness-coverage", f"{cone.to_text()}: verified witness in every run",
                            f"{runs}/{runs}", f"{found}/{runs} ({detail})", found == runs))
    return checks


def scaling(seed):
    checks = []
    cases = [
        (C.Orthant(3), Identity((3,)), DenseCovector([0.0, 1.0, 0.0]), np.eye(3)[0], "Orthant(3), (e₁, e₂*)"),
        (C.Psd(2), Identity((2, 2)), TraceForm(np.diag([0.0, 1.0])), np.diag([1.0, 0.0]),
         "Psd(2), (e₁e₁ᵀ, tr(e₂e₂ᵀ·))"),
    ]
    for cone, s, f, u, label in cases:
        n, rep = smallest_scaling_n(s, f, u, cone, stream(seed, "scaling", label))
        ok = n == 1 and rep.found and rep.y_margin >= -1e-9 and rep.x_margin < -1e-6
        checks.append(Check("scaling", f"{label}: smallest N with a verified witness", "1",
                            f"{n} (x margin {show(rep.x_margin)})", ok))
    return checks


def bisection(seed):
    checks = []
    cases = [
        (C.Orthant(2), [1.0, 1.0], [2.0, -1.0], 0.5, "orthant"),
        (C.Lorentz(1), [0.0, 1.0], [2.0, 0.0], 1.0 / 3.0, "lorentz"),
        (C.Psd(2), np.eye(2), np.diag([1.0, -1.0]), 0.5, "psd"),
    ]
    for cone, u, v, c, label in cases:
        res = boundary_crossing(cone, u, v)
        checks.append(Check("bisection", f"{label} crossing parameter", f"{show(c)} ± 1e-06", show(res.c),
                            abs(res.c - c) <= 1e-6))
    viol = 0
    total = 0
    for cone in (C.Orthant(4), C.Lorentz(3), C.Psd(3), C.Copositive(3), C.GridNonneg(np.linspace(0, 1, 5))):
        rng = stream(seed, "bisection", cone.to_text())
        for _ in range(20):
            u = cone.sample(Region.INTERIOR, rng)
            v = cone.sample(Region.EXTERIOR, rng)
            tol = 1e-10
            res = boundary_crossing(cone, u, v, tol)
            lo, hi = res.c - 10 * tol, res.c + 10 * tol
            total += 1
            viol += not (cone.margin((1 - lo) * u + lo * v) > -tol and cone.margin((1 - hi) * u + hi * v) < tol
                         and res.verdict_at_c.region is Membership.BOUNDARY)
    checks.append(Check("bisection", f"crossing sandwich and boundary verdict ({total} random segments)",
                        "0 violations", f"{viol} violations", viol == 0))
    return checks


def copositivity_instances(seed, count=200, n=4):
    rng = stream(seed, "copositivity")
    g = rng.standard_normal((count, n, n))
    shift = rng.uniform(0.0, 2.0, count)
    return (g + np.swapaxes(g, 1, 2)) / 2 + shift[:, None, None] * np.ones((n, n))


def copositivity_oracle(seed, count=200, resolution=200):
    mats = copositivity_instances(seed, count)
    face, _ = numerics.simplex_min_batch(mats)
    mismatch = 0
    worst_gap_excess = 0.0
    for a, v in zip(mats, face):
        grid = numerics.simplex_grid_min(a, resolution).value
        mismatch += (v >= -1e-6) != (grid >= -1e-6)
        bound = np.linalg.norm(a, 2) * a.shape[0] / resolution**2
        worst_gap_excess = max(worst_gap_excess, (grid - v) - bound, v - grid - 1e-12)
    return [
        Check("copositivity-oracle", f"face enumeration and grid (1/{resolution}) verdicts agree at 1e-6",
              f"0/{count} mismatches", f"{mismatch}/{count} mismatches", mismatch == 0),
        Check("copositivity-oracle", "0 <= grid - exact <= ||A||₂ n h²", "<= 0", show(worst_gap_excess),
              worst_gap_excess <= 0),
    ]


def decomposition_roundtrip(seed, count=100):
    rng = stream(seed, "decompose")
    worst = 0.0
    for _ in range(count):
        p = np.eye(2) if rng.random() < 0.5 else np.eye(2)[::-1]
        m = p @ np.diag(rng.uniform(0.1, 3, 2)) + np.outer(rng.uniform(0, 3, 2), rng.uniform(0, 3, 2))
        worst = max(worst, float(np.max(np.abs(decompose_2x2(m, grid=False).reconstruct() - m))))
    return [Check("decompose-2x2", f"round trip of {count} matrices PD + uvᵀ", "<= 1e-09", show(worst),
                  worst <= 1e-9)]


def run_selftest(seed=0):
    """Every battery of the default suite, assembled into one report."""
    report = Report("selftest", seed)

    def timed(name, fn, *args):
        start = time.perf_counter()
        out = fn(*args)
        report.runtimes[name] = time.perf_counter() - start
        if isinstance(out, Report):
            report.merge(out)
        else:
            report.checks.extend(out)

    start = time.perf_counter()
    configs = random_configurations(seed)
    report.runtimes["configurations"] = time.perf_counter() - start
    timed("inverse-exactness", inverse_exactness, seed, configs)
    timed("positivity", positivity, seed, configs)
    timed("witness-coverage", witness_coverage, seed)
    timed("golden-examples", run_paper_examples, seed)
    timed("scaling", scaling, seed)
    timed("bisection", bisection, seed)
    timed("copositivity-oracle", copositivity_oracle, seed)
    timed("decompose-2x2", decomposition_roundtrip, seed)
    for cone in default_cones():
        timed(f"properties {cone.to_text()}", run_property_suite, cone, seed)
    return report
