"""Scenarios, property suites and the report they produce.

A ``Scenario`` bundles a cone, the data ``(S, f, u)`` of a rank-one
perturbation and a list of typed expectations. ``run_scenario`` builds the
map, evaluates each expectation and records one ``Check`` per assertion. The
reports are deterministic for a fixed seed. Runtimes are kept on the side and
left out of serialised output unless asked for.
"""

import csv
import io
import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import cones as C
from .cones import Membership, Region
from .errors import ConeError
from .functionals import DenseCovector, PointEvaluation, SpinDual, TraceForm, TrapezoidIntegral
from .operators import (
    Identity,
    Inverse,
    is_positive_map,
    inverse_residual,
    rank_one_perturb,
    reverse_residual,
    sample_automorphism,
)
from .rng import stream
from .witnesses import decompose_2x2, nonpositive_inverse_witness, Infeasibility


def show(v):
    """Stable text for a measured or expected value."""
    if v is None:
        return "-"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, str):
        return v
    a = np.asarray(v)
    if a.ndim == 0:
        x = a.item()
        return show(x) if isinstance(x, bool) else f"{float(x):.12g}"
    return "[" + ",".join(show(x) for x in a) + "]"


@dataclass(frozen=True)
class Check:
    scenario: str
    assertion: str
    expected: str
    measured: str
    passed: bool
    source: str = ""

    def as_dict(self):
        out = {"scenario": self.scenario, "assertion": self.assertion, "expected": self.expected,
               "measured": self.measured, "pass": self.passed}
        if self.source:
            out["source"] = self.source
        return out


@dataclass
class Report:
    title: str
    seed: int
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    runtimes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def merge(self, other):
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)
        self.runtimes.update(other.runtimes)
        return self

    def sorted_checks(self):
        return sorted(self.checks, key=lambda c: c.scenario)

    def as_dict(self, runtimes=False):
        out = {
            "title": self.title,
            "seed": self.seed,
            "passed": self.passed,
            "summary": {"checks": len(self.checks), "failed": len(self.failures)},
            "checks": [c.as_dict() for c in self.sorted_checks()],
            "notes": sorted(self.notes),
        }
        if runtimes:
            out["runtimes"] = {k: round(v, 6) for k, v in sorted(self.runtimes.items())}
        return out

    def to_json(self, runtimes=False):
        return json.dumps(self.as_dict(runtimes), indent=2, ensure_ascii=False)

    def to_text(self, runtimes=False):
        lines = [f"{self.title} (seed {self.seed})"]
        for c in self.sorted_checks():
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"{mark} {c.scenario} :: {c.assertion} | expected {c.expected} | measured {c.measured}")
        for n in sorted(self.notes):
            lines.append(f"NOTE {n}")
        if runtimes:
            for k, v in sorted(self.runtimes.items()):
                lines.append(f"TIME {k} {v:.3f}s")
        lines.append(f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scenario", "assertion", "expected", "measured", "pass"])
        for c in self.sorted_checks():
            w.writerow([c.scenario, c.assertion, c.expected, c.measured, "true" if c.passed else "false"])
        return buf.getvalue()


# ---------------------------------------------------------------------------
# scenarios

@dataclass
class Expectation:
    """One typed assertion.

    ``kind`` selects the measurement and ``relation`` one of eq, le, ge, lt or
    gt. Equality is checked within ``tol``.
    """

    kind: str
    label: str
    expected: object = None
    point: object = None
    relation: str = "eq"
    tol: float = 1e-12
    cone: object = None
    params: dict = field(default_factory=dict)
    source: str = ""


@dataclass
class Scenario:
    name: str
    cone: object
    s: object = None
    f: object = None
    u: object = None
    expectations: list = field(default_factory=list)
    note: str = ""


def _compare(measured, expected, relation, tol):
    if isinstance(expected, (bool, np.bool_)):
        return bool(measured) == bool(expected)
    m = np.asarray(measured, dtype=float)
    e = np.asarray(expected, dtype=float)
    if relation == "eq":
        return m.shape == e.shape and bool(np.all(np.abs(m - e) <= tol))
    m, e = float(m), float(e)
    return {"lt": m < e, "gt": m > e, "le": m <= e + tol, "ge": m >= e - tol}[relation]


def _expected_text(exp):
    if exp.relation == "eq" and not isinstance(exp.expected, (bool, np.bool_)) and exp.tol > 0:
        return f"{show(exp.expected)} ± {exp.tol:.0e}"
    sym = {"eq": "", "lt": "< ", "gt": "> ", "le": "<= ", "ge": ">= "}[exp.relation]
    return sym + show(exp.expected)


def _exact_function(name):
    return {"exp_neg_abs": lambda t: np.exp(-np.abs(t))}[name]


def _refined_min(cone, t, x, params):
    """Minimum of ``x + f(x) u`` on a refined grid, with ``x`` interpolated and ``u`` exact."""
    nodes = cone.nodes
    k = int(params.get("refine", 10))
    fine = np.concatenate([np.linspace(a, b, k, endpoint=False) for a, b in zip(nodes[:-1], nodes[1:])] + [nodes[-1:]])
    xf = np.interp(fine, nodes, x)
    return float(np.min(xf + t.f.eval(x) * _exact_function(params["u_exact"])(fine)))


def _measure(exp, sc, t, rng):
    """Return a list of ``(assertion, expected_text, measured, passed)``."""
    cone = exp.cone or sc.cone
    k = exp.kind
    if k == "decompose_2x2":
        res = decompose_2x2(exp.point)
        rows = [("result", "infeasible" if exp.expected == "infeasible" else "decomposition",
                 "infeasible" if isinstance(res, Infeasibility) else f"decomposition ({res.case} case)",
                 isinstance(res, Infeasibility) == (exp.expected == "infeasible"))]
        for cert in res.certificates:
            want = exp.params.get(cert.case)
            if want is not None:
                got = (float(cert.required), float(cert.bound))
                rows.append((f"{cert.case} case constants (required vs bound)", show(want), show(got),
                             bool(np.allclose(got, want, atol=1e-12))))
        lim = exp.params.get("grid_min_residual_gt")
        if lim is not None:
            rows.append(("grid search min residual", f"> {lim}", show(res.grid_min_residual),
                         res.grid_min_residual > lim))
        return rows
    p = None if exp.point is None else np.asarray(exp.point, dtype=float)
    if k == "positive":
        m = is_positive_map(t, cone, rng, int(exp.params.get("samples", 10_000)), exp.tol)
        measured = bool(m)
        return [(exp.label, show(exp.expected), f"{show(measured)} (worst margin {m.worst_margin:.3g})",
                 measured == exp.expected)]
    if k == "inverse_residual":
        n = int(exp.params.get("samples", 100))
        measured = max(inverse_residual(t, rng, n), reverse_residual(t, rng, n))
    elif k == "witness":
        hints = [] if p is None else [p]
        rep = nonpositive_inverse_witness(t, cone, rng, int(exp.params.get("budget", 10_000)), hints)
        rows = [(exp.label, "any" if exp.expected is None else show(exp.expected),
                 f"{show(rep.found)} ({rep.strategy}, {rep.attempts} attempts)",
                 exp.expected is None or rep.found == exp.expected)]
        if rep.found and "x_margin" in exp.params:
            rows.append(("witness preimage margin", show(exp.params["x_margin"]), show(rep.x_margin),
                         _compare(rep.x_margin, exp.params["x_margin"], "eq", exp.tol)))
        if rep.found and "y_margin" in exp.params:
            rows.append(("witness target margin", show(exp.params["y_margin"]), show(rep.y_margin),
                         _compare(rep.y_margin, exp.params["y_margin"], "eq", exp.tol)))
        if rep.found and "preimage" in exp.params:
            rows.append(("witness preimage", show(exp.params["preimage"]), show(rep.preimage_x),
                         _compare(rep.preimage_x, exp.params["preimage"], "eq", exp.tol)))
        return rows
    elif k == "apply":
        measured = t.apply(p)
    elif k == "inverse":
        measured = t.apply_inverse(p)
    elif k == "preimage_margin":
        measured = cone.margin(t.apply_inverse(p))
    elif k == "margin":
        measured = cone.margin(p)
    elif k == "functional":
        measured = sc.f.eval(p)
    elif k == "image_margin":
        measured = cone.margin(t.apply(p))
    elif k == "refined_min":
        measured = _refined_min(cone, t, p, exp.params)
    elif k == "hypothesis":
        measured = bool(getattr(t.hypotheses, exp.params["flag"]))
    elif k == "inverse_matrix":
        measured = Inverse(t).matrix()
    else:
        raise ValueError(f"unknown expectation kind {k!r}")
    return [(exp.label, _expected_text(exp), show(measured), _compare(measured, exp.expected, exp.relation, exp.tol))]


def run_scenario(sc, seed=0):
    """Build the scenario's map and check every expectation.

    Construction errors turn into a failed check that carries the reason.
    """
    report = Report(f"scenario {sc.name}", seed)
    start = time.perf_counter()
    t = None
    if sc.s is not None:
        try:
            t = rank_one_perturb(sc.s, sc.f, sc.u, sc.cone, stream(seed, "scenario", sc.name, "build"))
        except ConeError as exc:
            report.checks.append(Check(sc.name, "construction", "valid", f"{type(exc).__name__}: {exc}", False))
            report.runtimes[sc.name] = time.perf_counter() - start
            return report
    for i, exp in enumerate(sc.expectations):
        rng = stream(seed, "scenario", sc.name, i)
        try:
            rows = _measure(exp, sc, t, rng)
        except ConeError as exc:
            rows = [(exp.label, _expected_text(exp), f"{type(exc).__name__}: {exc}", False)]
        for label, expected, measured, ok in rows:
            report.checks.append(Check(sc.name, label, expected, measured, bool(ok), exp.source))
    if sc.note:
        report.notes.append(f"{sc.name}: {sc.note}")
    report.runtimes[sc.name] = time.perf_counter() - start
    return report


def _e(n, i):
    return np.eye(n)[i]


def golden_scenarios():
    """The golden scenarios, keyed by name."""
    out = {}

    xh = np.array([0.6, 0.8])
    x0 = np.append(xh, 0.0)
    y0 = np.append(xh, 1.0)
    lor = C.Lorentz(2)
    q = 'f(x,α):=α+⟨x,x̂⟩; "T(x̂, 0)=(x̂, 1)"'
    out["spin-factor"] = Scenario("spin-factor", lor, Identity((3,)), SpinDual(xh), _e(3, 2), [
        Expectation("hypothesis", "u interior", True, params={"flag": "u_interior"}, source='"(0,1)∈int(K)"'),
        Expectation("functional", "f((x̂,0))", 1.0, x0, tol=0.0, source='"f(x̂,0)=1"'),
        Expectation("apply", "T((x̂,0)) = (x̂,1)", y0, x0, tol=0.0, source=q),
        Expectation("margin", "margin((x̂,0))", -1.0, x0, source=q),
        Expectation("margin", "margin((x̂,1))", 0.0, y0, source=q),
        Expectation("inverse", "T⁻¹((x̂,1)) = (x̂,0)", x0, y0, tol=1e-12, source=q),
        Expectation("positive", "T positive (10⁴ samples)", True, tol=1e-9, source='"is positive and invertible"'),
        Expectation("inverse_residual", "inverse residual", 1e-12, relation="le", tol=0.0),
        Expectation("witness", "witness found", True, y0, params={"x_margin": -1.0, "y_margin": 0.0}, source=q),
    ])

    nodes = np.linspace(0.0, 1.0, 5)
    grid = C.GridNonneg(nodes)
    x = np.array([0.0, 5.0, 0.0, -1.0, 0.0])
    tx = np.array([1.0, 6.0, 1.0, 0.0, 1.0])
    q = '"f(x)=∫₀¹ x(t) dt", "f(x)=1"'
    out["c01-piecewise"] = Scenario("c01-piecewise", grid, Identity((5,)), TrapezoidIntegral(nodes), np.ones(5), [
        Expectation("functional", "trapezoid f(x)", 1.0, x, tol=0.0, source=q),
        Expectation("margin", "margin(x)", -1.0, x, tol=0.0, source=q),
        Expectation("apply", "T(x) node values", tx, x, tol=0.0, source=q),
        Expectation("image_margin", "margin(T(x))", 0.0, x, tol=0.0, source=q),
        Expectation("positive", "T positive (10⁴ samples)", True, tol=1e-9),
        Expectation("witness", "witness found", True, tx, params={"x_margin": -1.0, "preimage": x}, source=q),
    ], note="only grid-level facts are asserted; the continuum cone has interior but no extremals")

    psd = C.Psd(3)
    cop = C.Copositive(3)
    d = np.diag([-0.5, 1.0, 1.0])
    td = np.diag([1.0, 2.5, 2.5])
    q = '"D:=diag(−1/2,1,…,1)", "D∉K₁∪K₂ and T(D)∈K₁∩K₂"'
    out["copositive-psd"] = Scenario("copositive-psd", psd, Identity((3, 3)), TraceForm(np.eye(3)), np.eye(3), [
        Expectation("hypothesis", "u interior", True, params={"flag": "u_interior"}, source='"I∈int(K₁)∩int(K₂)"'),
        Expectation("margin", "psd margin(D)", -0.5, d, source=q),
        Expectation("margin", "copositive margin(D)", -0.5, d, cone=cop, source=q),
        Expectation("functional", "trace(D)", 1.5, d, tol=0.0, source=q),
        Expectation("apply", "T(D) = D + (3/2)I", td, d, tol=0.0, source=q),
        Expectation("image_margin", "psd margin(T(D))", 1.0, d, source=q),
        # 1/(1 + 2/5 + 2/5): the simplex minimum of diag(1, 5/2, 5/2)
        Expectation("image_margin", "copositive margin(T(D))", 5.0 / 9.0, d, cone=cop, source=q),
        Expectation("positive", "T positive on psd (10⁴ samples)", True, tol=1e-9),
        Expectation("positive", "T positive on copositive (10⁴ samples)", True, tol=1e-9, cone=cop),
        Expectation("witness", "witness recovers D from T(D)", True, td,
                    params={"x_margin": -0.5, "preimage": d}, source=q),
    ])

    n = 8
    q = '"T⁻¹eᵢ= eᵢ − λe_j"'
    out["lp-truncation"] = Scenario("lp-truncation", C.Orthant(n), Identity((n,)), DenseCovector(np.ones(n)), _e(n, 1), [
        Expectation("inverse", "T⁻¹e₁ = e₁ − ½e₂", _e(n, 0) - 0.5 * _e(n, 1), _e(n, 0), tol=0.0, source=q),
        Expectation("preimage_margin", "margin(T⁻¹e₁)", -0.5, _e(n, 0), tol=0.0, source=q),
        Expectation("positive", "T positive (10⁴ samples)", True, tol=1e-9),
        Expectation("witness", "witness found", True, _e(n, 0), params={"x_margin": -0.5}, source=q),
    ])

    t = np.linspace(-2.0, 2.0, 17)
    g = C.GridNonneg(t)
    ex = np.zeros_like(t)
    ex[np.isclose(t, -0.5)] = ex[np.isclose(t, 0.5)] = -np.exp(-1.0)
    ex[np.isclose(t, 0.0)] = 1.0
    u = np.exp(-np.abs(t))
    zero = int(np.flatnonzero(np.isclose(t, 0.0))[0])
    q = '"u(t)=e^{−|t|}", "x(0)=1"'
    out["c0-grid"] = Scenario("c0-grid", g, Identity(t.shape), PointEvaluation(t, zero), u, [
        Expectation("functional", "f(x) = x(0)", 1.0, ex, tol=0.0, source=q),
        Expectation("margin", "margin(x) = −1/e", -np.exp(-1.0), ex, tol=1e-12, source=q),
        Expectation("image_margin", "min node value of T(x)", 0.0, ex, relation="gt", source=q),
        Expectation("refined_min", "min of x + u on 10× refined grid", 0.0, ex, relation="gt",
                    params={"refine": 10, "u_exact": "exp_neg_abs"}, source=q),
        Expectation("positive", "T positive (10⁴ samples)", True, tol=1e-9),
        Expectation("witness", "witness found (Direct, explicit x)", True, ex + u,
                    params={"x_margin": -np.exp(-1.0)}, source=q),
    ], note="the continuum cone has empty interior and no extremals; the witness uses the explicit x")

    n = 4
    q = '"(2x_1, x_2,…, x_n)", "is an automorphism"'
    xs = np.array([1.0, -2.0, 3.0, 0.5])
    out["orthant-automorphism-control"] = Scenario(
        "orthant-automorphism-control", C.Orthant(n), Identity((n,)), DenseCovector(_e(n, 0)), _e(n, 0), [
            Expectation("hypothesis", "u interior", False, params={"flag": "u_interior"},
                        source='"The assumption u∈int(K)... is indispensable"'),
            Expectation("apply", "T(x) = (2x₁, x₂, …)", xs * np.array([2.0, 1, 1, 1]), xs, tol=0.0, source=q),
            Expectation("inverse_matrix", "T⁻¹ = diag(1/2, 1, …, 1)", np.diag([0.5, 1, 1, 1]), tol=0.0, source=q),
            Expectation("positive", "T positive (10⁴ samples)", True, tol=1e-9),
            Expectation("witness", "witness not found over full budget", False, params={"budget": 10_000}, source=q),
        ])

    dhat = np.array([0.0, 0.6, 0.8])
    out["ray-cone-control"] = Scenario(
        "ray-cone-control", C.Ray(3, dhat), Identity((3,)), DenseCovector([1.0, 1.0, 1.0]), dhat, [
            Expectation("hypothesis", "u interior", False, params={"flag": "u_interior"}),
            Expectation("positive", "T positive (10⁴ samples)", True, tol=1e-9),
            Expectation("witness", "witness not found over full budget", False, params={"budget": 10_000},
                        source="ray cone: no interior"),
        ], note="the ray has empty interior, so no witness theorem applies")

    out["nondecomposable-2x2"] = Scenario("nondecomposable-2x2", C.Orthant(2), expectations=[
        Expectation("decompose_2x2", "decompose [[1,3],[2,4]]", "infeasible", np.array([[1.0, 3.0], [2.0, 4.0]]),
                    params={"identity": (6.0, 4.0), "swap": (1.0, 4.0), "grid_min_residual_gt": 0.05},
                    source='"T:=[[1,3],[2,4]] = PD + uvᵀ", "(d₂−3)(d₁−2)=1"'),
    ])
    return out


def run_paper_examples(seed=0, name=None):
    scenarios = golden_scenarios()
    if name is not None:
        if name not in scenarios:
            raise KeyError(name)
        scenarios = {name: scenarios[name]}
    report = Report("golden examples" if name is None else f"example {name}", seed)
    for key in sorted(scenarios):
        report.merge(run_scenario(scenarios[key], seed))
    return report


# ---------------------------------------------------------------------------
# property suite

def default_cones():
    return [
        C.Orthant(4),
        C.Lorentz(3),
        C.Psd(3),
        C.Copositive(3),
        C.Lexicographic(),
        C.Ray(3, [0.0, 0.6, 0.8]),
        C.GridNonneg([0.0, 0.2, 0.4, 0.6, 0.8, 1.0]),
    ]


class _Suite:
    def __init__(self, cone, seed):
        self.cone = cone
        self.name = f"properties {cone.to_text()}"
        self.report = Report(self.name, seed)
        self.seed = seed

    def rng(self, *key):
        return stream(self.seed, "properties", self.cone.to_text(), *key)

    def check(self, assertion, ok, expected="true", measured=None, source=""):
        m = show(bool(ok)) if measured is None else measured
        self.report.checks.append(Check(self.name, assertion, expected, m, bool(ok), source))

    def skip(self, section, why):
        self.report.notes.append(f"{self.name}: {section} skipped ({why})")


def _duality(s):
    cone = s.cone
    if not cone.closed:
        s.skip("duality", "cone is not closed")
        return
    rng = s.rng("duality")
    worst = np.inf
    for _ in range(20):
        f = cone._sample_dual(rng)
        worst = min(worst, cone.check_dual(f, rng)[1])
    s.check("sampled dual functionals are nonnegative on the cone", worst >= -1e-10, ">= -1e-10",
            show(worst), '"x∈K if and only if f(x)≥0"')
    pts = cone.sample(Region.EXTERIOR, rng, 50)
    vals = []
    in_dual = True
    for p in pts:
        sep = cone.separating_functional(p)
        vals.append(sep.functional.eval(p))
        in_dual &= sep.exact and cone.check_dual(sep.functional, rng, 200)[0]
    s.check("separating functionals are strictly negative on exterior points", max(vals) < 0, "< 0",
            show(max(vals)), '"x∈K if and only if f(x)≥0"')
    s.check("separating functionals lie in the dual cone", in_dual)


def _extremals(s):
    cone = s.cone
    rng = s.rng("extremal")
    try:
        ext = cone.sample_extremal(rng, 100)
        cone.is_extremal(ext[0])
    except ConeError as exc:
        s.skip("extremal preservation", type(exc).__name__)
        return
    non = [] if isinstance(cone, C.Ray) else cone.sample(
        Region.INTERIOR if cone.has_interior else Region.CONE, rng, 100)
    pts = list(ext) + list(non)
    autos = [sample_automorphism(cone, rng) for _ in range(0, len(pts), 20)]
    bad = sum(cone.is_extremal(p) != cone.is_extremal(autos[i // 20].apply(p)) for i, p in enumerate(pts))
    s.check("automorphisms preserve extremality (100 extremal, 100 not)", bad == 0, "0 mismatches",
            f"{bad} mismatches", '"x is an extremal of K"')
    s.check("sampled extremals test extremal", all(cone.is_extremal(p) for p in ext))
    if len(non):
        s.check("interior samples test non-extremal", not any(cone.is_extremal(p) for p in non))


def _order_unit(s):
    cone = s.cone
    if not cone.closed or not cone.has_interior:
        s.skip("order unit", "cone is not closed" if not cone.closed else "empty interior")
        return
    rng = s.rng("order-unit")
    src = '"order unit if and only if u∈int(K)"'
    u = cone.sample(Region.INTERIOR, rng)
    dominated = 0
    for x in cone.random_point(rng, 100):
        lam = 1.0
        while lam <= 1e6 and not cone.leq(x, lam * u):
            lam *= 2
        dominated += lam <= 1e6
    s.check("(i) interior u dominates 100 sampled x within λ ≤ 10⁶", dominated == 100, "100",
            str(dominated), src)
    blocked = 0
    bpts = cone.sample(Region.BOUNDARY, rng, 20)
    for b in bpts:
        g = cone.supporting_functional(b).functional
        x = cone.unit()
        if abs(g.eval(b)) <= 1e-9 * max(1.0, cone.point_norm(b)) and g.eval(x) > 0:
            blocked += not any(cone.leq(x, 2.0 ** k * b) for k in range(0, 21))
    s.check("(i) boundary points are not order units (separating direction)", blocked == len(bpts),
            str(len(bpts)), str(blocked), src)
    worst = min(cone._sample_dual(rng).eval(cone.sample(Region.INTERIOR, rng)) for _ in range(50))
    s.check("(ii) f(u) > 0 for f in K′∖{0}, u interior", worst > 0, "> 0", show(worst), '"f(u)>0"')
    us = cone.sample(Region.INTERIOR, rng, 50)
    vs = us + cone.sample(Region.CONE, rng, 50)
    ok = all(m is Membership.INTERIOR for m in cone.memberships(vs))
    s.check("(iii) u ≤ v with u interior gives v interior", ok, source='"v∈int(K)"')
    ok = all(all(m is Membership.INTERIOR for m in cone.memberships(a * us)) for a in (0.5, 2.0, 10.0))
    s.check("(iv) αu interior for α ∈ {0.5, 2, 10}", ok, source='"αu∈int(K)"')
    mism = 0
    pts = np.concatenate([cone.sample(Region.INTERIOR, rng, 50), cone.sample(Region.BOUNDARY, rng, 50)])
    autos = [sample_automorphism(cone, rng) for _ in range(0, len(pts), 10)]
    for i, p in enumerate(pts):
        before = cone.classify(p).region is Membership.INTERIOR
        after = cone.classify(autos[i // 10].apply(p)).region is Membership.INTERIOR
        mism += before != after
    s.check("(v) interior iff image interior under automorphisms", mism == 0, "0 mismatches",
            f"{mism} mismatches", '"S(u)∈int(K) if and only if u∈int(K)"')


def _archimedean(s):
    cone = s.cone
    rng = s.rng("archimedean")
    src = '"nx≤y) ⟹ x≤0"'
    if isinstance(cone, C.Lexicographic):
        x, y = np.array([0.0, 1.0]), np.array([1.0, 0.0])
        holds = all(cone.leq(n * x, y) for n in (1, 10, 10**6, 10**12))
        s.check("order is not Archimedean: n(0,1) ≤ (1,0) for all n while (0,1) ≰ 0",
                holds and not cone.leq(x, np.zeros(2)), source=src)
        return
    failures = 0
    trials = 0
    for y, x in zip(cone.sample(Region.CONE, rng, 30), cone.random_point(rng, 30)):
        if cone.margin(-x) >= -1e-6:
            continue
        trials += 1
        n = 1.0
        while n <= 2.0 ** 40 and cone.leq(n * x, y):
            n *= 2
        failures += n > 2.0 ** 40
    s.check("x ≰ 0 gives some n with nx ≰ y", failures == 0, "0 failures",
            f"{failures} failures in {trials} trials", src)


def run_property_suite(cone, seed=0):
    """Duality, extremal preservation, order-unit and Archimedean checks for one cone."""
    s = _Suite(cone, seed)
    start = time.perf_counter()
    for section in (_duality, _extremals, _order_unit, _archimedean):
        section(s)
    s.report.runtimes[s.name] = time.perf_counter() - start
    return s.report
