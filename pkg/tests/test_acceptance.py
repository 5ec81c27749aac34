"""Acceptance criteria, one test per criterion.

Each test evaluates every sub-check of its criterion at the stated tolerance,
records a single PASS/FAIL line (printed in the pytest terminal summary and
when this file is run as a script) and then asserts.
"""

import time
import warnings

import numpy as np
import pytest

from firstkind.catalog import appendix3, disk, f3, nonunivalent
from firstkind.classify import BOUNDARY_CASE, FIRST_KIND, SECOND_KIND, A_integral, D_series, classify
from firstkind.config import QuadratureConfig
from firstkind.deformations import builtin_family, d_infty, scaling_path, sweep, threshold_bisect
from firstkind.geometry import boundary_regularity, check_S_I, check_starlike, check_univalent, fprime_roots
from firstkind.greens import green, hadamard_check
from firstkind.robin import count_maxima, find_critical_points
from firstkind.series import CoefficientMap, RecenteringTailWarning, boundary_area, recenter, rotate, scale, series_area

RESULTS = {}


class Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.checks = number, title, []

    def check(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    def finish(self):
        failed = [c for c in self.checks if not c[1]]
        status = "PASS" if not failed else "FAIL"
        extra = "" if not failed else " | failed: " + "; ".join(f"{n} ({d})" for n, _, d in failed)
        line = f"{status} criterion {self.number}: {self.title} [{len(self.checks) - len(failed)}/{len(self.checks)} checks]{extra}"
        RESULTS[self.number] = line
        print(line)
        assert not failed, line


def test_criterion_1_disk_exactness():
    c = Criterion(1, "disk exactness")
    t0 = time.perf_counter()
    res = classify(disk(), QuadratureConfig(cross_check=True))
    elapsed = time.perf_counter() - t0
    c.check("kind FirstKind", res.kind == FIRST_KIND, res.kind)
    c.check("D_series == -1 exactly", D_series(disk()) == -1.0, repr(D_series(disk())))
    A = A_integral(disk())
    c.check("A_integral = -1 within 1e-6", abs(A + 1) <= 1e-6, repr(A))
    pts = res.critical_points
    c.check("exactly one critical point", len(pts) == 1, str(len(pts)))
    c.check("gradient residual < 1e-10", pts and pts[0].gradient_residual < 1e-10, repr(pts[0].gradient_residual))
    c.check("runtime < 1 s", elapsed < 1.0, f"{elapsed:.3f} s")
    c.finish()


def test_criterion_2_f3_boundary_case():
    c = Criterion(2, "f3 boundary case")
    f = f3()
    D = D_series(f)
    c.check("D_series = 0 to 1e-12", abs(D) <= 1e-12, repr(D))
    s = check_S_I(f).sum_n_an
    c.check("sum n|a_n| = 1 exactly", s == 1.0, repr(s))
    roots = np.sort_complex(fprime_roots(f))
    c.check("f' zeros at +-i within 1e-6", np.allclose(roots, [-1j, 1j], atol=1e-6) and roots.size == 2, str(roots))
    images = np.sort_complex(f(roots))
    c.check("cusp images at +-2i/3 within 1e-6", np.allclose(images, [-2j / 3, 2j / 3], atol=1e-6), str(images))
    res = classify(f)
    c.check("verdict BoundaryCase", res.kind == BOUNDARY_CASE, res.kind)
    c.check("regular_boundary false", res.regular_boundary is False, str(res.regular_boundary))
    c.finish()


def test_criterion_3_appendix3_reproduction():
    c = Criterion(3, "appendix3 family reproduction")
    for t in (0.5, 1.0, 2.0):
        D = D_series(appendix3(t))
        c.check(f"D({t}) = 13t^2/27 - 1 to 1e-12", abs(D - (13 * t**2 / 27 - 1)) <= 1e-12, repr(D))
    for t in (0.5, 1.0):
        f = appendix3(t)
        err = abs(D_series(f) - abs(f.a1) * A_integral(f))
        c.check(f"|D - a1 A| < 1e-4 at t = {t}", err < 1e-4, f"{err:.2e}")
    fam = builtin_family("appendix3")
    t_star = threshold_bisect(fam, "D", (1.0, 2.0), tol=1e-8).t_star
    c.check("bisection t* = 1.44115343 +- 1e-6", abs(t_star - 1.44115343) <= 1e-6, f"{t_star:.10f}")
    c.check("t* = 3 sqrt(3/13)", abs(t_star - 3 * np.sqrt(3 / 13)) <= 1e-6, f"{t_star:.10f}")
    k12, k15 = classify(appendix3(1.2)).kind, classify(appendix3(1.5)).kind
    c.check("t = 1.2 FirstKind", k12 == FIRST_KIND, k12)
    c.check("t = 1.5 SecondKind", k15 == SECOND_KIND, k15)
    m15, m24 = count_maxima(appendix3(1.5)), count_maxima(appendix3(2.4))
    c.check("one maximum at t = 1.5", m15 == 1, str(m15))
    c.check("two maxima at t = 2.4", m24 == 2, str(m24))
    c.check("starlike at t = 1.5", check_starlike(appendix3(1.5)).starlike, "")
    c.check("not starlike at t = 2.5", not check_starlike(appendix3(2.5)).starlike, "")
    t0 = time.perf_counter()
    rows = sweep(fam, np.linspace(0, 2.5, 26))
    elapsed = time.perf_counter() - t0
    c.check("26-point sweep completes", len(rows) == 26 and all(r.status == "ok" for r in rows), "")
    c.check("sweep under 60 s", elapsed < 60, f"{elapsed:.2f} s")
    c.finish()


def test_criterion_4_nonunivalence_detection():
    c = Criterion(4, "non-univalence detection")
    for t in (0.70, 0.75, 0.80):
        c.check(f"t = {t} not univalent", not check_univalent(nonunivalent(t)).is_univalent, "")
    c.check("t = 0.5 univalent", check_univalent(nonunivalent(0.5)).is_univalent, "")
    D = D_series(nonunivalent(0.8))
    c.check("D(0.8) = 1.5 t^2 - 1 < 0", abs(D - (1.5 * 0.64 - 1)) <= 1e-12 and D < 0, repr(D))
    c.finish()


def test_criterion_5_scaling_path():
    c = Criterion(5, "scaling path property")
    grid = np.linspace(0, 1, 21)
    for name, base in (("f3", f3()), ("appendix3(1.2)", appendix3(1.2))):
        fam = scaling_path(base)
        kinds = [classify(fam.at(t)).kind for t in grid]
        c.check(f"{name}: verdict in {{FirstKind, BoundaryCase}}", all(k in (FIRST_KIND, BOUNDARY_CASE) for k in kinds), str(set(kinds)))
        mins = [boundary_regularity(fam.at(t)).min_abs_fprime_on_boundary for t in grid if t <= 0.99]
        c.check(f"{name}: min |f'| > 0 for t <= 0.99", min(mins) > 0, f"{min(mins):.3e}")
        d = np.array([d_infty(fam.at(t)) for t in grid])
        jump = float(np.max(np.abs(np.diff(d))))
        k = int(np.argmax(np.abs(np.diff(d))))
        c.check(
            f"{name}: adjacent d_infty change < 0.05",
            jump < 0.05,
            f"max change {jump:.4f} between t = {grid[k]:.2f} and {grid[k + 1]:.2f}",
        )
    c.finish()


def _random_S_I_map(rng, degree, with_a2):
    """Polynomial with sum_{n>=2} n|a_n| (or n >= 3 when a_2 = 0) below |a_1|."""
    a1 = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform())
    raw = rng.normal(size=degree - 1) + 1j * rng.normal(size=degree - 1)
    if not with_a2:
        raw[0] = 0
    n = np.arange(2, degree + 1)
    frac = rng.uniform(0.05, 0.999)
    tail = raw * frac * abs(a1) / np.sum(n * np.abs(raw))
    q = rng.normal() + 1j * rng.normal()
    return CoefficientMap(np.concatenate([[q, a1], tail]))


def test_criterion_6_recentering_invariant():
    c = Criterion(6, "recentering invariant")
    rng = np.random.default_rng(6)
    worst = 0.0
    verdict_ok = True
    for _ in range(20):
        f = _random_S_I_map(rng, int(rng.integers(3, 7)), with_a2=True)
        pts = find_critical_points(f)
        top = pts[0]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RecenteringTailWarning)
            nm = recenter(f, top.z_disk)
        worst = max(worst, abs(nm.a2))
        kind = classify(f).kind
        for alpha in (0.4, 2.1):
            verdict_ok &= classify(rotate(f, alpha)).kind == kind
        for delta in (0.5, 2.0, 10.0):
            verdict_ok &= classify(scale(f, delta)).kind == kind
    c.check("|a2| < 1e-8 after recentering (20 maps)", worst < 1e-8, f"worst {worst:.2e}")
    c.check("verdict invariant under rotation and scaling", verdict_ok, "")
    c.finish()


def test_criterion_7_S_I_sufficiency():
    c = Criterion(7, "S_I sufficiency")
    rng = np.random.default_rng(7)
    bad = []
    count = 0
    for k in range(30):
        f = _random_S_I_map(rng, int(rng.integers(3, 9)), with_a2=False)
        if check_S_I(f).status != "Interior":
            continue
        count += 1
        res = classify(f)
        star = check_starlike(f).starlike
        if not (res.kind == FIRST_KIND and res.D_value < 0 and star):
            bad.append((k, res.kind, res.D_value, star))
    c.check("generated Interior maps", count >= 25, str(count))
    c.check("all FirstKind with D < 0 and starlike", not bad, str(bad[:3]))
    c.finish()


def test_criterion_8_green_and_hadamard():
    c = Criterion(8, "Green's function and Hadamard formula")
    rng = np.random.default_rng(8)
    f = appendix3(1.0)
    t0 = time.perf_counter()
    z = np.sqrt(rng.uniform(0, 0.9, (50, 2))) * np.exp(2j * np.pi * rng.uniform(size=(50, 2)))
    sym = max(abs(green(f, a, b).G - green(f, b, a).G) for a, b in f(z))
    t_sym = time.perf_counter() - t0
    c.check("G symmetric to 1e-10 on 50 pairs", sym <= 1e-10, f"{sym:.2e}")
    c.check("symmetry runtime < 10 s", t_sym < 10, f"{t_sym:.2f} s")
    x = np.sqrt(rng.uniform(0.01, 0.95, 50)) * np.exp(2j * np.pi * rng.uniform(size=50))
    rmax = max(abs(green(disk(), xi, 0).R) for xi in x)
    c.check("R(x, 0) = 0 on the unit disk to 1e-12", rmax <= 1e-12, f"{rmax:.2e}")
    for name, t, a, b in (("dilation", 0.5, 0.2, -0.3), ("appendix3", 0.5, 0.1, 0.2j)):
        t0 = time.perf_counter()
        res = hadamard_check(builtin_family(name), t, a, b)
        el = time.perf_counter() - t0
        c.check(f"Hadamard {name}: rel_err < 1e-3", res.rel_err < 1e-3, f"{res.rel_err:.2e}")
        c.check(f"Hadamard {name}: runtime < 10 s", el < 10, f"{el:.2f} s")
    rho = 1.5
    h = 1e-6

    def g(r):
        return -np.log(abs(r * (0.2 + 0.3) / (r**2 + 0.3 * 0.2))) / (2 * np.pi)

    exact = (g(rho + h) - g(rho - h)) / (2 * h)
    res = hadamard_check(builtin_family("dilation"), 0.5, 0.2, -0.3)
    c.check("dilation matches closed-form disk derivative", abs(res.rhs_integral - exact) < 1e-3 * abs(exact), f"{res.rhs_integral!r} vs {exact!r}")
    c.finish()


def test_criterion_9_area_theorem():
    c = Criterion(9, "area theorem cross-check")
    maps = [disk(), disk(2.0), f3()]
    maps += [appendix3(t) for t in np.linspace(0, 2.5, 6)]
    maps += [nonunivalent(t) for t in (0.5, 0.75, 1.0)]
    worst = max(abs(series_area(f) - boundary_area(f, 4096)) for f in maps)
    c.check("pi sum n|a_n|^2 vs boundary quadrature to 1e-6", worst <= 1e-6, f"worst {worst:.2e}")
    c.finish()


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
