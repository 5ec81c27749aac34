"""Geometric validity checks on a coefficient map.

Univalence is decided from the boundary curve: a polynomial that is one-to-one
on the unit circle is univalent on the closed disk, so the test combines a
self-intersection scan of ``f(exp(i theta))`` with its winding degree and the
location of the zeros of ``f'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .config import DEFAULT_CONFIG, QuadratureConfig
from .errors import PreconditionError, ResolutionError
from .series import CoefficientMap, boundary_samples


@dataclass
class UnivalenceReport:
    is_univalent: bool
    boundary_simple: bool
    winding_degree: int
    fprime_interior_zeros: list = field(default_factory=list)
    fprime_boundary_zeros: list = field(default_factory=list)
    samples_used: int = 0
    crossings: int = 0

    @property
    def regular_boundary(self) -> bool:
        return not self.fprime_boundary_zeros


class StarlikeReport(NamedTuple):
    starlike: bool
    min_margin: float
    diagnostic: str = ""


@dataclass
class SICondition:
    sum_n_an: float
    a1_abs: float
    margin: float
    status: str  # "Interior" | "Boundary" | "Outside"


@dataclass
class RegularityReport:
    min_abs_fprime_on_boundary: float
    argmin_theta: float
    cusp_angles: list
    coefficient_bound: float
    regular: bool


# ---------------------------------------------------------------------------
# zeros of f'


def fprime_roots(f: CoefficientMap) -> np.ndarray:
    """All zeros of the polynomial ``f'`` (with multiplicity), Newton-polished."""
    d1 = f.derivative_coefficients(1)
    nz = np.flatnonzero(d1)
    if nz.size == 0 or nz[-1] == 0:
        return np.zeros(0, complex)
    d1 = d1[: nz[-1] + 1]
    roots = np.roots(d1[::-1])
    for _ in range(3):
        d = f.value(roots, 2)
        ok = np.abs(d) > 1e-300
        step = np.zeros_like(roots)
        step[ok] = f.value(roots[ok], 1) / d[ok]
        # multiple roots make the Newton quotient unreliable
        small = np.abs(step) < 1e-6
        roots = np.where(small, roots - step, roots)
    return roots


def classify_fprime_roots(f: CoefficientMap, tol: float):
    """Split the zeros of ``f'`` into interior points and boundary angles."""
    roots = fprime_roots(f)
    r = np.abs(roots)
    interior = [complex(z) for z in roots[r < 1 - tol]]
    boundary = sorted(float(np.angle(z)) for z in roots[np.abs(r - 1) <= tol])
    return interior, boundary


# ---------------------------------------------------------------------------
# boundary self-intersection


def _orient(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _segments_intersect(p1, p2, p3, p4):
    """Vectorised closed-segment intersection test (touching counts)."""
    d1 = _orient(p3.real, p3.imag, p4.real, p4.imag, p1.real, p1.imag)
    d2 = _orient(p3.real, p3.imag, p4.real, p4.imag, p2.real, p2.imag)
    d3 = _orient(p1.real, p1.imag, p2.real, p2.imag, p3.real, p3.imag)
    d4 = _orient(p1.real, p1.imag, p2.real, p2.imag, p4.real, p4.imag)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)

    def on_segment(a, b, c):
        return (
            (np.minimum(a.real, b.real) <= c.real)
            & (c.real <= np.maximum(a.real, b.real))
            & (np.minimum(a.imag, b.imag) <= c.imag)
            & (c.imag <= np.maximum(a.imag, b.imag))
        )

    touch = (
        ((d1 == 0) & on_segment(p3, p4, p1))
        | ((d2 == 0) & on_segment(p3, p4, p2))
        | ((d3 == 0) & on_segment(p1, p2, p3))
        | ((d4 == 0) & on_segment(p1, p2, p4))
    )
    return proper | touch


def _candidate_pairs(a, b, pad):
    """Index pairs (i < j) of segments ``[a_k, b_k]`` whose padded boxes overlap."""
    pad = np.broadcast_to(pad, a.shape)
    xmin = np.minimum(a.real, b.real) - pad
    xmax = np.maximum(a.real, b.real) + pad
    ymin = np.minimum(a.imag, b.imag) - pad
    ymax = np.maximum(a.imag, b.imag) + pad
    order = np.argsort(xmin, kind="stable")
    xs = xmin[order]
    hi = np.searchsorted(xs, xmax[order], side="right")
    pos = np.arange(order.size)
    counts = np.maximum(hi - pos - 1, 0)
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, int), np.zeros(0, int)
    first = np.repeat(pos, counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    second = first + 1 + offsets
    i, j = order[first], order[second]
    keep = (ymin[i] <= ymax[j]) & (ymin[j] <= ymax[i])
    i, j = i[keep], j[keep]
    return np.minimum(i, j), np.maximum(i, j)


def _cyclic_gap(i, j, m):
    d = np.abs(i - j)
    return np.minimum(d, m - d)


def _polyline_self_crossings(w, closed):
    """Number of intersecting non-adjacent segment pairs of a polyline."""
    a = w if closed else w[:-1]
    b = np.roll(w, -1) if closed else w[1:]
    m = a.size
    i, j = _candidate_pairs(a, b, 0.0)
    gap = _cyclic_gap(i, j, m) if closed else np.abs(i - j)
    sel = gap > 1
    i, j = i[sel], j[sel]
    if i.size == 0:
        return 0
    hit = _segments_intersect(a[i], b[i], a[j], b[j])
    return int(np.count_nonzero(hit))


def _refined_window(f, theta0, k_lo, k_hi, m, factor):
    """Boundary points on segments ``k_lo .. k_hi`` resampled ``factor`` times finer."""
    n = (k_hi - k_lo + 1) * factor
    th = theta0 + 2 * np.pi * (k_lo + np.arange(n + 1) / factor) / m
    return f.value(np.exp(1j * th))


def _confirm_pair(f, i, j, m, factor):
    """Re-test a close segment pair on a locally refined curve."""
    gap = min(abs(i - j), m - abs(i - j))
    if gap <= 6:
        # one contiguous stretch of the curve
        lo = i if (j - i) % m == gap else j
        w = _refined_window(f, 0.0, lo - 1, lo + gap + 1, m, factor)
        return _polyline_self_crossings(w, closed=False) > 0
    wa = _refined_window(f, 0.0, i - 1, i + 1, m, factor)
    wb = _refined_window(f, 0.0, j - 1, j + 1, m, factor)
    ia, ib = np.meshgrid(np.arange(wa.size - 1), np.arange(wb.size - 1), indexing="ij")
    ia, ib = ia.ravel(), ib.ravel()
    hit = _segments_intersect(wa[ia], wa[ia + 1], wb[ib], wb[ib + 1])
    return bool(np.any(hit))


def boundary_crossings(
    f: CoefficientMap, samples: int, refine_factor: int = 16, stop_at_first: bool = False
) -> int:
    """Count self-crossings of the sampled boundary curve.

    Pairs of non-adjacent segments that intersect, or that pass within a few
    segment lengths of each other away from their index neighbourhood, are
    re-examined on a ``refine_factor`` times finer local sampling; only
    crossings that survive refinement are counted. With ``stop_at_first`` the
    scan ends at the first confirmed crossing.
    """
    _, _, w = boundary_samples(f, samples)
    step = np.abs(np.diff(np.append(w, w[0])))
    scale_ = float(np.max(np.abs(w))) or 1.0
    if np.any(step <= 1e-15 * scale_):
        raise ResolutionError(
            f"two consecutive boundary samples coincide at M={samples}; increase boundary_samples"
        )
    a, b = w, np.roll(w, -1)
    # each box grows by its own segment length: neighbours at index gap > 3
    # overlap only where the curve folds back towards itself
    i, j = _candidate_pairs(a, b, step)
    gap = _cyclic_gap(i, j, samples)
    sel = gap > 1
    i, j = i[sel], j[sel]
    if i.size == 0:
        return 0
    hit = _segments_intersect(a[i], b[i], a[j], b[j])
    # padded near-misses far apart in index could hide a small loop
    near = ~hit & (_cyclic_gap(i, j, samples) > 3)
    check = hit | near
    count = 0
    for ii, jj in zip(i[check], j[check]):
        if _confirm_pair(f, int(ii), int(jj), samples, refine_factor):
            count += 1
            if stop_at_first:
                break
    return count


def winding_degree(f: CoefficientMap, point: complex, samples: int) -> int:
    """Winding number of ``f(exp(i theta))`` about ``point``."""
    _, _, w = boundary_samples(f, samples)
    d = w - point
    turn = np.angle(np.roll(d, -1) / d)
    return int(round(float(np.sum(turn)) / (2 * np.pi)))


def winding_numbers(boundary: np.ndarray, points) -> np.ndarray:
    """Winding numbers of a closed sampled curve about many points."""
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    nxt = np.roll(boundary, -1)
    out = np.empty(pts.size, dtype=int)
    for k, p in enumerate(pts):
        turn = np.angle((nxt - p) / (boundary - p))
        out[k] = int(round(float(np.sum(turn)) / (2 * np.pi)))
    return out


def check_univalent(f: CoefficientMap, config: QuadratureConfig = DEFAULT_CONFIG) -> UnivalenceReport:
    """Decide univalence of ``f`` on the closed unit disk.

    Boundary zeros of ``f'`` do not break univalence; they are reported so that
    callers can flag the boundary as irregular (cusps).
    """
    m = config.boundary_samples
    interior, boundary = classify_fprime_roots(f, config.root_tol)
    crossings = boundary_crossings(f, m, config.refine_factor, stop_at_first=True)
    degree = winding_degree(f, f.q, m)
    simple = crossings == 0
    return UnivalenceReport(
        is_univalent=simple and degree == 1 and not interior,
        boundary_simple=simple,
        winding_degree=degree,
        fprime_interior_zeros=interior,
        fprime_boundary_zeros=boundary,
        samples_used=m,
        crossings=crossings,
    )


def check_starlike(f: CoefficientMap, config: QuadratureConfig = DEFAULT_CONFIG) -> StarlikeReport:
    """Starlikeness about ``q = f(0)`` via ``min Re(z f'(z) / (f(z) - q))`` on the circle.

    ``z f'/(f - q)`` is analytic in the disk for univalent ``f``, so its real
    part attains its minimum on the boundary.
    """
    _, z, w = boundary_samples(f, config.boundary_samples)
    d = w - f.q
    scale_ = float(np.max(np.abs(d)))
    if np.any(np.abs(d) <= 1e-14 * scale_):
        k = int(np.argmin(np.abs(d)))
        return StarlikeReport(False, float("-inf"), f"f(z) = q at boundary angle {np.angle(z[k]):.6f}")
    vals = (z * f.value(z, 1) / d).real
    k = int(np.argmin(vals))
    margin = float(vals[k])
    # polish the grid minimum so the margin does not depend on the grid phase
    h = 2 * np.pi / config.boundary_samples
    t0 = float(np.angle(z[k]))

    def ratio(t):
        u = np.exp(1j * t)
        return float((u * f.value(u, 1) / (f.value(u) - f.q)).real)

    res = minimize_scalar(ratio, bounds=(t0 - h, t0 + h), method="bounded", options={"xatol": 1e-12})
    margin = min(margin, float(res.fun))
    return StarlikeReport(margin > 0, margin)


def check_S_I(f, config: QuadratureConfig = DEFAULT_CONFIG) -> SICondition:
    """Coefficient condition ``sum_{n>=3} n |a_n|`` against ``|a_1|``.

    Only meaningful for a map centred at a critical point (``a_2 = 0``).
    """
    coeffs = f.coefficients
    a2 = coeffs[2] if coeffs.size > 2 else 0
    if abs(a2) > config.recenter_tol:
        raise PreconditionError(f"S_I condition needs a_2 = 0, got |a_2| = {abs(a2):.3e}")
    n = np.arange(coeffs.size)
    s = float(np.sum(n[3:] * np.abs(coeffs[3:])))
    a1 = float(abs(coeffs[1]))
    margin = a1 - s
    if margin > config.status_tol:
        status = "Interior"
    elif abs(margin) <= config.status_tol:
        status = "Boundary"
    else:
        status = "Outside"
    return SICondition(s, a1, margin, status)


def boundary_regularity(f: CoefficientMap, config: QuadratureConfig = DEFAULT_CONFIG) -> RegularityReport:
    """Smallest ``|f'|`` on the unit circle and the cusp angles."""
    theta, z, _ = boundary_samples(f, config.boundary_samples)
    mod = np.abs(f.value(z, 1))
    k = int(np.argmin(mod))
    best, best_theta = float(mod[k]), float(theta[k])
    h = 2 * np.pi / config.boundary_samples
    res = minimize_scalar(
        lambda t: abs(f.value(np.exp(1j * t), 1)),
        bounds=(best_theta - h, best_theta + h),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if res.fun < best:
        best, best_theta = float(res.fun), float(res.x)
    _, cusps = classify_fprime_roots(f, config.root_tol)
    n = np.arange(f.coefficients.size)
    bound = float(abs(f.a1) - np.sum(n[2:] * np.abs(f.coefficients[2:])))
    return RegularityReport(best, best_theta, cusps, bound, regular=not cusps)
