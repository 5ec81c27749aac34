"""First-kind / second-kind classification of ``f(D)``.

The sign invariant at a critical point ``q = f(0)`` (``a_2 = 0``, ``a_1 > 0``)
is computed two ways:

* ``D_series``: ``-|a_1|^2 + sum_{n>=3} n^2/(n-2) |a_n|^2`` (exact for the
  truncated map);
* ``A_integral``: the regularized singular integral

      pi A(q) = lim_{eps->0} int_{Omega - B_eps(q)} (exp(8 pi (R(x,q) - gamma(q))) - 1) / |x-q|^4
                - int_{Omega^c} |x-q|^-4,

  evaluated by quadrature.

The two agree as ``D = a_1**4 * A``; the fourth power makes both sides scale
like area under dilation, and reduces to ``D = A`` for ``a_1 = 1``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_CONFIG, QuadratureConfig
from .errors import AccuracyError, ConvergenceError, FirstKindError, PreconditionError
from .geometry import boundary_regularity, check_univalent
from .robin import MAX, CriticalPointReport, count_maxima, find_critical_points
from .series import CoefficientMap, NormalizedMap, as_normalized, recenter

log = logging.getLogger(__name__)

FIRST_KIND = "FirstKind"
SECOND_KIND = "SecondKind"
BOUNDARY_CASE = "BoundaryCase"
INAPPLICABLE = "Inapplicable"

# radial panel edges for the interior integral; nodes cluster towards |z| = 1
_PANEL_EDGES = (0.3, 0.6, 0.8, 0.9, 0.95, 0.98, 1.0)


@dataclass
class ClassificationResult:
    kind: str
    D_value: float
    A_value: float | None = None
    critical_points: list = field(default_factory=list)
    maxima_count: int = 0
    regular_boundary: bool = True
    univalent: bool = True
    diagnostics: str = ""
    center: complex | None = None
    a1: float | None = None

    @property
    def applicable(self) -> bool:
        """Whether the verdict is backed by the regular-domain criterion."""
        return self.univalent and self.regular_boundary

    def summary(self) -> str:
        text = self.kind
        if self.univalent and not self.regular_boundary:
            text += " (Theorem A inapplicable: irregular boundary)"
        return text

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "D": self.D_value,
            "A": self.A_value,
            "maxima_count": self.maxima_count,
            "univalent": self.univalent,
            "regular_boundary": self.regular_boundary,
            "applicable": self.applicable,
            "center": None if self.center is None else [self.center.real, self.center.imag],
            "a1": self.a1,
            "critical_points": [c.to_dict() for c in self.critical_points],
            "diagnostics": self.diagnostics,
        }


def _check_critical(coeffs, tol):
    a2 = coeffs[2] if coeffs.size > 2 else 0
    if abs(a2) > tol:
        raise PreconditionError(
            f"the invariant needs a map centred at a critical point (|a_2| = {abs(a2):.3e} > {tol:.0e})"
        )


def D_series(f, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``-|a_1|^2 + sum_{n>=3} n^2/(n-2) |a_n|^2`` for a map with ``a_2 = 0``."""
    a = f.coefficients
    _check_critical(a, config.recenter_tol)
    n = np.arange(3, a.size)
    tail = float(np.sum(n**2 / (n - 2) * np.abs(a[3:]) ** 2)) if a.size > 3 else 0.0
    return float(tail - abs(a[1]) ** 2)


def _interior_integral(f: CoefficientMap, n_angles: int, n_radial: int) -> float:
    """``int_D [1/(a_1^4 |z|^4) - 1/|f(z)-q|^4] |f'(z)|^2 dA(z)`` on a polar grid.

    With ``u = (f(z)-q)/(a_1 z) = 1 + w`` the integrand is written as
    ``|f'|^2 (|u|^4 - 1) / (a_1^4 |z|^4 |u|^4)`` and ``|u|^2 - 1 = 2 Re w + |w|^2``
    is formed from ``w`` directly, so no cancellation occurs near ``z = 0``.
    Equally spaced angles integrate the trace-free ``cos 2 theta / r^2`` part
    to zero exactly, leaving a radial integrand that is ``O(r)`` at the origin.
    """
    a = f.coefficients
    a1 = a[1].real
    w_coef = np.concatenate([[0], a[2:] / a1])
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    ring = np.exp(1j * theta)
    x, wts = np.polynomial.legendre.leggauss(n_radial)
    total = 0.0
    lo = 0.0
    for hi in _PANEL_EDGES:
        r = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        z = r[:, None] * ring[None, :]
        w = np.polynomial.polynomial.polyval(z, w_coef)
        u2m1 = 2 * w.real + np.abs(w) ** 2
        u2 = 1 + u2m1
        fp2 = np.abs(f.value(z, 1)) ** 2
        h = fp2 * u2m1 * (u2 + 1) / (a1**4 * r[:, None] ** 4 * u2**2)
        angular = h.mean(axis=1) * 2 * np.pi * r
        total += 0.5 * (hi - lo) * float(np.dot(wts, angular))
        lo = hi
    return total


def _exterior_integral(f: CoefficientMap, samples: int) -> float:
    """``int_{Omega^c} |x - q|^-4 dx`` as a contour integral over the boundary.

    ``|x-q|^-4 dA = d(-dtheta / (2 r^2))`` in polar coordinates about ``q``;
    the form is smooth on the closed complement and vanishes at infinity, so
    Stokes gives ``int_{boundary} dtheta / (2 r^2)`` with the boundary
    counter-clockwise. The periodic trapezoid rule is spectrally accurate here.
    """
    z = np.exp(2j * np.pi * np.arange(samples) / samples)
    d = f.value(z) - f.q
    integrand = (z * f.value(z, 1) / d).real / (2 * np.abs(d) ** 2)
    return float(integrand.mean() * 2 * np.pi)


def A_integral(f, config: QuadratureConfig = DEFAULT_CONFIG, assume_univalent: bool = False) -> float:
    """Regularized integral ``A(q)`` at ``q = f(0)``, refined until stable.

    Level ``k`` uses ``quad_base_angles * 2**k`` angles and
    ``quad_base_radial * 2**k`` Gauss nodes per radial panel. Consecutive
    levels must agree to ``quad_tol``; otherwise :class:`AccuracyError`
    carries both estimates.
    """
    nm = as_normalized(f) if isinstance(f, CoefficientMap) else f
    g = nm.map
    _check_critical(g.coefficients, config.recenter_tol)
    if not assume_univalent and not check_univalent(g, config).is_univalent:
        raise PreconditionError("the regularized integral is only defined for univalent maps")
    values = []
    for level in range(config.quad_levels):
        n_ang = config.quad_base_angles * 2**level
        n_rad = config.quad_base_radial * 2**level
        inner = _interior_integral(g, n_ang, n_rad)
        outer = _exterior_integral(g, max(config.boundary_samples, n_ang))
        values.append((inner - outer) / math.pi)
    if len(values) > 1 and abs(values[-1] - values[-2]) > config.quad_tol:
        raise AccuracyError(
            f"regularized integral not converged: {values[-2]!r} vs {values[-1]!r}",
            coarse=values[-2],
            fine=values[-1],
        )
    return values[-1]


def cross_check(D: float, A: float, a1: float, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Mismatch ``|D - a_1^4 A|``; raises when above the cross-check tolerance."""
    err = abs(D - a1**4 * A)
    tol = max(config.cross_check_abs, config.cross_check_rel * abs(D))
    if err > tol:
        raise AccuracyError(f"series and integral disagree: D = {D!r}, a1^4 A = {a1**4 * A!r}", D, A)
    return err


def normalize_at(f: CoefficientMap, point: CriticalPointReport, config=DEFAULT_CONFIG) -> NormalizedMap:
    if point.z_disk == 0:
        return as_normalized(f)
    return recenter(f, point.z_disk, config)


def decide(maxima: int, D: float, sign_tol: float) -> str:
    """The decision rule: unique maximum and sign of ``D``."""
    if maxima >= 2:
        return SECOND_KIND
    if D < -sign_tol:
        return FIRST_KIND
    if D > sign_tol:
        return SECOND_KIND
    return BOUNDARY_CASE


def _stage(name, func, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except FirstKindError as exc:
        exc.args = (f"[{name}] {exc.args[0] if exc.args else ''}",) + exc.args[1:]
        raise


def classify(f: CoefficientMap, config: QuadratureConfig = DEFAULT_CONFIG) -> ClassificationResult:
    """Classify ``f(D)`` as FirstKind, SecondKind, BoundaryCase or Inapplicable.

    Non-univalent maps are Inapplicable. Univalent maps whose boundary has
    cusps (zeros of ``f'`` on the circle) still receive the rule's verdict,
    with ``regular_boundary = False`` and a diagnostic noting that the
    criterion does not cover them.
    """
    uni = _stage("univalence", check_univalent, f, config)
    reg = _stage("regularity", boundary_regularity, f, config)
    notes = []
    if not uni.is_univalent:
        D = D_series(f, config) if abs(f.a2) <= config.recenter_tol else float("nan")
        notes.append(
            f"map is not univalent (winding degree {uni.winding_degree}, "
            f"{len(uni.fprime_interior_zeros)} interior zero(s) of f', simple boundary: {uni.boundary_simple})"
        )
        return ClassificationResult(
            kind=INAPPLICABLE,
            D_value=D,
            regular_boundary=reg.regular,
            univalent=False,
            diagnostics="; ".join(notes),
        )

    points = _stage("critical points", find_critical_points, f, config)
    maxima = _stage("critical points", count_maxima, f, config, points)
    top = next((p for p in points if p.kind == MAX), None)
    if top is None:
        raise ConvergenceError("[critical points] no maximum of the Robin function was found")
    nm = _stage("recentering", normalize_at, f, top, config)
    D = _stage("series", D_series, nm, config)
    A = None
    if config.cross_check:
        A = _stage("integral", A_integral, nm, config, assume_univalent=True)
        err = _stage("cross-check", cross_check, D, A, nm.a1, config)
        notes.append(f"|D - a1^4 A| = {err:.3e}")
    kind = decide(maxima, D, config.sign_tol)
    if not reg.regular:
        angles = ", ".join(f"{a:.6f}" for a in reg.cusp_angles)
        notes.append(f"Theorem A inapplicable: irregular boundary (f' = 0 at angles {angles})")
    if top.degenerate:
        notes.append("the top maximum is degenerate")
    return ClassificationResult(
        kind=kind,
        D_value=D,
        A_value=A,
        critical_points=points,
        maxima_count=maxima,
        regular_boundary=reg.regular,
        univalent=True,
        diagnostics="; ".join(notes),
        center=top.w_domain,
        a1=nm.a1,
    )
