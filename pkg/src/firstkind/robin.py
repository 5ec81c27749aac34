"""Robin function of ``f(D)`` in disk coordinates and its critical points.

With ``w = f(z)`` the Robin function is

    gamma(w) = log((1 - |z|^2) |f'(z)|) / (2 pi),

and its Wirtinger derivative in the disk variable is

    d gamma / dz = (f''(z)/f'(z) - 2 conj(z) / (1 - |z|^2)) / (4 pi).

Critical points of ``gamma`` on the domain correspond one-to-one to zeros of
this derivative, because ``f`` is conformal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, QuadratureConfig
from .errors import (
    ConvergenceError,
    IndeterminateCountError,
    OutOfDomainError,
    SingularGradientError,
)
from .series import CoefficientMap

log = logging.getLogger(__name__)

FOUR_PI = 4.0 * np.pi
MAX = "Max"
MIN = "Min"
SADDLE = "Saddle"
DEGENERATE = "Degenerate"


@dataclass
class CriticalPointReport:
    z_disk: complex
    w_domain: complex
    gamma_value: float
    gradient_residual: float
    kind: str
    hessian_eigenvalues: tuple
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "z_disk": [self.z_disk.real, self.z_disk.imag],
            "w_domain": [self.w_domain.real, self.w_domain.imag],
            "gamma": self.gamma_value,
            "gradient_residual": self.gradient_residual,
            "kind": self.kind,
            "hessian_eigenvalues": list(self.hessian_eigenvalues),
            "degenerate": self.degenerate,
        }


def _interior(z):
    if np.any(np.abs(z) >= 1):
        raise OutOfDomainError("the Robin function is defined on the open unit disk only")


def robin_value(f: CoefficientMap, z):
    """``log((1 - |z|^2) |f'(z)|) / (2 pi)``; ``-inf`` where ``f'`` vanishes."""
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    _interior(z)
    d = np.abs(f.value(z, 1))
    with np.errstate(divide="ignore"):
        out = np.log((1 - np.abs(z) ** 2) * d) / (2 * np.pi)
    if np.any(d == 0):
        log.warning("f' vanishes at %d evaluation point(s); Robin value is -inf", int(np.sum(d == 0)))
    return float(out) if scalar else out


def _scaled_gradient(f, z):
    """``4 pi`` times the Wirtinger derivative; no checks."""
    return f.value(z, 2) / f.value(z, 1) - 2 * np.conj(z) / (1 - np.abs(z) ** 2)


def robin_gradient(f: CoefficientMap, z):
    """Wirtinger derivative ``d gamma / dz`` at disk points."""
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    _interior(z)
    if np.any(f.value(z, 1) == 0):
        raise SingularGradientError("f' vanishes; the Robin gradient is singular there")
    out = _scaled_gradient(f, z) / FOUR_PI
    return complex(out) if scalar else out


def real_gradient(f: CoefficientMap, z):
    """``(d gamma/dx, d gamma/dy)`` from the Wirtinger derivative."""
    g = robin_gradient(f, z)
    return np.array([2 * np.real(g), -2 * np.imag(g)])


def robin_hessian(f: CoefficientMap, z: complex, step: float = 1e-5) -> np.ndarray:
    """Real 2x2 Hessian of ``gamma`` by central differences of the analytic gradient."""
    z = complex(z)
    gx = (real_gradient(f, z + step) - real_gradient(f, z - step)) / (2 * step)
    gy = (real_gradient(f, z + 1j * step) - real_gradient(f, z - 1j * step)) / (2 * step)
    h = np.column_stack([gx, gy])
    return 0.5 * (h + h.T)


def _newton_step(f, z, g):
    """Newton correction for the non-holomorphic equation ``g(z) = 0``.

    ``g = F(z) - 2 conj(z)/(1-|z|^2)`` with ``F = f''/f'``; its derivatives are
    ``g_z = F' - 2 conj(z)^2/(1-|z|^2)^2`` and ``g_zbar = -2/(1-|z|^2)^2``.
    """
    d1 = f.value(z, 1)
    big_f = f.value(z, 2) / d1
    s = 1 - np.abs(z) ** 2
    a = f.value(z, 3) / d1 - big_f**2 - 2 * np.conj(z) ** 2 / s**2
    b = -2 / s**2
    det = np.abs(a) ** 2 - b**2
    with np.errstate(divide="ignore", invalid="ignore"):
        return (-g * np.conj(a) + b * np.conj(g)) / det


def _residual(f, z):
    with np.errstate(divide="ignore", invalid="ignore"):
        g = _scaled_gradient(f, z)
    r = np.abs(g) / FOUR_PI
    return g, np.where(np.isfinite(r), r, np.inf)


def newton_solve(f: CoefficientMap, seeds, config: QuadratureConfig = DEFAULT_CONFIG):
    """Damped Newton on ``d gamma/dz = 0`` from many seeds at once.

    Returns final points and residuals. Each step is halved up to
    ``config.newton_halvings`` times until the residual decreases; once below
    ``newton_tol`` the iteration keeps polishing while the residual still
    drops, which tightens clusters at degenerate critical points.
    """
    z = np.array(seeds, dtype=complex)
    g, r = _residual(f, z)
    alive = np.isfinite(r)
    for _ in range(config.newton_max_iter):
        if not np.any(alive):
            break
        idx = np.flatnonzero(alive)
        step = _newton_step(f, z[idx], g[idx])
        bad = ~np.isfinite(step)
        step[bad] = 0
        accepted = np.zeros(idx.size, bool)
        lam = 1.0
        for _ in range(config.newton_halvings + 1):
            todo = ~accepted & ~bad
            if not np.any(todo):
                break
            zt = z[idx[todo]] + lam * step[todo]
            inside = np.abs(zt) < 1 - 1e-9
            gt, rt = _residual(f, np.where(inside, zt, 0))
            ok = inside & (rt < r[idx[todo]])
            sel = idx[todo][ok]
            z[sel], g[sel], r[sel] = zt[ok], gt[ok], rt[ok]
            tmp = accepted[todo]
            tmp[ok] = True
            accepted[todo] = tmp
            lam *= 0.5
        # no decrease possible: converged to roundoff or stuck
        alive[idx[~accepted]] = False
    return z, r


def _seed_grid(config):
    radii = np.linspace(0.05, 0.95, config.seed_radii)
    angles = 2 * np.pi * np.arange(config.seed_angles) / config.seed_angles
    seeds = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    return np.concatenate([[0j], seeds])


def _probe_kind(f, z0, gamma0, radius):
    """Resolve a degenerate critical point by comparing ``gamma`` on a small circle."""
    for rho in (radius, radius / 4):
        ring = z0 + rho * np.exp(2j * np.pi * np.arange(64) / 64)
        ring = ring[np.abs(ring) < 1]
        diff = robin_value(f, ring) - gamma0
        noise = 1e-14 * max(1.0, abs(gamma0))
        if np.all(diff < -noise):
            return MAX
        if np.all(diff > noise):
            return MIN
        if np.any(diff < -noise) and np.any(diff > noise):
            return SADDLE
    return DEGENERATE


def classify_point(f: CoefficientMap, z: complex, config: QuadratureConfig = DEFAULT_CONFIG):
    """Kind of the critical point at ``z`` and the Hessian eigenvalues."""
    eig = np.linalg.eigvalsh(robin_hessian(f, z, config.hessian_step))
    tol = config.degeneracy_tol
    if np.all(np.abs(eig) > tol):
        if np.all(eig < 0):
            return MAX, tuple(eig), False
        if np.all(eig > 0):
            return MIN, tuple(eig), False
        return SADDLE, tuple(eig), False
    kind = _probe_kind(f, z, robin_value(f, z), config.probe_radius)
    return kind, tuple(eig), True


def _cluster(points, gammas, radius):
    """Greedy deduplication, highest ``gamma`` first."""
    order = np.argsort(-gammas, kind="stable")
    reps = []
    for k in order:
        if all(abs(points[k] - points[j]) > radius for j in reps):
            reps.append(k)
    return reps


def find_critical_points(f: CoefficientMap, config: QuadratureConfig = DEFAULT_CONFIG) -> list:
    """All critical points of the Robin function reached from the seed grid.

    The caller is responsible for univalence of ``f``. Points are sorted by
    ``gamma`` descending. Degenerate points (a Hessian eigenvalue within
    ``degeneracy_tol`` of zero) are typed by probing ``gamma`` on a small
    circle and carry ``degenerate=True``.
    """
    z, r = newton_solve(f, _seed_grid(config), config)
    ok = r <= config.newton_tol
    if not np.any(ok):
        raise ConvergenceError("damped Newton converged from no seed; is f univalent?")
    pts, res = z[ok], r[ok]
    gam = robin_value(f, pts)
    reports = []
    for k in _cluster(pts, gam, config.dedup_radius):
        kind, eig, degenerate = classify_point(f, pts[k], config)
        reports.append(
            CriticalPointReport(
                z_disk=complex(pts[k]),
                w_domain=complex(f.value(pts[k])),
                gamma_value=float(gam[k]),
                gradient_residual=float(res[k]),
                kind=kind,
                hessian_eigenvalues=eig,
                degenerate=degenerate,
            )
        )
    reports.sort(key=lambda c: -c.gamma_value)
    return reports


def count_maxima(f: CoefficientMap, config: QuadratureConfig = DEFAULT_CONFIG, points=None) -> int:
    """Number of local maxima of the Robin function."""
    points = find_critical_points(f, config) if points is None else points
    if any(p.kind == DEGENERATE for p in points):
        raise IndeterminateCountError("a degenerate critical point could not be typed")
    return sum(p.kind == MAX for p in points)
