"""Green's function of ``f(D)`` through the conformal map.

For ``x = f(z_x)`` and ``y = f(z_y)``

    G(x, y) = -log| (z_x - z_y) / (1 - conj(z_y) z_x) | / (2 pi),

and the regular part is ``R(x, y) = G(x, y) + log|x - y| / (2 pi)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import DEFAULT_CONFIG, QuadratureConfig
from .errors import ConvergenceError, CuspError, DomainError, InputError
from .geometry import boundary_regularity, winding_numbers
from .robin import robin_value
from .series import CoefficientMap, boundary_samples

TWO_PI = 2.0 * np.pi


@dataclass
class GreensEvaluation:
    x: complex
    y: complex
    G: float
    R: float
    grad_normal: float | None = None


@dataclass
class HadamardResult:
    lhs_fd: float
    rhs_integral: float
    rel_err: float

    def to_dict(self) -> dict:
        return {"lhs_fd": self.lhs_fd, "rhs_integral": self.rhs_integral, "rel_err": self.rel_err}


@lru_cache(maxsize=64)
def _image_grid(f: CoefficientMap):
    r = 1 - np.geomspace(1.0, 1e-3, 48)  # 0 to 0.999, denser near the rim
    ang = np.exp(2j * np.pi * np.arange(128) / 128)
    z = (r[:, None] * ang[None, :]).ravel()
    return z, f.value(z)


@lru_cache(maxsize=64)
def _boundary(f: CoefficientMap, samples: int):
    return boundary_samples(f, samples)[2]


def _distance_to_polyline(poly, p):
    a, b = poly, np.roll(poly, -1)
    ab = b - a
    t = np.clip(((p - a) * np.conj(ab)).real / np.maximum(np.abs(ab) ** 2, 1e-300), 0, 1)
    return float(np.min(np.abs(a + t * ab - p)))


def is_inside(f: CoefficientMap, w: complex, samples: int = 4096) -> bool:
    """Strictly inside ``f(D)``: winding number one and off the sampled boundary."""
    poly = _boundary(f, samples)
    scale = float(np.max(np.abs(poly - f.q)))
    if _distance_to_polyline(poly, w) <= 1e-12 * max(scale, 1.0):
        return False
    return int(winding_numbers(poly, w)[0]) == 1


def _newton_inverse(f, w, z, tol, max_iter=60):
    for _ in range(max_iter):
        res = f.value(z) - w
        if abs(res) < tol:
            return z
        step = res / f.value(z, 1)
        lam = 1.0
        while lam > 1e-6:
            zn = z - lam * step
            if abs(zn) < 1 and abs(f.value(zn) - w) < abs(res):
                break
            lam *= 0.5
        else:
            return None
        z = zn
    return z if abs(f.value(z) - w) < tol else None


def inverse_map(f: CoefficientMap, w: complex, config: QuadratureConfig = DEFAULT_CONFIG, tol: float = 1e-12) -> complex:
    """Disk point ``z`` with ``f(z) = w`` for ``w`` strictly inside the domain.

    Newton is started from the nearest image of a fixed polar grid; on
    failure the next nearest grid points are tried before giving up.
    """
    w = complex(w)
    if not is_inside(f, w, config.boundary_samples):
        raise DomainError(f"point {w} is not strictly inside the domain")
    zg, wg = _image_grid(f)
    order = np.argsort(np.abs(wg - w))
    tol = tol * max(1.0, abs(w))
    for k in order[:16]:
        z = _newton_inverse(f, w, complex(zg[k]), tol)
        if z is not None:
            return complex(z)
    raise ConvergenceError(f"Newton inversion of f failed at w = {w}")


def _disk_green(zx, zy):
    return -np.log(np.abs((zx - zy) / (1 - np.conj(zy) * zx))) / TWO_PI


def green(f: CoefficientMap, x: complex, y: complex, config: QuadratureConfig = DEFAULT_CONFIG) -> GreensEvaluation:
    """``G(x, y)`` and its regular part for two distinct interior points."""
    x, y = complex(x), complex(y)
    if x == y:
        raise InputError("x = y: the diagonal value of the regular part is the Robin function")
    zx = inverse_map(f, x, config)
    zy = inverse_map(f, y, config)
    G = float(_disk_green(zx, zy))
    # R = log(|x - y| |1 - conj(zy) zx| / |zx - zy|) / 2pi, formed as a single ratio
    R = float(np.log(abs(x - y) * abs(1 - np.conj(zy) * zx) / abs(zx - zy)) / TWO_PI)
    return GreensEvaluation(x, y, G, R)


def gamma(f: CoefficientMap, w: complex, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Robin function at a domain point."""
    return robin_value(f, inverse_map(f, w, config))


def hadamard_rhs(f: CoefficientMap, velocity: np.ndarray, zx: complex, zy: complex, nodes: int) -> float:
    """Boundary integral of ``dG/dnu(x,.) dG/dnu(.,y) <V, nu>``.

    On ``|z| = 1`` the outward normal derivative of ``G(., x)`` is
    ``-P(z, z_x) / (2 pi |f'(z)|)`` with the Poisson kernel
    ``P(z, a) = (1 - |a|^2) / |z - a|^2``; with ``d sigma = |f'| d theta``
    the integrand becomes ``P_x P_y <V, nu> / (4 pi^2 |f'|)``.
    """
    z = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    fp = f.value(z, 1)
    nu = z * fp / np.abs(fp)
    v = np.polynomial.polynomial.polyval(z, velocity)
    vn = (v * np.conj(nu)).real
    px = (1 - abs(zx) ** 2) / np.abs(z - zx) ** 2
    py = (1 - abs(zy) ** 2) / np.abs(z - zy) ** 2
    integrand = px * py * vn / (4 * np.pi**2 * np.abs(fp))
    return float(np.mean(integrand) * TWO_PI)


def hadamard_check(family, t: float, x: complex, y: complex, config: QuadratureConfig = DEFAULT_CONFIG) -> HadamardResult:
    """Compare ``dG/dt`` by central differences with the boundary integral.

    ``family`` provides ``at(t) -> CoefficientMap`` and ``velocity(t)``, the
    coefficient array of ``d f(z, t) / dt``.
    """
    x, y = complex(x), complex(y)
    if x == y:
        raise InputError("x = y: the Green's function is singular on the diagonal")
    h = config.fd_step
    f = family.at(t)
    reg = boundary_regularity(f, config)
    if not reg.regular or reg.min_abs_fprime_on_boundary < 1e-10:
        raise CuspError(
            f"f' vanishes on the boundary at t = {t} (theta = {reg.argmin_theta:.6f}); the normal is undefined"
        )
    g_plus = green(family.at(t + h), x, y, config).G
    g_minus = green(family.at(t - h), x, y, config).G
    lhs = (g_plus - g_minus) / (2 * h)
    zx = inverse_map(f, x, config)
    zy = inverse_map(f, y, config)
    rhs = hadamard_rhs(f, np.asarray(family.velocity(t), dtype=complex), zx, zy, config.hadamard_nodes)
    rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
    return HadamardResult(float(lhs), float(rhs), float(rel))
