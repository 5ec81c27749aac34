"""One-parameter families of maps, classification sweeps and threshold search."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np
from scipy.optimize import minimize_scalar

from . import catalog
from .classify import D_series, classify
from .config import DEFAULT_CONFIG, QuadratureConfig
from .errors import BracketError, FirstKindError, InputError, PreconditionError, RangeError
from .geometry import check_S_I, check_starlike, check_univalent
from .robin import count_maxima
from .series import CoefficientMap, series_area

SCALING_PATH = "ScalingPath"
COEFFICIENT_PATH = "CoefficientPath"
BUILTIN = "Builtin"

CHECKS = ("classify", "starlike", "univalent", "maxima", "S_I")
WITNESSES = ("D", "starlike", "S_I", "maxima", "univalent")


@dataclass
class DeformationFamily:
    """``t -> f(., t)`` given by exact coefficient rules.

    ``rule(t)`` returns the coefficient array of ``f(., t)`` and
    ``rate(t)`` that of ``d f(., t)/dt``.
    """

    kind: str
    base_map: CoefficientMap | None
    parameter_range: tuple
    coefficient_rule: str
    rule: Callable[[float], np.ndarray] = field(repr=False)
    rate: Callable[[float], np.ndarray] = field(repr=False)
    name: str = ""

    def _check(self, t):
        lo, hi = self.parameter_range
        if not (lo <= t <= hi):
            raise RangeError(f"t = {t!r} outside the family's range [{lo}, {hi}]")

    def coefficients(self, t: float) -> np.ndarray:
        self._check(t)
        return np.asarray(self.rule(float(t)), dtype=complex)

    def velocity(self, t: float) -> np.ndarray:
        self._check(t)
        return np.asarray(self.rate(float(t)), dtype=complex)

    def at(self, t: float) -> CoefficientMap:
        label = f"{self.name or self.kind}(t={t:g})"
        return CoefficientMap(self.coefficients(t), label=label)


def family_at(family: DeformationFamily, t: float) -> CoefficientMap:
    return family.at(t)


def scaling_path(base: CoefficientMap) -> DeformationFamily:
    """``t q + (f(t z) - q) / t``: coefficients ``a_n t^(n-1)``, identity-like at ``t = 0``."""
    a = base.coefficients
    n = np.arange(a.size)

    def rule(t):
        out = a * float(t) ** np.maximum(n - 1, 0)
        out[0] = t * a[0]
        return out

    def rate(t):
        out = np.zeros_like(a)
        out[0] = a[0]
        k = n[2:]
        out[2:] = (k - 1) * a[2:] * float(t) ** (k - 2)
        return out

    return DeformationFamily(SCALING_PATH, base, (0.0, 1.0), "a_n t^(n-1), a_0 = t q", rule, rate, "scaling")


def coefficient_path(
    base: CoefficientMap, rules: Mapping[int, Callable[[float], float]] | None = None
) -> DeformationFamily:
    """``a_n(t) = lambda_n(t) a_n`` for ``n >= 3``; ``a_0`` and ``a_1`` fixed.

    The default is ``lambda_n(t) = t``. Custom multipliers must satisfy
    ``lambda(0) = 0``, ``lambda(1) = 1`` and ``|lambda| <= 1`` on ``[0, 1]``
    (checked on a grid).
    """
    if abs(base.a2) > 0:
        raise PreconditionError("a coefficient path starts from a map with a_2 = 0")
    a = base.coefficients
    rules = dict(rules or {})
    bad = [k for k in rules if not 3 <= k < a.size]
    if bad:
        raise InputError(f"coefficient rules only apply to 3 <= n <= {a.size - 1}, got {bad}")
    grid = np.linspace(0, 1, 101)
    for k, lam in rules.items():
        vals = np.array([lam(s) for s in grid])
        if abs(lam(0.0)) > 1e-14 or abs(lam(1.0) - 1) > 1e-14 or np.any(np.abs(vals) > 1 + 1e-14):
            raise InputError(f"rule for a_{k} must satisfy lambda(0) = 0, lambda(1) = 1, |lambda| <= 1")

    def mult(t):
        m = np.ones(a.size, dtype=complex)
        m[3:] = t
        for k, lam in rules.items():
            m[k] = lam(t)
        return m

    def rule(t):
        return a * mult(t)

    def rate(t):
        h = 1e-6
        lo, hi = max(t - h, 0.0), min(t + h, 1.0)
        return a * (mult(hi) - mult(lo)) / (hi - lo)

    desc = "t a_n (n >= 3)" if not rules else f"custom multipliers for n in {sorted(rules)}"
    return DeformationFamily(COEFFICIENT_PATH, base, (0.0, 1.0), desc, rule, rate, "coefficient")


def _catalog_family(name, factory, velocity, t_range, desc):
    rate = np.asarray(velocity, dtype=complex)
    return DeformationFamily(
        BUILTIN, None, t_range, desc, lambda t: factory(t).coefficients, lambda t: rate, name
    )


def builtin_family(name: str) -> DeformationFamily:
    """``appendix3``, ``nonunivalent`` or ``dilation`` (the disks ``(1 + t) z``)."""
    if name == "appendix3":
        return _catalog_family(
            name, catalog.appendix3, [0, 0, 0, 2 / 9, 0, 1 / 15], (0.0, 2.5), "z + (2t/9) z^3 + (t/15) z^5"
        )
    if name == "nonunivalent":
        return _catalog_family(
            name, catalog.nonunivalent, [0, 0, 0, 1 / 3, 1 / 4], (0.0, 1.0), "z + (t/3) z^3 + (t/4) z^4"
        )
    if name == "dilation":
        return _catalog_family(name, lambda t: catalog.disk(1 + t), [0, 1], (0.0, 10.0), "(1 + t) z")
    raise InputError(f"unknown family {name!r}; choose from appendix3, nonunivalent, dilation")


@dataclass
class SweepRow:
    t: float
    D: float | None = None
    kind: str | None = None
    maxima: int | None = None
    starlike: bool | None = None
    univalent: bool | None = None
    s_i_margin: float | None = None
    area: float | None = None
    status: str = "ok"

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _centre_D(f, config):
    if abs(f.a2) <= config.recenter_tol:
        return D_series(f, config)
    return None


def sweep_row(f: CoefficientMap, t: float, checks: Iterable[str], config: QuadratureConfig = DEFAULT_CONFIG) -> SweepRow:
    row = SweepRow(t=float(t), area=series_area(f))
    errors = []

    def attempt(name, func):
        try:
            func()
        except FirstKindError as exc:
            errors.append(f"{name}: {type(exc).__name__}: {exc}")

    def do_classify():
        res = classify(f, config)
        row.kind, row.D, row.univalent = res.kind, res.D_value, res.univalent
        if res.univalent:
            row.maxima = res.maxima_count

    checks = set(checks)
    if "classify" in checks:
        attempt("classify", do_classify)
    if row.D is None:
        attempt("D", lambda: setattr(row, "D", _centre_D(f, config)))
    if "univalent" in checks and row.univalent is None:
        attempt("univalent", lambda: setattr(row, "univalent", check_univalent(f, config).is_univalent))
    if "maxima" in checks and row.maxima is None:
        attempt("maxima", lambda: setattr(row, "maxima", count_maxima(f, config)))
    if "starlike" in checks:
        attempt("starlike", lambda: setattr(row, "starlike", check_starlike(f, config).starlike))
    if "S_I" in checks:
        attempt("S_I", lambda: setattr(row, "s_i_margin", check_S_I(f, config).margin))
    if errors:
        row.status = "; ".join(errors)
    return row


def sweep(
    family: DeformationFamily,
    t_grid: Iterable[float],
    checks: Iterable[str] = CHECKS,
    config: QuadratureConfig = DEFAULT_CONFIG,
) -> list:
    """One :class:`SweepRow` per grid value; failures are recorded in ``status``."""
    grid = [float(t) for t in t_grid]
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise InputError("t_grid must be nondecreasing")
    checks = tuple(checks)
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise InputError(f"unknown check(s) {sorted(unknown)}; choose from {CHECKS}")
    for t in grid:
        family._check(t)
    return [sweep_row(family.at(t), t, checks, config) for t in grid]


def witness_value(f: CoefficientMap, witness: str, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Scalar whose sign change marks a transition.

    ``D``, ``starlike`` (min margin) and ``S_I`` (margin) are continuous.
    ``maxima`` is ``+0.5`` for two or more maxima and ``-0.5`` otherwise;
    ``univalent`` is ``+0.5`` for univalent maps and ``-0.5`` otherwise.
    """
    if witness == "D":
        d = _centre_D(f, config)
        return d if d is not None else classify(f, config).D_value
    if witness == "starlike":
        return check_starlike(f, config).min_margin
    if witness == "S_I":
        return check_S_I(f, config).margin
    if witness == "maxima":
        return 0.5 if count_maxima(f, config) >= 2 else -0.5
    if witness == "univalent":
        return 0.5 if check_univalent(f, config).is_univalent else -0.5
    raise InputError(f"unknown witness {witness!r}; choose from {WITNESSES}")


@dataclass
class BisectionResult:
    t_star: float
    lo: float
    hi: float
    witness: str
    iterations: int
    interval: tuple

    def to_dict(self) -> dict:
        return {
            "t_star": self.t_star,
            "bracket": [self.lo, self.hi],
            "witness": self.witness,
            "iterations": self.iterations,
            "interval": list(self.interval),
        }


def threshold_bisect(
    family: DeformationFamily,
    witness: str,
    bracket: tuple,
    tol: float = 1e-8,
    config: QuadratureConfig = DEFAULT_CONFIG,
) -> BisectionResult:
    """Locate a sign change of ``witness`` along ``family`` inside ``bracket``.

    For the ``maxima`` witness the transition is reported with a fixed
    ``+-0.05`` interval.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketError(f"empty bracket [{lo}, {hi}]")
    if not tol > 0:
        raise InputError("tol must be positive")
    flo = witness_value(family.at(lo), witness, config)
    fhi = witness_value(family.at(hi), witness, config)
    if flo == 0 or fhi == 0:
        t = lo if flo == 0 else hi
        return BisectionResult(t, t, t, witness, 0, (t, t))
    if (flo > 0) == (fhi > 0):
        raise BracketError(
            f"witness {witness!r} has the same sign at both ends ({flo:.6g} at {lo}, {fhi:.6g} at {hi})"
        )
    it = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = witness_value(family.at(mid), witness, config)
        it += 1
        if fm == 0:
            lo = hi = mid
            break
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    half = 0.05 if witness == "maxima" else 0.5 * (hi - lo)
    return BisectionResult(t, lo, hi, witness, it, (t - half, t + half))


def d_infty(f: CoefficientMap, samples: int = 4096) -> float:
    """``sup |f(z) - z| + sup |f'(z) - 1|`` over the closed disk.

    Both differences are analytic, so the suprema are attained on the circle;
    each grid maximum is polished by a bounded scalar search.
    """
    theta = 2 * np.pi * np.arange(samples) / samples
    h = 2 * np.pi / samples
    total = 0.0
    for g in (lambda s: abs(f.value(np.exp(1j * s)) - np.exp(1j * s)), lambda s: abs(f.value(np.exp(1j * s), 1) - 1)):
        vals = g(theta)
        k = int(np.argmax(vals))
        best = float(vals[k])
        res = minimize_scalar(lambda s: -g(s), bounds=(theta[k] - h, theta[k] + h), method="bounded", options={"xatol": 1e-12})
        total += max(best, float(-res.fun))
    return total


def t_grid(t_min: float, t_max: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise InputError("steps must be at least 1")
    if steps == 1:
        return np.array([float(t_min)])
    return np.linspace(t_min, t_max, steps)


def named_family(name: str, base: CoefficientMap | None = None) -> DeformationFamily:
    """Family by name; ``scaling`` and ``coefficient`` need a base map."""
    if name in ("scaling", "coefficient"):
        if base is None:
            raise InputError(f"family {name!r} needs a base map")
        return scaling_path(base) if name == "scaling" else coefficient_path(base)
    return builtin_family(name)

