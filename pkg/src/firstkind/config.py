"""Numerical configuration shared by every computation in the package."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Any, Mapping

from .errors import InputError


@dataclass(frozen=True)
class QuadratureConfig:
    """All tolerances, grid sizes and truncation knobs.

    Two runs with equal configs on equal maps produce identical numbers.
    """

    # boundary sampling (univalence, starlikeness, regularity, winding tests)
    boundary_samples: int = 4096
    refine_factor: int = 16
    root_tol: float = 1e-8

    # recentering by a disk automorphism
    recenter_tol: float = 1e-8
    recenter_margin: float = 1e-6
    cauchy_radius: float = 1.0
    cauchy_samples: int = 4096
    recenter_tail_tol: float = 1e-10

    # critical points of the Robin function
    newton_tol: float = 1e-12
    newton_max_iter: int = 100
    newton_halvings: int = 20
    seed_radii: int = 19
    seed_angles: int = 64
    dedup_radius: float = 1e-6
    degeneracy_tol: float = 1e-7
    hessian_step: float = 1e-5
    probe_radius: float = 1e-2

    # classification
    sign_tol: float = 1e-6
    status_tol: float = 1e-10
    cross_check: bool = False
    cross_check_abs: float = 1e-4
    cross_check_rel: float = 1e-3

    # regularized integral
    quad_levels: int = 3
    quad_tol: float = 1e-6
    quad_base_angles: int = 128
    quad_base_radial: int = 16

    # Green's function and Hadamard check
    fd_step: float = 1e-4
    hadamard_nodes: int = 2048

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool):
                continue
            if isinstance(value, (int, float)) and value <= 0:
                raise InputError(f"config field {f.name!r} must be positive, got {value!r}")
        for name in ("boundary_samples", "cauchy_samples"):
            n = getattr(self, name)
            if n & (n - 1):
                raise InputError(f"{name} must be a power of two, got {n}")
        if self.cauchy_radius > 1.0:
            raise InputError("cauchy_radius must not exceed 1")

    def replace(self, **changes: Any) -> "QuadratureConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


# names accepted in a JSON run-config overlay, mapped onto QuadratureConfig fields
_RUN_CONFIG_ALIASES = {
    "boundary_samples": "boundary_samples",
    "newton_tol": "newton_tol",
    "recenter_tol": "recenter_tol",
    "sign_tol": "sign_tol",
    "quad_levels": "quad_levels",
    "cross_check": "cross_check",
}


def config_from_mapping(data: Mapping[str, Any], base: QuadratureConfig | None = None) -> QuadratureConfig:
    """Overlay a run-config mapping (as read from JSON) onto ``base``.

    Besides the QuadratureConfig field names, the keys of the command-line
    run config are accepted, including ``seed_grid: {radii, angles}``.
    """
    base = base or QuadratureConfig()
    known = {f.name for f in dataclasses.fields(QuadratureConfig)}
    changes: dict[str, Any] = {}
    for key, value in data.items():
        if key == "seed_grid":
            if not isinstance(value, Mapping):
                raise InputError("seed_grid must be an object with 'radii' and 'angles'")
            if "radii" in value:
                changes["seed_radii"] = int(value["radii"])
            if "angles" in value:
                changes["seed_angles"] = int(value["angles"])
        elif key in _RUN_CONFIG_ALIASES:
            changes[_RUN_CONFIG_ALIASES[key]] = value
        elif key in known:
            changes[key] = value
        else:
            raise InputError(f"unknown config key {key!r}")
    return base.replace(**changes)


def load_config(path: str, base: QuadratureConfig | None = None) -> QuadratureConfig:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: run config must be a JSON object")
    return config_from_mapping(data, base)


DEFAULT_CONFIG = QuadratureConfig()
