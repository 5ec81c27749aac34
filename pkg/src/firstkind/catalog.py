"""Registry of built-in example maps."""

from __future__ import annotations

from .errors import InputError
from .series import CoefficientMap


def disk(radius: float = 1.0) -> CoefficientMap:
    if not radius > 0:
        raise InputError(f"disk radius must be positive, got {radius!r}")
    return CoefficientMap([0, radius], label=f"disk(radius={radius:g})")


def f3() -> CoefficientMap:
    """``z + z^3/3``: cusps at ``f(+-i) = +-2i/3``."""
    return CoefficientMap([0, 1, 0, 1 / 3], label="f3")


def appendix3(t: float) -> CoefficientMap:
    """``z + (2t/9) z^3 + (t/15) z^5``; ``3|a_3| + 5|a_5| = t``."""
    return CoefficientMap([0, 1, 0, 2 * t / 9, 0, t / 15], label=f"appendix3(t={t:g})")


def nonunivalent(t: float) -> CoefficientMap:
    """``z + (t/3) z^3 + (t/4) z^4``; not univalent for ``t`` near 0.75."""
    return CoefficientMap([0, 1, 0, t / 3, t / 4], label=f"nonunivalent(t={t:g})")


BUILTINS = {
    "disk": (disk, {"radius"}),
    "f3": (f3, set()),
    "appendix3": (appendix3, {"t"}),
    "nonunivalent": (nonunivalent, {"t"}),
}


def builtin_map(name: str, params: dict | None = None) -> CoefficientMap:
    """Look up a built-in map by name; ``params`` may hold ``t`` or ``radius``."""
    params = dict(params or {})
    if name not in BUILTINS:
        raise InputError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    factory, allowed = BUILTINS[name]
    extra = set(params) - allowed
    if extra:
        raise InputError(f"builtin {name!r} does not take parameter(s) {sorted(extra)}")
    if name in ("appendix3", "nonunivalent") and "t" not in params:
        raise InputError(f"builtin {name!r} needs parameter 't'")
    try:
        return factory(**{k: float(v) for k, v in params.items()})
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad parameters for {name!r}: {exc}") from exc
