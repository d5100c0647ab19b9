"""Extended complex plane with an explicit, tagged point at infinity.

Float infinities poison complex arithmetic (``inf*1j`` is nan-laden), so the
point at infinity is a dedicated singleton.  Code that needs exact pole
bookkeeping branches on ``is_inf`` instead of inspecting float components.
"""

from __future__ import annotations

import math

from .errors import DomainError


class _Infinity:
    """The point at infinity on the Riemann sphere (singleton ``INF``)."""

    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        # keep the singleton property across pickling (process pools)
        return (_restore_inf, ())


INF = _Infinity()


def _restore_inf():
    return INF


def is_inf(z) -> bool:
    return z is INF


def as_point(z):
    """Coerce to complex, mapping non-finite floats to INF."""
    if z is INF:
        return INF
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return INF
    return z


def parse_point(text: str):
    """Parse ``"re,im"``, a bare real, or ``"inf"`` into a point."""
    s = text.strip().lower()
    if s in ("inf", "infinity", "oo"):
        return INF
    parts = s.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise DomainError(f"cannot parse point {text!r}; expected 're,im' or 'inf'")


def fmt(x) -> str:
    """Render a real with 12 significant digits (regression-diffable output)."""
    return f"{float(x):.12g}"


def point_fields(z) -> tuple[str, str]:
    """CSV field pair for a point; infinity becomes the literal pair inf,inf."""
    if is_inf(z):
        return ("inf", "inf")
    return (fmt(z.real), fmt(z.imag))
