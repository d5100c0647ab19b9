"""Orbit-trap rasterization of the rotation domain and its preimages.

A pixel is classified by the first iterate that falls into a small trap disk
around the fixed point 0; the trap sits strictly inside the rotation domain,
so a hit certifies membership in the union of its preimages.  The unresolved
remainder shrinks as the iteration budget grows; this is a diagnostic
picture, not a measure-theoretic statement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .maps import QuadraticSiegelMap
from .plane import is_inf

UNRESOLVED = -1
ESCAPED = -2

_ESCAPE_RADIUS = 1e6

# trap defaults to this fraction of the closest boundary sample
TRAP_FACTOR = 0.4


@dataclass(frozen=True)
class RasterSpec:
    center: complex
    width: float
    px_w: int
    px_h: int
    max_iter: int
    trap_radius: float

    def __post_init__(self):
        if self.px_w < 1 or self.px_h < 1:
            raise DomainError(f"resolution must be >= 1x1, got {self.px_w}x{self.px_h}")
        if self.width <= 0:
            raise DomainError(f"viewport width must be positive, got {self.width}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")
        if not (self.trap_radius > 0):
            raise DomainError(f"trap radius must be positive, got {self.trap_radius}")

    @property
    def height(self) -> float:
        return self.width * self.px_h / self.px_w

    def grid(self) -> np.ndarray:
        """Pixel-center sample points, row-major from the top-left."""
        xs = self.center.real - self.width / 2 + (np.arange(self.px_w) + 0.5) * (self.width / self.px_w)
        ys = self.center.imag + self.height / 2 - (np.arange(self.px_h) + 0.5) * (self.height / self.px_h)
        return xs[np.newaxis, :] + 1j * ys[:, np.newaxis]


def trap_radius_from_curve(curve, factor: float = TRAP_FACTOR) -> float:
    """Trap radius from a boundary sample: factor times the closest sample.

    factor must stay <= 0.5 so the trap is strictly inside the sampled domain.
    """
    if not (0 < factor <= 0.5):
        raise DomainError(f"trap factor must lie in (0, 0.5], got {factor}")
    r = float(np.min(np.abs(curve.points)))
    if r <= 0:
        raise DomainError("boundary samples touch the origin; no trap radius exists")
    return factor * r


def classify_grid(g: QuadraticSiegelMap, spec: RasterSpec) -> np.ndarray:
    """Per-pixel label: first trap-entry iterate k >= 0, UNRESOLVED, or ESCAPED.

    Escape is only meaningful for the polynomial limit (c = INF), where large
    orbits provably diverge; for finite parameters a lost orbit (pole hit or
    float overflow) stays UNRESOLVED.
    """
    z = spec.grid().astype(complex)
    labels = np.full(z.shape, UNRESOLVED, dtype=np.int32)
    active = np.ones(z.shape, dtype=bool)
    polynomial = is_inf(g.c)
    a, b, lam = g.a, g.b, g.lam
    trap2 = spec.trap_radius * spec.trap_radius
    esc2 = _ESCAPE_RADIUS * _ESCAPE_RADIUS
    for k in range(spec.max_iter):
        mag2 = z.real * z.real + z.imag * z.imag
        hit = active & (mag2 <= trap2)
        labels[hit] = k
        active &= ~hit
        if polynomial:
            esc = active & (mag2 > esc2)
            labels[esc] = ESCAPED
            active &= ~esc
        dead = active & ~np.isfinite(mag2)
        active &= ~dead
        if not active.any():
            break
        if k == spec.max_iter - 1:
            break
        za = z[active]
        with np.errstate(all="ignore"):
            z[active] = (a * za * za + lam * za) / (b * za + 1.0)
    return labels


@dataclass(frozen=True)
class Palette:
    unresolved: tuple = (0, 0, 0)
    escaped: tuple = (245, 245, 245)
    hit_near: tuple = (24, 44, 95)
    hit_far: tuple = (255, 228, 120)


DEFAULT_PALETTE = Palette()


def write_image(labels: np.ndarray, path, palette: Palette | None = None):
    """Binary PPM (P6, maxval 255), row-major from the top-left pixel.

    Hits fade from hit_near (fast capture) to hit_far (slow capture); the
    writer is deterministic byte for byte.
    """
    if palette is None:
        palette = DEFAULT_PALETTE
    labels = np.asarray(labels)
    if labels.ndim != 2 or labels.shape[0] < 1 or labels.shape[1] < 1:
        raise DomainError(f"labels must be a nonempty 2-d array, got shape {labels.shape}")
    h, w = labels.shape
    rgb = np.empty((h, w, 3), dtype=np.uint8)
    rgb[labels == UNRESOLVED] = palette.unresolved
    rgb[labels == ESCAPED] = palette.escaped
    hits = labels >= 0
    if hits.any():
        vmax = max(1, int(labels[hits].max()))
        t = (labels[hits].astype(float) / vmax)[:, np.newaxis]
        near = np.array(palette.hit_near, dtype=float)
        far = np.array(palette.hit_far, dtype=float)
        rgb[hits] = np.clip(np.rint(near + t * (far - near)), 0, 255).astype(np.uint8)
    header = f"P6\n{w} {h}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(rgb.tobytes())
