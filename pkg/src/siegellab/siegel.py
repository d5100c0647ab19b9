"""Siegel-boundary approximation, cross ratios, and quasicircle diagnostics.

The boundary of the rotation domain of a family member is approximated by
the forward orbit of the critical point 1, with orbit index k carrying the
internal angle {k theta}.  Four-point cross ratios over angle-ordered
quadruples probe how far the sampled curve is from pinching, which is the
computable face of the quasicircle property.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cfrac import RotationNumber
from .errors import DomainError, OrbitError
from .maps import make_map
from .plane import INF, is_inf

# orbit points closer than this are treated as a collision (finite-orbit abort)
_COLLAPSE_TOL = 1e-12

_ESCAPE_RADIUS = 1e9


@dataclass(frozen=True)
class BoundaryCurve:
    """Angle-labeled samples of the approximated rotation-domain boundary.

    ``angles``/``points`` are sorted by internal angle; ``orbit_index`` maps a
    sample back to its orbit position, so orbit order is recoverable and the
    shift-by-theta action on angles matches applying the map to points.
    """

    c: object  # complex or INF
    theta: RotationNumber
    angles: np.ndarray
    points: np.ndarray
    orbit_index: np.ndarray

    def __len__(self):
        return len(self.points)

    def orbit_points(self) -> np.ndarray:
        """Samples in orbit order: index k holds the k-th forward image of 1."""
        out = np.empty_like(self.points)
        out[self.orbit_index] = self.points
        return out

    @classmethod
    def from_samples(cls, angles, points, c=None, theta=None) -> "BoundaryCurve":
        """Assemble a synthetic curve from (angle, point) pairs."""
        angles = np.asarray(angles, dtype=float)
        points = np.asarray(points, dtype=complex)
        if angles.shape != points.shape or angles.ndim != 1:
            raise DomainError("angles and points must be matching 1-d arrays")
        order = np.argsort(angles, kind="stable")
        return cls(
            c=c,
            theta=theta,
            angles=angles[order],
            points=points[order],
            orbit_index=order,
        )


def boundary_orbit(c, theta: RotationNumber, N: int) -> BoundaryCurve:
    """N forward images of 1 labeled with internal angles {k theta}, sorted.

    Aborts with OrbitError when an iterate escapes to infinity or two orbit
    points coincide to within 1e-12 (a finite critical orbit means the
    parameter left the valid region, or the orbit collapsed numerically).
    """
    if N < 1:
        raise DomainError(f"need N >= 1 samples, got {N}")
    g = make_map(c, theta)
    pts = np.empty(N, dtype=complex)
    z = 1.0 + 0.0j
    for k in range(N):
        if is_inf(z) or abs(z) > _ESCAPE_RADIUS:
            raise OrbitError(f"orbit escaped to infinity at iterate {k}", iterate=k)
        pts[k] = z
        z = g(z)
    _check_collapse(pts)
    angles = (np.arange(N) * theta.value) % 1.0
    order = np.argsort(angles, kind="stable")
    return BoundaryCurve(
        c=c, theta=theta, angles=angles[order], points=pts[order], orbit_index=order
    )


def _check_collapse(pts: np.ndarray):
    # lexicographic neighbors catch any pair within the collapse tolerance
    order = np.lexsort((pts.imag, pts.real))
    s = pts[order]
    gaps = np.abs(np.diff(s))
    bad = np.nonzero(gaps < _COLLAPSE_TOL)[0]
    if len(bad):
        i, j = order[bad[0]], order[bad[0] + 1]
        raise OrbitError(
            f"orbit points {min(i, j)} and {max(i, j)} coincide within {_COLLAPSE_TOL}",
            iterate=int(max(i, j)),
        )


def cross_ratio(z1, z2, z3, z4) -> complex:
    """((z1 - z3)(z2 - z4)) / ((z2 - z3)(z1 - z4)); Moebius invariant."""
    z1, z2, z3, z4 = complex(z1), complex(z2), complex(z3), complex(z4)
    pts = (z1, z2, z3, z4)
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j]:
                raise DomainError(f"cross ratio needs distinct points; {i} and {j} coincide")
    den = (z2 - z3) * (z1 - z4)
    if den == 0:
        raise DomainError("degenerate cross-ratio denominator")
    return ((z1 - z3) * (z2 - z4)) / den


def alpha_fn(theta: RotationNumber, k: int, l: int, m: int, n: int) -> complex:
    """Cross ratio of the rigid-rotation orbit e^{2 pi i j theta}, j in {k,l,m,n}."""
    _check_indices(k, l, m, n)
    e = lambda j: cmath.exp(2j * math.pi * j * theta.value)
    return cross_ratio(e(k), e(l), e(m), e(n))


def _check_indices(k, l, m, n):
    if not (0 <= k < l < m < n):
        raise DomainError(f"indices must satisfy 0 <= k < l < m < n, got {(k, l, m, n)}")


def lambda_fn(c, theta: RotationNumber, k: int, l: int, m: int, n: int) -> complex:
    """Cross ratio of the four critical-orbit points with indices k < l < m < n.

    At (or degenerately near) the excluded parameters 1 and -1 the family
    collapses to the rigid rotation and the value continues to alpha_fn.
    A finite critical orbit (coinciding points) aborts with OrbitError.
    """
    _check_indices(k, l, m, n)
    if not is_inf(c):
        c = complex(c)
        if min(abs(c - 1.0), abs(c + 1.0)) < 1e-9:
            return alpha_fn(theta, k, l, m, n)
    g = make_map(c, theta)
    orbit = [1.0 + 0.0j]
    z = orbit[0]
    for j in range(n):
        z = g(z)
        if is_inf(z):
            raise OrbitError(f"critical orbit escaped at iterate {j + 1}", iterate=j + 1)
        orbit.append(z)
    picks = (orbit[k], orbit[l], orbit[m], orbit[n])
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(picks[i] - picks[j]) < _COLLAPSE_TOL:
                raise OrbitError(
                    "critical orbit points coincide; the forward orbit of 1 must be infinite",
                    iterate=n,
                )
    return cross_ratio(*picks)


@dataclass(frozen=True)
class CrossRatioReport:
    """Minimum |cross ratio| over sampled angle-ordered quadruples."""

    min_abs: float
    arg_quadruple: tuple
    quadruples_tested: int


def quasicircle_delta(curve: BoundaryCurve, trials: int, rng_seed: int) -> CrossRatioReport:
    """Minimum |cross ratio| over ``trials`` random angle-ordered quadruples.

    Quadruple order comes from the internal angles (the conjugacy order of
    the boundary), never from Euclidean positions.  A healthy quasicircle
    keeps the minimum bounded away from zero; pinching drives it to zero.
    """
    if len(curve) < 4:
        raise DomainError(f"need at least 4 samples, got {len(curve)}")
    if trials < 0:
        raise DomainError(f"trials must be >= 0, got {trials}")
    pts = curve.points
    n = len(pts)
    rng = np.random.default_rng(rng_seed)
    best = math.inf
    best_quad = None
    done = 0
    while done < trials:
        batch = min(trials - done, 65536)
        idx = rng.integers(0, n, size=(batch, 4))
        idx.sort(axis=1)
        distinct = (
            (idx[:, 0] != idx[:, 1]) & (idx[:, 1] != idx[:, 2]) & (idx[:, 2] != idx[:, 3])
        )
        idx = idx[distinct]
        if len(idx) == 0:
            continue
        z1, z2, z3, z4 = (pts[idx[:, i]] for i in range(4))
        vals = np.abs(((z1 - z3) * (z2 - z4)) / ((z2 - z3) * (z1 - z4)))
        j = int(np.argmin(vals))
        if vals[j] < best:
            best = float(vals[j])
            best_quad = tuple(pts[idx[j]])
        done += len(idx)
    return CrossRatioReport(
        min_abs=best if best_quad is not None else math.inf,
        arg_quadruple=best_quad if best_quad is not None else (),
        quadruples_tested=done,
    )


def nearest_boundary_angle(curve: BoundaryCurve, point, proximity_factor: float = 3.0):
    """Internal angle of the sample nearest to ``point``, if close enough.

    "Close enough" means within proximity_factor times the local sample
    spacing (mean gap to the angle-adjacent neighbors of the hit), so the
    threshold tracks the curve resolution instead of a fixed epsilon.
    """
    if is_inf(point):
        return None
    n = len(curve)
    if n < 2:
        return None
    d = np.abs(curve.points - complex(point))
    i = int(np.argmin(d))
    left = curve.points[(i - 1) % n]
    right = curve.points[(i + 1) % n]
    spacing = 0.5 * (abs(curve.points[i] - left) + abs(right - curve.points[i]))
    if spacing == 0.0 or d[i] > proximity_factor * spacing:
        return None
    return float(curve.angles[i])


def inner_angle(c, theta: RotationNumber, N: int):
    """Internal angle at which the free critical point meets the sampled boundary.

    None when the second critical point stays clear of the curve (e.g. the
    polynomial limit, whose second critical point is infinity).
    """
    curve = boundary_orbit(c, theta, N)
    if is_inf(c):
        return None
    return nearest_boundary_angle(curve, c)


@dataclass(frozen=True)
class XiScanPoint:
    c: object
    distance: float
    error: str | None = None


def _xi_probe(args):
    c, theta, N = args
    if is_inf(c):
        return XiScanPoint(c=c, distance=math.inf, error="infinite parameter")
    try:
        curve = boundary_orbit(c, theta, N)
    except (DomainError, OrbitError) as exc:
        return XiScanPoint(c=c, distance=math.nan, error=str(exc))
    d = float(np.min(np.abs(curve.points - complex(c))))
    return XiScanPoint(c=c, distance=d, error=None)


def _worker_budget(requested):
    cap = os.environ.get("SIEGEL_LAB_THREADS")
    limit = None
    if cap is not None:
        try:
            limit = max(1, int(cap))
        except ValueError:
            limit = None
    if requested is None:
        requested = os.cpu_count() or 1
    if limit is not None:
        requested = min(requested, limit)
    return max(1, requested)


def xi_scan(grid, theta: RotationNumber, N: int, workers: int | None = None) -> list[XiScanPoint]:
    """Distance from each parameter c to its own sampled boundary curve.

    The near-zero level set of c -> d(c, boundary) traces where the free
    critical point lands on the boundary.  Per-parameter failures are
    recorded and the scan continues; results keep the grid order.  Work is
    spread over processes, capped by SIEGEL_LAB_THREADS.
    """
    jobs = [(c, theta, N) for c in grid]
    workers = _worker_budget(workers)
    if workers <= 1 or len(jobs) < 2 * workers:
        return [_xi_probe(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_xi_probe, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
