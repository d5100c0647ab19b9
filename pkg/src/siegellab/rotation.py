"""Rotation numbers of the circle restrictions and prefactor tuning.

The circle restriction of e^{it} B_{p,q} lifts to an explicit continuous map
of the line.  On |z| = 1 each factor contributes

    arg[(z - a)/(1 - conj(a) z)] = -x + 2 arg(e^{ix} - a),

and both  1 - e^{ix}/p  (|p| > 1)  and  1 - q e^{-ix}  (|q| < 1)  stay inside
the unit disk around 1, so their principal arguments are continuous in x and
the lift needs no unwrapping heuristics:

    F(x) = x + t + 2 Arg(1 - e^{ix}/p) + 2 Arg(1 - q e^{-ix}) + 2 arg(-p) + 2 pi k,

with the integer k fixed once so the increment at x = 0 lands in [0, 2 pi).
Birkhoff averaging of the increments then estimates the rotation number with
the universal error bound 1/n.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .blaschke import BlaschkeProduct
from .cfrac import RotationNumber
from .errors import ConvergenceError, DomainError, HomeomorphismError

TWO_PI = 2.0 * math.pi

# circle_derivative may dip this far below zero from rounding alone
_HOMEO_SLACK = -1e-9


@dataclass(frozen=True)
class RigidRotation:
    """z -> e^{i angle} z; the trivial circle map, mostly for tests and oracles."""

    angle: float

    def displacement(self, x: float) -> float:
        return self.angle % TWO_PI

    def lift(self, x: float) -> float:
        return x + self.displacement(x)

    def forward(self, x: float, n: int) -> float:
        return (x + n * self.angle) % TWO_PI

    def backward(self, x: float, n: int) -> float:
        return (x - n * self.angle) % TWO_PI


class CircleMapLift:
    """Monotone lift of the circle restriction of a Blaschke product.

    Verifies on construction that the restriction is an orientation-preserving
    homeomorphism (circle derivative nonnegative on a sample grid).
    """

    def __init__(self, B: BlaschkeProduct, check: bool = True, grid: int = 720):
        self.B = B
        self.p = complex(B.p)
        self.q = complex(B.q)
        if check:
            worst = min(B.circle_derivative(TWO_PI * k / grid) for k in range(grid))
            if worst < _HOMEO_SLACK:
                raise HomeomorphismError(
                    f"circle derivative reaches {worst:.3e} < 0; restriction is not a homeomorphism"
                )
        const = B.prefactor_angle + 2.0 * cmath.phase(-self.p)
        # pin the increment branch: displacement at angle 0 lies in [0, 2 pi)
        d0 = const + 2.0 * cmath.phase(1.0 - 1.0 / self.p) + 2.0 * cmath.phase(1.0 - self.q)
        self.const = const - TWO_PI * math.floor(d0 / TWO_PI)

    def displacement(self, x: float) -> float:
        """F(x) - x; continuous in x, exact up to rounding."""
        z = cmath.rect(1.0, x)
        return (
            self.const
            + 2.0 * cmath.phase(1.0 - z / self.p)
            + 2.0 * cmath.phase(1.0 - self.q * z.conjugate())
        )

    def lift(self, x: float) -> float:
        return x + self.displacement(x)

    def average_displacement(self, x0: float, n: int) -> float:
        """Mean increment over n steps, Kahan-compensated; equals 2 pi rho + O(1/n)."""
        x = x0 % TWO_PI
        const, p, q = self.const, self.p, self.q
        rect, phase = cmath.rect, cmath.phase
        total = 0.0
        comp = 0.0
        for _ in range(n):
            z = rect(1.0, x)
            d = const + 2.0 * phase(1.0 - z / p) + 2.0 * phase(1.0 - q * z.conjugate())
            y = d - comp
            t = total + y
            comp = (t - total) - y
            total = t
            x = (x + d) % TWO_PI
        return total / n

    def forward(self, x: float, n: int) -> float:
        """n-th forward image of the angle x under the circle restriction."""
        for _ in range(n):
            x = (x + self.displacement(x)) % TWO_PI
        return x

    def inverse_step(self, y: float, tol: float = 1e-14) -> float:
        """Solve F(x) = y (mod 2 pi) for the unique preimage angle.

        The restriction is a homeomorphism, so monotone bisection of the lift
        over [y - 2 pi, y] is unambiguous; the three global preimages of the
        full-plane map never enter.
        """
        y = y % TWO_PI
        lo, hi = y - TWO_PI, y
        flo = lo + self.displacement(lo) - y
        fhi = hi + self.displacement(hi) - y
        if flo > 0.0 or fhi < 0.0:
            raise ConvergenceError(
                f"inverse step lost its bracket at y = {y}", bracket=(lo, hi)
            )
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            fm = mid + self.displacement(mid) - y
            if fm >= 0.0:
                hi = mid
            else:
                lo = mid
            if hi - lo <= tol:
                break
        return (0.5 * (lo + hi)) % TWO_PI

    def backward(self, x: float, n: int) -> float:
        for _ in range(n):
            x = self.inverse_step(x)
        return x


def _as_lift(B):
    if isinstance(B, CircleMapLift):
        return B
    if isinstance(B, BlaschkeProduct):
        return CircleMapLift(B)
    if hasattr(B, "displacement"):
        return B
    raise DomainError(f"cannot interpret {B!r} as a circle map")


@dataclass(frozen=True)
class RotationEstimate:
    value: float  # in [0, 1)
    error: float  # universal bound 1/n


def _birkhoff(lift, x0: float, n: int) -> float:
    if isinstance(lift, RigidRotation):
        return (lift.angle / TWO_PI) % 1.0
    return (lift.average_displacement(x0, n) / TWO_PI) % 1.0


def rotation_number(B, x0: float = 0.0, n: int = 1_000_000, richardson: bool = True) -> RotationEstimate:
    """Rotation number of the circle restriction, in [0, 1).

    Averages n lift increments from angle x0; with ``richardson`` the n and 2n
    estimates are extrapolated (2 rho_{2n} - rho_n), which empirically beats
    the raw O(1/n) error at critical circle maps.  The reported error keeps
    the universal bound 1/n.
    """
    if n < 1:
        raise DomainError(f"iterate count must be >= 1, got {n}")
    lift = _as_lift(B)
    base = _birkhoff(lift, x0, n)
    if not richardson or isinstance(lift, RigidRotation):
        return RotationEstimate(value=base, error=1.0 / n)
    doubled = _birkhoff(lift, x0, 2 * n)
    # extrapolate on the circle: correct the doubled estimate by the wrapped gap
    gap = (doubled - base + 0.5) % 1.0 - 0.5
    return RotationEstimate(value=(doubled + gap) % 1.0, error=1.0 / n)


def _circ_dist(a: float, b: float) -> float:
    """Distance mod 1."""
    return abs((a - b + 0.5) % 1.0 - 0.5)


@dataclass(frozen=True)
class TuneResult:
    t: float
    rho: float
    iterations: int
    bracket: tuple


def tune_prefactor(
    p: complex,
    q: complex,
    theta: RotationNumber,
    tol: float = 1e-4,
    n_final: int = 1_000_000,
    max_iter: int = 80,
) -> TuneResult:
    """Find t in [0, 2 pi) so e^{it} B_{p,q} has rotation number theta.

    The rotation number is nondecreasing in t and climbs by one full turn
    across [0, 2 pi), so after a coarse monotonicity scan the target is
    bisected.  Mode-locking plateaus make ties possible; a tie within the
    measurement error shrinks the bracket symmetrically instead of guessing
    a side.
    """
    if tol < 1e-6:
        raise DomainError(f"tolerance below 1e-6 is not resolvable here, got {tol}")
    if theta.exhausted:
        raise DomainError("theta is rational to float precision; tuning needs an irrational target")
    if not (0.0 < theta.value < 1.0):
        raise DomainError(f"theta must lie in (0,1), got {theta.value}")

    base = BlaschkeProduct(p, q, 0.0)
    CircleMapLift(base)  # homeomorphism check once; prefactors cannot break it

    coarse_n = 4000
    coarse_err = 1.0 / coarse_n
    grid_size = 64
    ts = [TWO_PI * k / grid_size for k in range(grid_size + 1)]
    vals = [
        _birkhoff(CircleMapLift(base.with_prefactor(t % TWO_PI), check=False), 0.0, coarse_n)
        for t in ts
    ]
    unwrapped = [vals[0]]
    shift = 0.0
    for v in vals[1:]:
        lifted = v + shift
        if lifted < unwrapped[-1] - 0.25:
            shift += 1.0
            lifted += 1.0
        unwrapped.append(lifted)
    if any(b < a - 2.0 * coarse_err for a, b in zip(unwrapped, unwrapped[1:])):
        raise ConvergenceError("rotation number failed the monotonicity scan in t")
    if not (0.9 < unwrapped[-1] - unwrapped[0] < 1.1):
        raise ConvergenceError("rotation number does not gain one turn across [0, 2 pi)")

    target = theta.value
    if target < unwrapped[0] - coarse_err:
        target += 1.0
    lo = hi = None
    for i in range(grid_size):
        if unwrapped[i] - coarse_err <= target <= unwrapped[i + 1] + coarse_err:
            lo, hi = ts[i], ts[i + 1]
            break
    if lo is None:
        raise ConvergenceError(
            f"coarse scan found no bracket for theta = {theta.value}",
            bracket=(ts[0], ts[-1]),
        )

    n = 50_000
    iterations = 0
    for iterations in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        lift = CircleMapLift(base.with_prefactor(mid % TWO_PI), check=False)
        rho = _birkhoff(lift, 0.0, n)
        err = 1.0 / n
        diff = (rho - theta.value + 0.5) % 1.0 - 0.5
        if abs(diff) <= max(0.25 * tol, 2.0 * err):
            if n < n_final:
                n = min(n_final, 4 * n)
                continue
            est = rotation_number(base.with_prefactor(mid % TWO_PI), n=n_final)
            if _circ_dist(est.value, theta.value) <= tol:
                return TuneResult(
                    t=mid % TWO_PI, rho=est.value, iterations=iterations, bracket=(lo, hi)
                )
        if abs(diff) <= 2.0 * err:
            # tie: the crossing is near mid but the sign is unreliable; shrink both sides
            quarter = 0.25 * (hi - lo)
            lo, hi = mid - quarter, mid + quarter
        elif diff > 0.0:
            hi = mid
        else:
            lo = mid
    raise ConvergenceError(
        f"prefactor tuning did not reach tol = {tol} within {max_iter} bisections",
        bracket=(lo, hi),
    )


@dataclass(frozen=True)
class ComparabilityRow:
    n: int
    q_n: int
    q_next: int
    backward_min: float
    backward_max: float
    step_min: float
    step_max: float


@dataclass(frozen=True)
class ComparabilityReport:
    """Closest-return length ratios along circle orbits of a tuned product.

    For each convergent denominator q_n the two ratio families are

        |G^{-q_n}(z) - z| / |G^{q_n}(z) - z|      (backward/forward)
        |G^{q_{n+1}}(z) - z| / |G^{q_n}(z) - z|   (consecutive returns)

    measured chordally at sampled circle points; both stay inside [1/K, K]
    for a K depending only on the rotation number.
    """

    rows: tuple
    samples: int
    comparability_constant: float
    failed_samples: int


def comparability_report(
    G: BlaschkeProduct, theta: RotationNumber, n_max: int, samples: int
) -> ComparabilityReport:
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    if samples < 0:
        raise DomainError(f"samples must be >= 0, got {samples}")
    if samples == 0:
        return ComparabilityReport(rows=(), samples=0, comparability_constant=float("nan"), failed_samples=0)
    convs = theta.convergents(n_max + 1)
    if len(convs) < n_max + 1:
        raise DomainError(
            f"need {n_max + 1} convergents but the expansion provides {len(convs)}"
        )
    lift = _as_lift(G)
    qs = [cv.q for cv in convs]

    def chord(x, y):
        return abs(cmath.rect(1.0, x) - cmath.rect(1.0, y))

    rows = []
    failed = 0
    xs = [TWO_PI * (j + 0.5) / samples for j in range(samples)]
    for n in range(1, n_max + 1):
        q_n, q_next = qs[n - 1], qs[n]
        b_ratios = []
        s_ratios = []
        for x in xs:
            try:
                fwd = lift.forward(x, q_n)
                fwd2 = lift.forward(fwd, q_next - q_n)
                bwd = lift.backward(x, q_n)
            except ConvergenceError:
                failed += 1
                continue
            denom = chord(fwd, x)
            if denom == 0.0:
                failed += 1
                continue
            b_ratios.append(chord(bwd, x) / denom)
            s_ratios.append(chord(fwd2, x) / denom)
        if not b_ratios:
            raise ConvergenceError(f"no usable samples at return index {n}")
        rows.append(
            ComparabilityRow(
                n=n,
                q_n=q_n,
                q_next=q_next,
                backward_min=min(b_ratios),
                backward_max=max(b_ratios),
                step_min=min(s_ratios),
                step_max=max(s_ratios),
            )
        )
    k = 1.0
    for row in rows:
        for r in (row.backward_min, row.backward_max, row.step_min, row.step_max):
            k = max(k, r, 1.0 / r)
    return ComparabilityReport(
        rows=tuple(rows),
        samples=samples,
        comparability_constant=k,
        failed_samples=failed,
    )
