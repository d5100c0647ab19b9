"""Symmetric degree-3 Blaschke products and their critical parameterization.

The family is

    B_{p,q}(z) = e^{it} z (z - p)/(1 - conj(p) z) (z - q)/(1 - conj(q) z),
    |p| > 1 > |q|,

which commutes with reflection in the unit circle.  The subfamily of interest
has a double critical point at 1 and a symmetric pair of free critical points
c, 1/conj(c); :func:`phi_inverse` reconstructs (p, q) from c in closed form.

Writing v = pq and w = p + q, the numerator of B' is the quartic

    conj(v) z^4 - 2 conj(w) z^3 + (3 + |w|^2 - |v|^2) z^2 - 2 w z + v,

and demanding it factor as conj(v)(z-1)^2 (z-c)(z - 1/conj(c)) pins |v| down
to the positive roots of a real quadratic.  With

    t = (2 + c + 1/conj(c))/2,   s = 1 + c/conj(c) + 2(c + 1/conj(c)),
    disc = |s|^2 - 12(|t|^2 - 1) = |c + 1/c - 2|^2,

the admissible branches are

    sign(|t|^2 - 1) > 0:  v = +c|v|/|c|,  |v| = (|s| -+ |c + 1/c - 2|) / (2(|t|^2 - 1))
    sign(|t|^2 - 1) < 0:  v = +c|v|/|c|,  |v| = (|s| - |c + 1/c - 2|) / (2(|t|^2 - 1))
                          v = -c|v|/|c|,  |v| = (-|s| - |c + 1/c - 2|) / (2(|t|^2 - 1))
    |t| = 1:              the quadratic degenerates; |v| = 3/|s| (limit of the
                          small-|v| branch)

and w follows from conj(w) = t conj(v).  Only the larger-|v| branch on the
|t| > 1 side yields |p| > 1 > |q|.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, LabelingError
from .plane import INF, is_inf

# two quartic roots closer than this are treated as one double root
_CLUSTER_TOL = 1e-5


@dataclass(frozen=True)
class BlaschkeProduct:
    """e^{it} z (z-p)(z-q) / ((1 - conj(p) z)(1 - conj(q) z)) with |p| > 1 > |q|."""

    p: complex
    q: complex
    prefactor_angle: float = 0.0

    def __post_init__(self):
        if abs(self.p) <= 1.0:
            raise LabelingError(f"|p| must exceed 1, got |p| = {abs(self.p)}")
        if abs(self.q) >= 1.0:
            raise LabelingError(f"|q| must be below 1, got |q| = {abs(self.q)}")
        if not 0.0 <= self.prefactor_angle < 2.0 * math.pi:
            raise DomainError("prefactor angle must lie in [0, 2 pi)")

    @property
    def v(self) -> complex:
        return self.p * self.q

    @property
    def w(self) -> complex:
        return self.p + self.q

    @property
    def prefactor(self) -> complex:
        return cmath.exp(1j * self.prefactor_angle)

    def with_prefactor(self, t: float) -> "BlaschkeProduct":
        return BlaschkeProduct(self.p, self.q, t % (2.0 * math.pi))

    def __call__(self, z):
        if is_inf(z):
            return INF
        den = (1.0 - self.p.conjugate() * z) * (1.0 - self.q.conjugate() * z)
        if den == 0:
            return INF
        w = self.prefactor * z * (z - self.p) * (z - self.q) / den
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            return INF
        return w

    def derivative(self, z: complex) -> complex:
        """B'(z) via the quartic numerator over (conj(v) z^2 - conj(w) z + 1)^2."""
        c4, c3, c2, c1, c0 = self.quartic_coefficients()
        num = (((c4 * z + c3) * z + c2) * z + c1) * z + c0
        den = (self.v.conjugate() * z - self.w.conjugate()) * z + 1.0
        if den == 0:
            raise DomainError(f"derivative requested at a pole, z = {z}")
        return self.prefactor * num / (den * den)

    def quartic_coefficients(self):
        """Coefficients (z^4 .. z^0) of the numerator of B' for prefactor 1."""
        v, w = self.v, self.w
        return (
            v.conjugate(),
            -2.0 * w.conjugate(),
            3.0 + abs(w) ** 2 - abs(v) ** 2,
            -2.0 * w,
            v,
        )

    def circle_derivative(self, alpha: float) -> float:
        """d/d alpha of the lifted circle restriction at angle alpha.

        1 + (1-|q|^2)/|1 - conj(q) e^{i a}|^2 + (1-|p|^2)/|1 - conj(p) e^{i a}|^2;
        nonnegative exactly when the restriction is a homeomorphism.
        """
        z = cmath.rect(1.0, alpha)
        tq = 1.0 - self.q.conjugate() * z
        tp = 1.0 - self.p.conjugate() * z
        return (
            1.0
            + (1.0 - abs(self.q) ** 2) / (tq.real * tq.real + tq.imag * tq.imag)
            + (1.0 - abs(self.p) ** 2) / (tp.real * tp.real + tp.imag * tp.imag)
        )


@dataclass(frozen=True)
class CriticalData:
    """Intermediate quantities tying the free critical point c to (v, w)."""

    c: complex
    t_half: complex
    s: complex
    v: complex
    w: complex

    @classmethod
    def from_c(cls, c: complex) -> "CriticalData":
        """Populate along the branch used by :func:`phi_inverse` (|t| > 1, larger |v|)."""
        t, s, edge = _t_s_edge(c)
        disc = abs(t) ** 2 - 1.0
        if disc <= 0:
            raise DomainError(f"c = {c} lies outside the admissible region (|t| <= 1)")
        vmag = (abs(s) + edge) / (2.0 * disc)
        v = c * (vmag / abs(c))
        w = (t * v.conjugate()).conjugate()
        return cls(c=c, t_half=t, s=s, v=v, w=w)


def _t_s_edge(c: complex):
    c = complex(c)
    if c == 0:
        raise DomainError("c must be nonzero")
    t = (2.0 + c + 1.0 / c.conjugate()) / 2.0
    s = 1.0 + c / c.conjugate() + 2.0 * (c + 1.0 / c.conjugate())
    edge = abs(c + 1.0 / c - 2.0)  # sqrt of |s|^2 - 12(|t|^2 - 1)
    return t, s, edge


def in_region_U(c) -> bool:
    """Membership in the parameter region covered by the family.

    The locus |t| = 1 splits the outside of the closed unit disk in two; the
    component containing 2 and infinity is exactly |t| > 1.
    """
    if is_inf(c):
        return True
    c = complex(c)
    if abs(c) <= 1.0:
        raise DomainError(f"region test needs |c| > 1, got |c| = {abs(c)}")
    t, _, _ = _t_s_edge(c)
    return abs(t) > 1.0


@dataclass(frozen=True)
class Branch:
    """One admissible solution branch: |v| root, its direction, and the root pair."""

    label: str
    v: complex
    w: complex
    roots: tuple


def _quadratic_roots(w: complex, v: complex):
    """Roots of x^2 - w x + v = 0 (p + q = w, p q = v), cancellation-safe."""
    disc = cmath.sqrt(w * w - 4.0 * v)
    if (w.conjugate() * disc).real < 0.0:
        disc = -disc
    r1 = (w + disc) / 2.0
    r2 = v / r1 if r1 != 0 else (w - disc) / 2.0
    return (r1, r2)


def all_branches(c) -> list[Branch]:
    """Every admissible (|v|, v-direction) branch at c with its quadratic roots.

    Positive-direction branches (v = +c|v|/|c|) come first, ordered by |v|;
    on the |t| = 1 locus the quadratic degenerates to a linear equation and a
    single branch survives.
    """
    c = complex(c)
    if abs(c) <= 1.0:
        raise DomainError(f"branches need |c| > 1, got |c| = {abs(c)}")
    if c == 1.0:
        raise DomainError("c = 1 is excluded")
    t, s, edge = _t_s_edge(c)
    disc = abs(t) ** 2 - 1.0
    out: list[Branch] = []

    def add(label: str, vmag: float, direction: int):
        if vmag <= 0 or not math.isfinite(vmag):
            return
        v = direction * c * (vmag / abs(c))
        w = (t * v.conjugate()).conjugate()
        out.append(Branch(label=label, v=v, w=w, roots=_quadratic_roots(w, v)))

    if disc > 0:
        add("small", (abs(s) - edge) / (2.0 * disc), +1)
        add("large", (abs(s) + edge) / (2.0 * disc), +1)
    elif disc < 0:
        add("small", (abs(s) - edge) / (2.0 * disc), +1)
        add("flipped", (-abs(s) - edge) / (2.0 * disc), -1)
    else:
        add("linear", 3.0 / abs(s), +1)
    return out


def phi_inverse(c) -> BlaschkeProduct:
    """The member of the family whose free critical point is c (prefactor 0).

    Closed-form inversion of the critical-point parameterization: the unique
    pair |p| > 1 > |q| whose product has a double critical point at 1 and
    simple critical points at c and 1/conj(c).  c = INF gives the polynomial
    limit pair (3, 0).
    """
    if is_inf(c):
        return BlaschkeProduct(3.0 + 0.0j, 0.0 + 0.0j, 0.0)
    c = complex(c)
    if abs(c) <= 1.0 or not in_region_U(c):
        raise DomainError(f"c = {c} lies outside the covered parameter region")
    data = CriticalData.from_c(c)
    r1, r2 = _quadratic_roots(data.w, data.v)
    p, q = (r1, r2) if abs(r1) >= abs(r2) else (r2, r1)
    if not (abs(p) > 1.0 > abs(q)):
        raise LabelingError(
            f"root pair ({p}, {q}) does not straddle the unit circle for c = {c}"
        )
    return BlaschkeProduct(p, q, 0.0)


def gamma_curve(n: int) -> np.ndarray:
    """n samples of the boundary locus |t| = 1 outside the unit disk.

    Parameterized as r e^{i u} with r + 1/r + 4 cos(u) = 0, r > 1, for u in
    (2 pi/3, 4 pi/3); the endpoints collapse onto e^{+- 2 pi i/3} as r -> 1.
    """
    if n < 2:
        raise DomainError(f"need at least 2 samples, got {n}")
    u = np.linspace(2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0, n + 2)[1:-1]
    cos_u = np.cos(u)
    r = -2.0 * cos_u + np.sqrt(4.0 * cos_u**2 - 1.0)
    return r * np.exp(1j * u)


@dataclass(frozen=True)
class CriticalPointReport:
    """Root certificate for the derivative numerator of a constructed product."""

    c: object  # complex or INF
    roots: tuple
    expected: tuple
    max_residual: float


def _cluster_roots(roots, tol=_CLUSTER_TOL):
    """Replace near-coincident root pairs by their mean.

    A double root splits by ~sqrt(eps) under coefficient rounding while the
    pair's mean stays O(eps) accurate, so clustering restores the attainable
    precision of the certificate.
    """
    roots = list(roots)
    used = [False] * len(roots)
    out = []
    for i, r in enumerate(roots):
        if used[i]:
            continue
        group = [r]
        used[i] = True
        for j in range(i + 1, len(roots)):
            if not used[j] and abs(roots[j] - r) < tol:
                group.append(roots[j])
                used[j] = True
        center = sum(group) / len(group)
        out.extend([center] * len(group))
    return out


def verify_critical_points(B: BlaschkeProduct, c=None) -> CriticalPointReport:
    """Check that B' vanishes exactly at {1 (double), c, 1/conj(c)}.

    Roots come from the explicit quartic coefficients; when ``c`` is omitted
    it is read off as the largest-modulus root away from 1.  For the
    polynomial limit (q = 0) the quartic drops degree and the free critical
    point sits at infinity.
    """
    coeffs = np.array(B.quartic_coefficients(), dtype=complex)
    roots = _cluster_roots(np.roots(coeffs))
    at_infinity = B.q == 0
    if c is None:
        if at_infinity:
            c = INF
        else:
            away = [r for r in roots if abs(r - 1.0) > 1e-3]
            if not away:
                raise DomainError("cannot infer the free critical point: all roots sit at 1")
            c = max(away, key=abs)
    if is_inf(c):
        expected = (1.0 + 0.0j, 1.0 + 0.0j, 0.0 + 0.0j)
    else:
        expected = (1.0 + 0.0j, 1.0 + 0.0j, complex(c), 1.0 / complex(c).conjugate())
    if len(roots) != len(expected):
        raise DomainError(
            f"expected {len(expected)} finite critical points, found {len(roots)}"
        )
    residual = min(
        max(abs(r - e) for r, e in zip(perm, expected))
        for perm in itertools.permutations(roots)
    )
    return CriticalPointReport(
        c=c, roots=tuple(roots), expected=expected, max_residual=float(residual)
    )
