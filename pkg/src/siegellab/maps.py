"""The normalized quadratic family with an irrationally indifferent fixed point.

Every map here fixes 0 with multiplier e^{2 pi i theta}, fixes infinity, and
has critical points at 1 and at the free parameter c:

    g(z) = (a z^2 + e^{2 pi i theta} z) / (b z + 1),
    a = -e^{2 pi i theta} (1+c) / (2c),    b = -2 / (1+c).

The parameter c = INF is first class and selects the quadratic polynomial
limit g(z) = e^{2 pi i theta} (z - z^2/2); the whole family degenerates at
c in {0, 1, -1}, which are rejected.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass

from .cfrac import RotationNumber
from .errors import DomainError, PoleError
from .plane import INF, is_inf, point_fields

# parameters closer than this to {0, 1, -1} blow up the coefficients
DEGENERACY_RADIUS = 1e-9


def multiplier(theta: RotationNumber) -> complex:
    return cmath.exp(2j * math.pi * theta.value)


@dataclass(frozen=True)
class QuadraticSiegelMap:
    """Immutable map (a z^2 + lam z)/(b z + 1); use :func:`make_map` to build."""

    c: object  # complex or INF
    theta: RotationNumber
    a: complex
    b: complex
    lam: complex

    def __call__(self, z):
        """Evaluate with exact pole handling; the pole and infinity map to INF."""
        if is_inf(z):
            return INF
        den = self.b * z + 1.0
        if den == 0:
            return INF
        w = (self.a * z * z + self.lam * z) / den
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            # float overflow: the iterate left double range, treat as infinity
            return INF
        return w

    def derivative(self, z: complex) -> complex:
        """g'(z) = (a b z^2 + 2 a z + lam)/(b z + 1)^2."""
        if is_inf(z):
            raise DomainError("derivative is only defined for finite z")
        den = self.b * z + 1.0
        if den == 0:
            raise PoleError(f"derivative requested at the pole z = {z}")
        return (self.a * self.b * z * z + 2.0 * self.a * z + self.lam) / (den * den)

    def pole(self):
        """The finite pole -1/b, or INF for the polynomial limit (b = 0)."""
        if self.b == 0:
            return INF
        return -1.0 / self.b

    def critical_points(self):
        return (1.0 + 0.0j, self.c)

    def fixed_points(self):
        """(0, INF, p) where p = (1 - lam)/(a - b) solves g(z) = z.

        Raises DomainError when p numerically collides with 0 or infinity
        (the map then has a multiple fixed point there).
        """
        d = self.a - self.b
        if d == 0:
            raise DomainError("coincident fixed points: the finite fixed point merged with infinity")
        p = (1.0 - self.lam) / d
        if not (math.isfinite(p.real) and math.isfinite(p.imag)) or abs(p) > 1e12:
            raise DomainError("coincident fixed points: the finite fixed point merged with infinity")
        if abs(p) < 1e-12:
            raise DomainError("coincident fixed points: the finite fixed point merged with 0")
        return (0.0 + 0.0j, INF, p)

    def orbit(self, z0, n: int) -> "Orbit":
        """z0, g(z0), ..., g^n(z0); stops early once an iterate hits INF."""
        if n < 1:
            raise DomainError(f"orbit length must be >= 1, got {n}")
        pts = [z0 if is_inf(z0) else complex(z0)]
        hit = is_inf(z0)
        z = pts[0]
        for _ in range(n):
            z = self(z)
            pts.append(z)
            if is_inf(z):
                hit = True
                break
        return Orbit(points=pts, hit_infinity=hit)


@dataclass(frozen=True)
class Orbit:
    points: list
    hit_infinity: bool

    def __len__(self):
        return len(self.points)

    def write_csv(self, path):
        """Columns index,re,im; an infinite iterate is the literal row inf,inf."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["index", "re", "im"])
            for k, z in enumerate(self.points):
                writer.writerow([str(k), *point_fields(z)])


def make_map(c, theta: RotationNumber) -> QuadraticSiegelMap:
    """Build the family member with free critical point c.

    c may be complex or INF; values within DEGENERACY_RADIUS of {0, 1, -1}
    are rejected since the coefficients blow up there.
    """
    lam = multiplier(theta)
    if is_inf(c):
        return QuadraticSiegelMap(c=INF, theta=theta, a=-lam / 2.0, b=0.0 + 0.0j, lam=lam)
    c = complex(c)
    if min(abs(c), abs(c - 1.0), abs(c + 1.0)) < DEGENERACY_RADIUS:
        raise DomainError(f"degenerate critical parameter c = {c}; c must avoid {{0, 1, -1}}")
    a = -lam * (1.0 + c) / (2.0 * c)
    b = -2.0 / (1.0 + c)
    return QuadraticSiegelMap(c=c, theta=theta, a=a, b=b, lam=lam)


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (a z + b)/(c z + d) acting on the extended plane, ad - bc != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0:
            raise DomainError("Moebius matrix must have nonzero determinant")

    def __call__(self, z):
        if is_inf(z):
            if self.c == 0:
                return INF
            return self.a / self.c
        den = self.c * z + self.d
        if den == 0:
            return INF
        return (self.a * z + self.b) / den

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def to_zero_one_inf(cls, z1, z2, z3) -> "MoebiusMap":
        """The unique map sending (z1, z2, z3) to (0, 1, INF)."""
        if is_inf(z1):
            return cls(0.0, z2 - z3, 1.0, -z3)
        if is_inf(z2):
            return cls(1.0, -z1, 1.0, -z3)
        if is_inf(z3):
            return cls(1.0, -z1, 0.0, z2 - z1)
        return cls(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def normalizing_moebius(g: QuadraticSiegelMap, case: int) -> MoebiusMap:
    """The four renormalizing changes of coordinates for a family member.

    Each sends 0 to 0, one critical point to 1, and one nonzero fixed point
    to infinity:

    1. identity,
    2. (0, 1, p) -> (0, 1, inf), i.e. z -> (1-p) z / (z - p),
    3. z -> z / c,
    4. (0, c, p) -> (0, 1, inf).
    """
    if case == 1:
        return MoebiusMap.identity()
    if case == 3:
        if is_inf(g.c):
            raise DomainError("case 3 needs a finite critical parameter")
        return MoebiusMap(1.0, 0.0, 0.0, g.c)
    p = g.fixed_points()[2]
    if case == 2:
        return MoebiusMap.to_zero_one_inf(0.0, 1.0, p)
    if case == 4:
        if is_inf(g.c):
            raise DomainError("case 4 needs a finite critical parameter")
        return MoebiusMap.to_zero_one_inf(0.0, g.c, p)
    raise DomainError(f"case must be one of 1..4, got {case}")


def conjugate_by(g: QuadraticSiegelMap, m: MoebiusMap, tol: float = 1e-8) -> QuadraticSiegelMap:
    """Renormalize g by the Moebius change of coordinates m.

    m must send 0 to 0, one critical point of g to 1, and a fixed point of g
    to infinity; the result is the family member whose free critical point is
    the image of the other critical point.
    """
    if not is_inf(m(0.0)) and abs(m(0.0)) > tol:
        raise DomainError("Moebius map does not fix 0")
    zero, inf_, p = g.fixed_points()
    sends_fixed_to_inf = any(
        is_inf(m(f)) or abs(m(f)) > 1.0 / tol for f in (inf_, p)
    )
    if not sends_fixed_to_inf:
        raise DomainError("Moebius map does not send a fixed point of g to infinity")

    images = [m(w) for w in g.critical_points()]
    new_c = None
    for i, img in enumerate(images):
        if not is_inf(img) and abs(img - 1.0) < tol:
            new_c = images[1 - i]
            break
    if new_c is None:
        raise DomainError("Moebius map does not send a critical point of g to 1")

    h = make_map(new_c, g.theta)
    # cross-check the conjugation numerically on a few probe points
    minv = m.inverse()
    for z in (0.37 + 0.21j, -0.8 + 1.1j, 2.4 - 0.6j):
        direct = h(z)
        via = m(g(minv(z)))
        if is_inf(direct) or is_inf(via):
            continue
        if abs(direct - via) > 1e-6 * (1.0 + abs(direct)):
            raise DomainError("conjugated map is not in the normalized family")
    return h


def tilde_parameter(c, theta: RotationNumber):
    """Parameter of the partner map obtained by sending the extra fixed point to infinity.

    Closed form ((lam-2) c + lam)/(-lam c + 2 - lam) with lam = e^{2 pi i theta};
    equals the image of c under the case-2 renormalization.
    """
    lam = multiplier(theta)
    if is_inf(c):
        return (lam - 2.0) / (-lam)
    num = (lam - 2.0) * c + lam
    den = -lam * c + 2.0 - lam
    if den == 0:
        return INF
    return num / den


def parameter_involution(c, theta: RotationNumber):
    """c -> 1/tilde(c); applying it twice returns c."""
    t = tilde_parameter(c, theta)
    if is_inf(t):
        return 0.0 + 0.0j
    if t == 0:
        return INF
    return 1.0 / t


def fixed_point_formula(c, theta: RotationNumber) -> complex:
    """Closed form for the finite fixed point, p = 2c(1+c)(1-lam)/(4c - lam(1+c)^2)."""
    lam = multiplier(theta)
    c = complex(c)
    return (1.0 - lam) * 2.0 * c * (1.0 + c) / (4.0 * c - lam * (1.0 + c) ** 2)
