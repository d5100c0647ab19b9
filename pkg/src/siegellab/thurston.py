"""Combinatorial obstruction matrices and orbifold Euler characteristics.

The input is pure combinatorics: for each curve class j, the non-peripheral
preimage components listed as (class i, covering degree d).  The transition
matrix a_{ij} = sum over those components of 1/d is nonnegative, and the
family is obstructed exactly when its spectral radius reaches 1.  The tool
never computes preimages of actual branched covers; specs are user-supplied.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError, DomainError


@dataclass(frozen=True)
class MulticurveSpec:
    """n curve classes; preimages holds (target j, class i, degree d), 1-based."""

    n: int
    preimages: tuple

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"need at least one curve class, got n = {self.n}")
        for entry in self.preimages:
            j, i, d = entry
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise DomainError(f"curve index out of range in entry {entry}")
            if d < 1 or int(d) != d:
                raise DomainError(f"covering degree must be a positive integer in {entry}")

    @classmethod
    def from_json(cls, text: str) -> "MulticurveSpec":
        data = json.loads(text)
        return cls(n=int(data["n"]), preimages=tuple(tuple(e) for e in data["preimages"]))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "preimages": [list(e) for e in self.preimages]})


def symmetric_double(spec: MulticurveSpec) -> MulticurveSpec:
    """Duplicate a family into two non-interacting mirror copies.

    The doubled transition matrix is block diagonal with two copies of the
    original block, so the leading eigenvalue is unchanged.
    """
    shifted = tuple((j + spec.n, i + spec.n, d) for (j, i, d) in spec.preimages)
    return MulticurveSpec(n=2 * spec.n, preimages=spec.preimages + shifted)


@dataclass(frozen=True)
class ThurstonMatrix:
    a: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.a, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DomainError("transition matrix must be square")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise DomainError("transition matrix entries must be finite and nonnegative")
        object.__setattr__(self, "a", arr)

    @property
    def n(self) -> int:
        return self.a.shape[0]


def thurston_matrix(spec: MulticurveSpec) -> ThurstonMatrix:
    """a_{ij} = sum of 1/d over preimage components of curve j in class i."""
    a = np.zeros((spec.n, spec.n))
    for j, i, d in spec.preimages:
        a[i - 1, j - 1] += 1.0 / d
    return ThurstonMatrix(a)


@dataclass(frozen=True)
class SpectralResult:
    value: float
    obstructed: bool  # leading eigenvalue >= 1
    iterations: int


def leading_eigenvalue(
    A: ThurstonMatrix, tol: float = 1e-13, max_iter: int = 20_000
) -> SpectralResult:
    """Spectral radius of a nonnegative matrix by shifted power iteration.

    Iterates the all-ones vector under A + I and tracks the sup-norm growth;
    the shift makes the dominant eigenvalue of the nonnegative iteration
    matrix unique in modulus, so the growth ratio converges to 1 + rho(A).

    When the dominant part is defective the ratio only closes like 1/k, so
    after the iteration budget the estimate is finished off by norm doubling
    (repeated squaring of the normalized matrix), which is insensitive to
    Jordan structure.
    """
    mat = A.a if isinstance(A, ThurstonMatrix) else ThurstonMatrix(A).a
    n = mat.shape[0]
    shifted = mat + np.eye(n)
    v = np.ones(n)
    prev = math.inf
    stable = 0
    for it in range(1, max_iter + 1):
        u = shifted @ v
        lam = float(np.max(np.abs(u)))
        if lam == 0.0:  # cannot happen with the shift, but keep the guard
            return SpectralResult(value=0.0, obstructed=False, iterations=it)
        v = u / lam
        if abs(lam - prev) <= tol * max(1.0, lam):
            stable += 1
            if stable >= 3:
                rho = lam - 1.0
                return SpectralResult(value=rho, obstructed=rho >= 1.0, iterations=it)
        else:
            stable = 0
        prev = lam
    rho = _radius_by_norm_doubling(shifted) - 1.0
    if not math.isfinite(rho):
        raise ConvergenceError(
            f"power iteration did not stabilize within {max_iter} iterations"
        )
    return SpectralResult(value=rho, obstructed=rho >= 1.0, iterations=max_iter)


def _radius_by_norm_doubling(m: np.ndarray, steps: int = 60) -> float:
    """rho(m) from ||m^(2^k)||^(1/2^k); exact to rounding for nonnegative m."""
    acc = 0.0
    weight = 1.0
    for _ in range(steps):
        s = float(np.abs(m).sum(axis=1).max())
        if s == 0.0:
            return 0.0
        acc += weight * math.log(s)
        m = (m / s) @ (m / s)
        weight /= 2.0
    return math.exp(acc)


@dataclass(frozen=True)
class OrbifoldSignature:
    """Ramification values nu >= 2; math.inf marks a puncture-type point."""

    nu: tuple

    def __post_init__(self):
        if not self.nu:
            raise DomainError("orbifold signature must be nonempty")
        for v in self.nu:
            if v == math.inf:
                continue
            if int(v) != v or v < 2:
                raise DomainError(f"signature entries must be integers >= 2 or inf, got {v}")


@dataclass(frozen=True)
class OrbifoldResult:
    chi: Fraction
    hyperbolic: bool


def orbifold_euler(sig: OrbifoldSignature) -> OrbifoldResult:
    """chi = 2 - sum(1 - 1/nu), with 1/inf = 0; hyperbolic iff chi < 0.

    Exact rational arithmetic, so the standard boundary cases (chi = 0)
    compare cleanly.
    """
    if not isinstance(sig, OrbifoldSignature):
        sig = OrbifoldSignature(tuple(sig))
    chi = Fraction(2)
    for v in sig.nu:
        if v == math.inf:
            chi -= 1
        else:
            chi -= 1 - Fraction(1, int(v))
    return OrbifoldResult(chi=chi, hyperbolic=chi < 0)
