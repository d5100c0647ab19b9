"""Continued-fraction arithmetic for bounded-type rotation numbers.

All angles theta live in (0,1) and are expanded as [a_1, a_2, ...] by the
Gauss map x -> 1/x - floor(1/x).  Extraction stops at the requested depth or
once the residual drops below the 64-bit noise floor, whichever comes first;
partial quotients past that point would be float garbage.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .errors import DomainError

# residual below this is indistinguishable from a rational in float64
NOISE_FLOOR = 1e-14

# convergent denominators past 1/sqrt(eps) no longer resolve theta in float64
_Q_LIMIT = 94906265


def continued_fraction(theta: float, depth: int) -> list[int]:
    """Partial quotients [a_1, ..., a_n] of theta, truncated at ``depth``."""
    terms, _ = _expand(theta, depth)
    return terms


def _expand(theta: float, depth: int) -> tuple[list[int], bool]:
    """Gauss-map expansion; second value reports rational-looking termination."""
    if not (0.0 < theta < 1.0):
        raise DomainError(f"theta must lie in (0,1), got {theta}")
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    terms: list[int] = []
    x = theta
    q_prev, q = 0, 1
    for _ in range(depth):
        if x < NOISE_FLOOR:
            return terms, True
        inv = 1.0 / x
        a = int(inv)
        if a < 1:  # cannot happen for x in (0,1) but guard float edge cases
            a = 1
        q_prev, q = q, a * q + q_prev
        if q > _Q_LIMIT:
            break
        terms.append(a)
        x = inv - a
    return terms, False


@dataclass(frozen=True)
class Convergent:
    """Best rational approximation p/q from a truncated expansion."""

    p: int
    q: int

    @property
    def value(self) -> float:
        return self.p / self.q

    def __repr__(self):
        return f"{self.p}/{self.q}"


def convergents(cf, n: int | None = None) -> list[Convergent]:
    """First n convergents p_k/q_k of the expansion ``cf``.

    Uses the standard two-term recurrence p_k = a_k p_{k-1} + p_{k-2} (same
    for q).  Asking for more terms than ``cf`` provides yields the truncated
    list and a warning.
    """
    cf = list(cf)
    if not cf:
        raise DomainError("empty continued fraction")
    if any(a < 1 for a in cf):
        raise DomainError("partial quotients must be positive integers")
    if n is None:
        n = len(cf)
    if n > len(cf):
        warnings.warn(
            f"requested {n} convergents but expansion has {len(cf)} terms; truncating",
            stacklevel=2,
        )
        n = len(cf)
    p_prev, p = 1, 0
    q_prev, q = 0, 1
    out = []
    for a in cf[:n]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append(Convergent(p, q))
    return out


def is_bounded_type(cf, bound: int) -> bool:
    """True iff every partial quotient is <= bound."""
    cf = list(cf)
    if not cf:
        raise DomainError("empty continued fraction")
    return max(cf) <= bound


def fold(cf) -> float:
    """Collapse an expansion back into a real in (0,1)."""
    x = 0.0
    for a in reversed(list(cf)):
        x = 1.0 / (a + x)
    return x


@dataclass(frozen=True)
class RotationNumber:
    """An irrational angle in (0,1) carried together with its expansion.

    Downstream code that needs closest-return denominators q_n reads ``cf``
    rather than re-expanding ``value``.  ``exhausted`` records that the Gauss
    map terminated below the noise floor, i.e. the value is rational as far
    as float64 can tell.
    """

    value: float
    cf: tuple[int, ...] = field(repr=False)
    bound: int
    exhausted: bool = False

    @classmethod
    def from_value(cls, theta: float, depth: int = 30) -> "RotationNumber":
        terms, exhausted = _expand(theta, depth)
        bound = max(terms) if terms else 0
        return cls(value=float(theta), cf=tuple(terms), bound=bound, exhausted=exhausted)

    @classmethod
    def golden(cls, depth: int = 40) -> "RotationNumber":
        """(sqrt(5)-1)/2, the canonical bounded-type angle; expansion all ones."""
        return cls(value=(math.sqrt(5.0) - 1.0) / 2.0, cf=(1,) * depth, bound=1)

    def convergents(self, n: int | None = None) -> list[Convergent]:
        return convergents(self.cf, n)

    def is_bounded_type(self, bound: int) -> bool:
        return is_bounded_type(self.cf, bound)

    def reconstruct(self, n: int | None = None) -> float:
        """Value folded back from the first n partial quotients."""
        if n is None:
            n = len(self.cf)
        return fold(self.cf[:n])
