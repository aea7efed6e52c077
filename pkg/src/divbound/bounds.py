"""Closed-form tight lower bounds at fixed total variation distance.

For a symmetric f-divergence the infimum over all pairs at total variation
distance eps has the closed form

    (1 - eps) f((1 + eps) / (1 - eps)) - a eps,

with a the symmetry constant (a = 2 f'(1) for smooth f).  Specializations:

    Bhattacharyya coefficient:  1 - eps <= Z <= sqrt(1 - eps^2)
    Chernoff information:       -1/2 log(1 - eps^2),  +inf at eps = 1
    capacitory discrimination:  2 d((1-eps)/2 || 1/2)         on [0, 1)
    Jeffreys divergence:        eps log((1+eps)/(1-eps))      on [0, 1)

The relative entropy is asymmetric; its exact infimum curve L(eps) is the
minimum of a binary relative entropy over a one-dimensional family, computed
numerically, together with the two monotone inverses needed by the
source-coding bounds.  Each bound is attained by an explicit 2- or 3-element
pair, see :func:`extremal_pair`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import DEFAULT_TOLS
from .dist import FiniteDist, binary_divergence, make_dist
from .errors import DivboundError
from .generators import REGISTRY, FGenerator
from .search import bisect_increasing, golden_section_min

__all__ = [
    "ExtremalPair",
    "BoundCurve",
    "symmetric_fdiv_min",
    "bhattacharyya_bounds",
    "chernoff_min",
    "capacitory_min",
    "jeffreys_min",
    "exact_kl_min",
    "inverse_exact_kl",
    "inverse_jeffreys",
    "extremal_pair",
    "CURVE_MEASURES",
    "bound_curve",
]

PAIR_KINDS = ("two_point", "three_point")


@dataclass(frozen=True)
class ExtremalPair:
    """The 2- or 3-element pair attaining a tight bound at distance eps."""

    p: FiniteDist
    q: FiniteDist
    eps: float
    kind: str


def extremal_pair(eps: float, kind: str) -> ExtremalPair:
    """Construct the designated bound-attaining pair at total variation eps.

    two_point:    P = ((1-eps)/2, (1+eps)/2), Q mirrored.
    three_point:  P = (eps, 1-eps, 0),        Q = (0, 1-eps, eps).
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps={eps!r} outside [0, 1]")
    if kind == "two_point":
        lo, hi = (1.0 - eps) / 2.0, (1.0 + eps) / 2.0
        p = make_dist(("x1", "x2"), (lo, hi))
        q = make_dist(("x1", "x2"), (hi, lo))
    elif kind == "three_point":
        p = make_dist(("x1", "x2", "x3"), (eps, 1.0 - eps, 0.0))
        q = make_dist(("x1", "x2", "x3"), (0.0, 1.0 - eps, eps))
    else:
        raise ValueError(f"kind={kind!r}, expected one of {PAIR_KINDS}")
    return ExtremalPair(p, q, eps, kind)


def symmetric_fdiv_min(gen: FGenerator, eps: float) -> float:
    """Infimum of a symmetric f-divergence at total variation eps.

    Requires a generator with a symmetry constant.  At eps = 1 the formula
    degenerates to 0 * inf; the limit equals 2 slope_at_inf - a and is
    returned as an extended real.
    """
    if gen.symmetry_constant is None:
        raise ValueError(f"{gen.name} is not symmetric; the closed form needs a")
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps={eps!r} outside [0, 1]")
    a = gen.symmetry_constant
    if eps == 1.0:
        if gen.slope_at_inf is None:
            raise ValueError(f"{gen.name}: slope_at_inf needed at eps = 1")
        if math.isinf(gen.slope_at_inf):
            return math.inf
        return 2.0 * gen.slope_at_inf - a
    return float((1.0 - eps) * gen.fn((1.0 + eps) / (1.0 - eps)) - a * eps)


def bhattacharyya_bounds(eps: float) -> tuple[float, float]:
    """Tight (lower, upper) bounds on the Bhattacharyya coefficient."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps={eps!r} outside [0, 1]")
    return 1.0 - eps, math.sqrt(max(0.0, (1.0 - eps) * (1.0 + eps)))


def chernoff_min(eps: float) -> float:
    """Minimum Chernoff information at total variation eps; +inf at eps = 1."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps={eps!r} outside [0, 1]")
    if eps == 1.0:
        return math.inf
    return -0.5 * math.log1p(-eps * eps)


def capacitory_min(eps: float) -> float:
    """Minimum capacitory discrimination at total variation eps, eps in [0, 1).

    The closed form is 2 d((1-eps)/2 || 1/2); its limit as eps -> 1 is
    2 log 2, but eps = 1 itself is outside the domain.
    """
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"eps={eps!r} outside [0, 1)")
    return 2.0 * binary_divergence((1.0 - eps) / 2.0, 0.5)


def jeffreys_min(eps: float) -> float:
    """Minimum Jeffreys divergence at total variation eps, eps in [0, 1)."""
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"eps={eps!r} outside [0, 1)")
    if eps == 0.0:
        return 0.0
    return eps * (math.log1p(eps) - math.log1p(-eps))


def _kl_at_offset(eps: float, beta: float) -> float:
    # Relative entropy of the binary pair ((1+eps-b)/2, ...) vs ((1-eps-b)/2, ...),
    # the family whose minimum over b is the exact curve L(eps).
    p = 0.5 * (1.0 + eps - beta)
    q = 0.5 * (1.0 - eps - beta)
    t1 = p * math.log(p / q) if p > 0.0 else 0.0
    t2 = (1.0 - p) * math.log((1.0 - p) / (1.0 - q)) if p < 1.0 else 0.0
    return t1 + t2


def exact_kl_min(eps: float, tol: float = DEFAULT_TOLS.search) -> float:
    """Exact infimum L(eps) of the relative entropy at total variation eps.

    Minimizes the binary-pair expression over the offset restricted to
    [eps - 1, 0] by golden section to bracket width tol.  The restriction to
    the nonpositive half is validated against the full interval in the test
    suite.  The result always dominates the quadratic 2 eps^2.
    """
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"eps={eps!r} outside [0, 1)")
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    if eps == 0.0:
        return 0.0

    def inner(beta):
        b = np.asarray(beta, dtype=float)
        if b.ndim == 0:
            return _kl_at_offset(eps, float(b))
        return np.array([_kl_at_offset(eps, float(x)) for x in b])

    _, val = golden_section_min(inner, eps - 1.0, 0.0, tol=tol)
    return float(val)


def inverse_exact_kl(x: float, tol: float = 1e-9) -> float:
    """The eps in [0, 1) with exact_kl_min(eps) = x, residual at most tol.

    Monotone bisection; x beyond the representable range saturates toward 1.
    """
    if x < 0.0:
        raise ValueError(f"x={x!r} must be nonnegative")
    if x == 0.0:
        return 0.0
    hi = 1.0 - 1e-9
    return bisect_increasing(lambda e: exact_kl_min(e, tol=min(tol, 1e-10)),
                             0.0, hi, x, tol=tol)


def inverse_jeffreys(x: float, tol: float = 1e-12) -> float:
    """The eps in [0, 1) solving eps log((1+eps)/(1-eps)) = x, by bisection.

    For x near 0 the solution behaves like sqrt(x / 2).
    """
    if x < 0.0:
        raise ValueError(f"x={x!r} must be nonnegative")
    if x == 0.0:
        return 0.0
    hi = 1.0 - 1e-12
    return bisect_increasing(jeffreys_min, 0.0, hi, x, tol=tol)


@dataclass(frozen=True)
class BoundCurve:
    """A named, tabulated (eps, value) curve; CSV-serializable."""

    name: str
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(e), float(v)) for e, v in self.points)
        eps = [e for e, _ in pts]
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise DivboundError(f"curve {self.name!r}: grid not strictly increasing")
        for e, v in pts:
            if not math.isfinite(v) and e != 1.0:
                raise DivboundError(
                    f"curve {self.name!r}: non-finite value {v!r} at eps={e!r} < 1"
                )
        object.__setattr__(self, "points", pts)

    def eps_grid(self) -> np.ndarray:
        return np.array([e for e, _ in self.points])

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.points])

    def to_csv(self) -> str:
        from .textio import fmt_g12

        lines = ["eps,value"]
        lines += [f"{fmt_g12(e)},{fmt_g12(v)}" for e, v in self.points]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, name: str, text: str) -> "BoundCurve":
        rows = [r for r in text.strip().splitlines() if r]
        if not rows or rows[0] != "eps,value":
            raise DivboundError("expected an 'eps,value' CSV header")
        pts = []
        for r in rows[1:]:
            e, v = r.split(",")
            pts.append((float(e), float(v)))
        return cls(name, tuple(pts))


def _curve_via_generator(gen_name: str) -> Callable[[float], float]:
    gen = REGISTRY[gen_name]
    return lambda eps: symmetric_fdiv_min(gen, eps)


# eps -> closed-form value, extended reals allowed at eps = 1 only
CURVE_MEASURES: dict[str, Callable[[float], float]] = {
    "tv": _curve_via_generator("total_variation"),
    "hellinger2": _curve_via_generator("squared_hellinger"),
    "jeffreys": _curve_via_generator("jeffreys"),
    "capacitory": _curve_via_generator("capacitory"),
    "chernoff": chernoff_min,
    "bhattacharyya_lower": lambda eps: bhattacharyya_bounds(eps)[0],
    "bhattacharyya_upper": lambda eps: bhattacharyya_bounds(eps)[1],
    "exact_kl": lambda eps: exact_kl_min(eps) if eps < 1.0 else math.inf,
}


def bound_curve(measure: str, eps_grid) -> BoundCurve:
    """Tabulate one closed-form bound family over an increasing eps grid."""
    try:
        fn = CURVE_MEASURES[measure]
    except KeyError:
        known = ", ".join(sorted(CURVE_MEASURES))
        raise ValueError(f"unknown measure {measure!r}; known: {known}") from None
    pts = tuple((float(e), float(fn(float(e)))) for e in eps_grid)
    return BoundCurve(measure, pts)
