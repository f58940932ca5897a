"""Momentum construction from prescribed curvature data.

The momentum of a rotational surface's generating curve is the z-component
K(x) of its unit tangent, expressed as a function of the distance x to the
rotation axis. It determines the surface up to a vertical translation. The
four constructors here invert the four pointwise curvature prescriptions:

* curvature along parallels  k_p(x) = K(x)/x      ->  K = x * p(x)
* curvature along meridians  k_m(x) = K'(x)       ->  K = int k + c
* mean curvature             2H = K' + K/x        ->  x*K = 2*int x*H + c
* Gauss curvature            K_G = K*K'/x         ->  K^2 = 2*int x*K_G + c

Antiderivatives are anchored at the left end of the declared domain unless an
explicit ``anchor`` is given; the anchor may sit below the domain (0, or even
-inf) whenever the integrand is integrable there, which is how the classical
one-parameter families keep their textbook constants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (DomainViolation, NegativeRadicand, ParamOutOfRange,
                     SingularAxis)
from .quadrature import AnchoredAntiderivative, bracketed_root, numeric_derivative

__all__ = [
    "Momentum",
    "Prescription",
    "momentum_from_kp",
    "momentum_from_km",
    "momentum_from_mean",
    "momentum_from_gauss",
    "admissible_intervals",
]

_AXIS_REL = 1e-13  # |x| below this fraction of the domain width counts as on-axis


@dataclass(frozen=True)
class Momentum:
    """K(x) with its derivative and the closed x-interval it is defined on."""

    eval: Callable[[float], float]
    deriv: Callable[[float], float]
    domain: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.domain
        if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise ParamOutOfRange(f"bad momentum domain {self.domain!r}")

    @property
    def width(self) -> float:
        return self.domain[1] - self.domain[0]

    def sample(self, xs: Sequence[float]) -> np.ndarray:
        return np.array([self.eval(float(x)) for x in np.asarray(xs).ravel()])

    def sample_deriv(self, xs: Sequence[float]) -> np.ndarray:
        return np.array([self.deriv(float(x)) for x in np.asarray(xs).ravel()])


@dataclass(frozen=True)
class Prescription:
    """A curvature prescription as handed over by the CLI.

    kind is one of 'kp', 'km', 'mean', 'gauss'; func maps x to the prescribed
    curvature; constants holds the free constant(s) of the corresponding
    construction ('c', and 'sigma' for the Gauss kind).
    """

    kind: str
    func: Callable[[float], float]
    domain: tuple[float, float]
    constants: dict = field(default_factory=dict)
    func_deriv: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.kind not in ("kp", "km", "mean", "gauss"):
            raise ParamOutOfRange(f"unknown prescription kind {self.kind!r}")
        if self.kind == "kp" and self.constants.get("c", 0.0) != 0.0:
            raise ParamOutOfRange(
                "the parallel-curvature construction has no free constant")
        if self.kind == "gauss" and self.constants.get("sigma", 1.0) not in (1.0, -1.0, 1, -1):
            raise ParamOutOfRange("sigma must be +1 or -1")

    def to_momentum(self, anchor: float | None = None) -> Momentum:
        c = float(self.constants.get("c", 0.0))
        if self.kind == "kp":
            return momentum_from_kp(self.func, self.domain, p_deriv=self.func_deriv)
        if self.kind == "km":
            return momentum_from_km(self.func, c, self.domain, anchor=anchor)
        if self.kind == "mean":
            return momentum_from_mean(self.func, c, self.domain, anchor=anchor)
        sigma = float(self.constants.get("sigma", 1.0))
        return momentum_from_gauss(self.func, c, sigma, self.domain, anchor=anchor)


def _as_interval(domain: Sequence[float]) -> tuple[float, float]:
    lo, hi = float(domain[0]), float(domain[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise ParamOutOfRange(f"domain must be a finite interval, got {domain!r}")
    return lo, hi


def momentum_from_kp(p: Callable[[float], float], domain: Sequence[float],
                     p_deriv: Callable[[float], float] | None = None) -> Momentum:
    """Momentum with prescribed curvature along parallels: K(x) = x * p(x).

    This prescription is rigid - it admits no free constant. Raises
    DomainViolation if |x p(x)| exceeds 1 anywhere on the domain.
    """
    lo, hi = _as_interval(domain)
    xs = np.linspace(lo, hi, 2049)
    for xv in xs:
        k = xv * p(float(xv))
        if abs(k) > 1.0 + 1e-12:
            raise DomainViolation(
                f"|x*p(x)| = {abs(k):.6g} > 1 at x = {xv:.6g}; no unit tangent exists there")

    def eval_(x: float) -> float:
        return x * p(x)

    if p_deriv is not None:
        def deriv(x: float) -> float:
            return p(x) + x * p_deriv(x)
    else:
        def deriv(x: float) -> float:
            return p(x) + x * numeric_derivative(p, x, lo, hi)

    return Momentum(eval_, deriv, (lo, hi))


def momentum_from_km(k: Callable[[float], float], c: float,
                     domain: Sequence[float], anchor: float | None = None,
                     tol: float = 1e-12) -> Momentum:
    """Momentum with prescribed curvature along meridians: K = c + int k dx.

    One antiderivative constant c; K(anchor) = c.
    """
    lo, hi = _as_interval(domain)
    A = AnchoredAntiderivative(k, lo, hi, anchor=anchor, tol=tol)

    def eval_(x: float) -> float:
        return c + float(A(x))

    def deriv(x: float) -> float:
        return k(x)

    return Momentum(eval_, deriv, (lo, hi))


def momentum_from_mean(H: Callable[[float], float], c: float,
                       domain: Sequence[float], anchor: float | None = None,
                       tol: float = 1e-12) -> Momentum:
    """Momentum with prescribed mean curvature: K(x) = (2*int x*H dx + c) / x.

    The equation 2H = K' + K/x integrates to x*K = 2*int(x H) + c. At x = 0
    the quotient has a finite limit only when the numerator vanishes there;
    otherwise the construction is singular on the axis (SingularAxis).
    """
    lo, hi = _as_interval(domain)

    def f(t: float) -> float:
        return t * H(t)

    A = AnchoredAntiderivative(f, lo, hi, anchor=anchor, tol=tol)
    axis_eps = _AXIS_REL * (hi - lo)

    if lo <= 0.0 <= hi:
        r0 = 2.0 * float(A(0.0)) + c
        if abs(r0) > 1e-12 * max(1.0, abs(c)):
            raise SingularAxis(
                f"x*K(x) -> {r0:.6g} != 0 at the axis; momentum unbounded at x = 0")
        f0 = f(0.0)
        if not math.isfinite(f0):
            raise SingularAxis("x*H(x) has no finite limit at the axis")

    def eval_(x: float) -> float:
        if abs(x) < axis_eps:
            return 2.0 * f(0.0)
        return (2.0 * float(A(x)) + c) / x

    def deriv(x: float) -> float:
        # K' = 2H - K/x, with the symmetric limit K'(0) = 0 when K(0) exists.
        if abs(x) < axis_eps:
            return 0.0
        return 2.0 * H(x) - eval_(x) / x

    return Momentum(eval_, deriv, (lo, hi))


def momentum_from_gauss(G: Callable[[float], float], c: float, sigma: float,
                        domain: Sequence[float], anchor: float | None = None,
                        tol: float = 1e-12) -> Momentum:
    """Momentum with prescribed Gauss curvature: K = sigma*sqrt(2*int x*G dx + c).

    sigma in {+1, -1} picks the sign branch. Raises NegativeRadicand (with an
    offending open interval) if the radicand is negative on the domain.
    """
    lo, hi = _as_interval(domain)
    if sigma not in (1.0, -1.0, 1, -1):
        raise ParamOutOfRange(f"sigma must be +1 or -1, got {sigma!r}")
    sigma = float(sigma)

    def f(t: float) -> float:
        return t * G(t)

    A = AnchoredAntiderivative(f, lo, hi, anchor=anchor, tol=tol)

    def radicand(x: float) -> float:
        return 2.0 * float(A(x)) + c

    xs = np.linspace(lo, hi, 2049)
    vals = 2.0 * np.asarray(A(xs), dtype=float) + c
    # a radicand that merely touches zero must survive quadrature wiggle
    bad = vals < -max(1e-12, 10.0 * tol)
    if np.any(bad):
        i0 = int(np.argmax(bad))
        i1 = len(bad) - 1 - int(np.argmax(bad[::-1]))
        lo_edge = xs[i0] if i0 == 0 else bracketed_root(radicand, xs[i0 - 1], xs[i0])
        hi_edge = xs[i1] if i1 == len(xs) - 1 else bracketed_root(radicand, xs[i1], xs[i1 + 1])
        raise NegativeRadicand(
            f"2*int(x*K_G) + c < 0 on ({lo_edge:.6g}, {hi_edge:.6g}); "
            "no momentum with this constant", interval=(float(lo_edge), float(hi_edge)))

    def eval_(x: float) -> float:
        return sigma * math.sqrt(max(radicand(x), 0.0))

    def deriv(x: float) -> float:
        # K' = x*G/K = sigma * (x*G) / sqrt(radicand); +-inf at the zeros of K.
        r = max(radicand(x), 0.0)
        num = sigma * f(x)
        if r == 0.0:
            return math.copysign(math.inf, num) if num != 0.0 else math.nan
        return num / math.sqrt(r)

    return Momentum(eval_, deriv, (lo, hi))


def admissible_intervals(m: Momentum, n_scan: int = 4096) -> list[tuple[float, float]]:
    """Maximal open sub-intervals of m.domain where K(x)^2 < 1.

    Interval edges interior to the domain are zeros of 1 - K^2 refined to
    1e-12; edges coinciding with domain endpoints inherit them exactly. The
    scan is sampled (n_scan points), so features narrower than the grid may
    be missed.
    """
    lo, hi = m.domain

    def g(x: float) -> float:
        k = m.eval(x)
        return 1.0 - k * k

    xs = np.linspace(lo, hi, n_scan + 1)
    pos = np.array([g(float(x)) > 0.0 for x in xs])
    intervals: list[tuple[float, float]] = []
    i = 0
    while i <= n_scan:
        if not pos[i]:
            i += 1
            continue
        j = i
        while j + 1 <= n_scan and pos[j + 1]:
            j += 1
        left = xs[i] if i == 0 else bracketed_root(g, float(xs[i - 1]), float(xs[i]))
        right = xs[j] if j == n_scan else bracketed_root(g, float(xs[j]), float(xs[j + 1]))
        if right - left > 1e-12 * max(1.0, hi - lo):
            intervals.append((float(left), float(right)))
        i = j + 1
    return intervals
