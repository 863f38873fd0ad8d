"""Special functions and adaptive quadrature.

Provides the fourth-order polylogarithm on the closed unit disk, the
closed-form frequency integral ``int_0^inf s^2 ln(1 - c e^-s) ds``, a
deterministic adaptive Gauss-Legendre integrator on [0, 1], and a fully
independent two-dimensional quadrature over the (angle, frequency) domain.

The integrators use open rules only (no endpoint evaluations), subdivide
worst-panel-first with deterministic tie-breaking, and sum results in a
fixed order, so a given tolerance specification always reproduces the same
bits.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

__all__ = [
    "ZETA4",
    "LI4_MINUS_ONE",
    "QuadratureSpec",
    "QuadratureConvergenceError",
    "li4",
    "s_integral",
    "integrate_t",
    "integrate_2d",
]

#: Li4(1) = zeta(4) = pi^4 / 90.
ZETA4 = math.pi**4 / 90.0

#: Li4(-1) = -7 pi^4 / 720 (alternating series).
LI4_MINUS_ONE = -7.0 * math.pi**4 / 720.0

# Terms needed for the defining series at |z| = 1: the tail after K terms is
# bounded by 1/(3 K^3), which drops below 1e-14 at K ~ 3.22e4.
_K_UNIT_DISK = 32500

_OVERSHOOT = 1e-12


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and subdivision budget for the adaptive integrators."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


class QuadratureConvergenceError(RuntimeError):
    """Adaptive integration ran out of subdivisions.

    Attributes
    ----------
    estimate : float
        Best available value of the integral.
    error_bound : float
        Accumulated error bound for that estimate.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(f"{message} (estimate {estimate!r}, bound {error_bound!r})")
        self.estimate = estimate
        self.error_bound = error_bound


def _series_terms(abs_z: float) -> int:
    """Number of series terms for truncation error below ~1e-15.

    Uses the geometric remainder bound |z|^(K+1) / ((K+1)^4 (1 - |z|)) when
    it is useful, else the unit-disk bound 1/(3 K^3).
    """
    if abs_z >= 0.999:
        return _K_UNIT_DISK
    if abs_z < 1e-4:
        return 16
    k = math.log(1e-15 * (1.0 - abs_z)) / math.log(abs_z)
    return min(max(int(k) + 1, 16), _K_UNIT_DISK)


def li4(z):
    """Fourth-order polylogarithm ``Li4(z)`` for ``|z| <= 1``.

    Evaluates the defining series ``sum_k z^k / k^4`` with the explicit
    remainder bound, summing the smallest terms first; the truncation error
    is below 1e-14 everywhere on the closed disk.  A real argument returns
    a float, a complex argument a complex; ``li4(conj(z)) == conj(li4(z))``.

    Raises
    ------
    ValueError
        If ``|z|`` exceeds ``1 + 1e-12`` (smaller overshoots are projected
        back onto the unit circle).
    """
    is_complex = isinstance(z, complex)
    zc = complex(z)
    az = abs(zc)
    if az > 1.0 + _OVERSHOOT:
        raise ValueError(f"li4 argument outside the unit disk: |z| = {az!r}")
    if az > 1.0:
        zc /= az
        az = 1.0
    if zc == 1.0:
        return complex(ZETA4) if is_complex else ZETA4
    if zc == -1.0:
        return complex(LI4_MINUS_ONE) if is_complex else LI4_MINUS_ONE
    if az == 0.0:
        return 0.0j if is_complex else 0.0
    n = _series_terms(az)
    k = np.arange(1, n + 1, dtype=float)
    if is_complex:
        terms = np.power(zc, k) / k**4
        return complex(terms[::-1].sum())
    x = float(z)
    terms = np.power(x, k) / k**4
    return float(terms[::-1].sum())


def s_integral(c):
    """Closed form of ``int_0^inf s^2 ln(1 - c e^-s) ds`` for ``|c| <= 1``.

    Expanding the logarithm and integrating term by term gives exactly
    ``-2 Li4(c)``.
    """
    v = li4(c)
    return -2.0 * v


# ---------------------------------------------------------------------------
# adaptive Gauss-Legendre machinery

_GL_LO_X, _GL_LO_W = np.polynomial.legendre.leggauss(15)
_GL_HI_X, _GL_HI_W = np.polynomial.legendre.leggauss(31)


def _panel(g, a: float, b: float) -> Tuple[float, float, float]:
    """High-order estimate, error estimate and noise floor on one panel.

    ``g`` maps a point to ``(value, floor)`` where ``floor`` bounds the
    evaluation error of the value itself.  The error estimate is the
    difference of the 15- and 31-point Gauss rules; the floor is integrated
    with the high-order weights.
    """
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    lo = 0.0
    for xi, wi in zip(_GL_LO_X, _GL_LO_W):
        v, _ = g(mid + half * xi)
        lo += wi * v
    hi = 0.0
    floor = 0.0
    for xi, wi in zip(_GL_HI_X, _GL_HI_W):
        v, fe = g(mid + half * xi)
        hi += wi * v
        floor += wi * fe
    return half * hi, abs(half * (hi - lo)), half * floor


def _integrate_floor(
    g: Callable[[float], Tuple[float, float]],
    a: float,
    b: float,
    spec: QuadratureSpec,
) -> Tuple[float, float]:
    """Adaptive driver; returns (integral, total error bound).

    Splits whichever panel currently carries the largest reducible error
    until the summed error estimate drops below tolerance.  A panel whose
    estimate sinks below the integrated noise floor of its own integrand
    values is never split further, which prevents endless subdivision of
    integrands that are only known to limited accuracy.
    """
    panels = {0: (a, b, *_panel(g, a, b))}
    heap = [(-panels[0][3], 0)]
    counter = 1
    splits = 0
    while True:
        value = error = floor = 0.0
        for _, _, pi, pe, pf in panels.values():
            value += pi
            error += pe
            floor += pf
        tol_total = max(spec.abs_tol, spec.rel_tol * abs(value))
        if error <= tol_total + floor:
            break
        while heap:
            neg_err, key = heap[0]
            live = panels.get(key)
            if live is None or -neg_err != live[3]:
                heapq.heappop(heap)  # stale entry
                continue
            break
        if not heap or -heap[0][0] <= panels[heap[0][1]][4]:
            break  # every panel is at its own noise floor
        if splits >= spec.max_subdivisions:
            raise QuadratureConvergenceError(
                f"no convergence after {spec.max_subdivisions} subdivisions",
                float(value),
                float(error + floor),
            )
        splits += 1
        _, key = heapq.heappop(heap)
        pa, pb, _, _, _ = panels.pop(key)
        pm = 0.5 * (pa + pb)
        for lo, hi in ((pa, pm), (pm, pb)):
            rec = (lo, hi, *_panel(g, lo, hi))
            panels[counter] = rec
            if rec[3] > rec[4]:
                heapq.heappush(heap, (-rec[3], counter))
            counter += 1
    total = 0.0
    bound = 0.0
    for _, _, pi, pe, pf in sorted(panels.values()):
        total += pi
        bound += pe + pf
    return float(total), float(bound)


def integrate_t(f: Callable[[float], float], spec: QuadratureSpec | None = None) -> float:
    """Integral of ``f`` over the angular interval [0, 1].

    Deterministic adaptive Gauss-Legendre integration with open panels (the
    endpoints are never evaluated).

    Raises
    ------
    QuadratureConvergenceError
        If the subdivision budget is exhausted; the error carries the best
        estimate and its bound.
    """
    spec = spec or QuadratureSpec()
    value, _ = _integrate_floor(lambda x: (f(x), 0.0), 0.0, 1.0, spec)
    return value


def _inner_spec(spec: QuadratureSpec) -> QuadratureSpec:
    return QuadratureSpec(
        rel_tol=spec.rel_tol * 0.1,
        abs_tol=spec.abs_tol * 0.1,
        max_subdivisions=spec.max_subdivisions,
    )


def _truncation_cutoff(spec: QuadratureSpec, tail_coeff: float) -> float:
    """Frequency cutoff with a certified tail for ``|f| <= C exp(-s)``.

    The neglected tail is ``C e^-smax (smax^2 + 2 smax + 2)``; the cutoff is
    chosen so it sits well below the absolute tolerance.
    """
    target = 0.05 * spec.abs_tol / max(tail_coeff, 1e-300)
    smax = 30.0
    for _ in range(60):
        tail = math.exp(-smax) * (smax * smax + 2.0 * smax + 2.0)
        if tail <= target:
            return smax
        smax += 5.0
    return smax


def _integrate_2d_bound(
    f: Callable[[float, float], float],
    spec: QuadratureSpec,
    *,
    route: str = "substitution",
    tail_coeff: float = 1.0,
) -> Tuple[float, float]:
    """Core of `integrate_2d`; also returns the total error bound."""
    ispec = _inner_spec(spec)

    if route == "substitution":

        def inner(t: float) -> Tuple[float, float]:
            def h(u: float) -> Tuple[float, float]:
                lg = math.log(u)
                return lg * lg * f(t, -lg) / u, 0.0

            return _integrate_floor(h, 0.0, 1.0, ispec)

    elif route == "truncation":
        smax = _truncation_cutoff(spec, tail_coeff)

        def inner(t: float) -> Tuple[float, float]:
            def h(s: float) -> Tuple[float, float]:
                return s * s * f(t, s), 0.0

            value, bound = _integrate_floor(h, 0.0, smax, ispec)
            return value, bound + 0.05 * spec.abs_tol

    else:
        raise ValueError(f"unknown route {route!r}")

    return _integrate_floor(inner, 0.0, 1.0, spec)


def integrate_2d(
    f: Callable[[float, float], float],
    spec: QuadratureSpec | None = None,
    *,
    route: str = "substitution",
    tail_coeff: float = 1.0,
) -> float:
    """Integral ``int_0^1 dt int_0^inf s^2 f(t, s) ds``.

    The default route substitutes ``u = exp(-s)``, mapping the frequency
    axis onto (0, 1] with integrand ``ln(u)^2 f(t, -ln u) / u`` and no tail
    heuristics.  The alternative ``route="truncation"`` integrates the
    ``s`` axis directly up to a cutoff certified by ``|f| <= tail_coeff *
    exp(-s)``; it exists as an independent diagnostic of the substitution.

    Parameters
    ----------
    f : callable
        Bounded integrand; ``s**2 f(t, s)`` must be absolutely integrable,
        which in practice means ``f`` decays exponentially in ``s``.
    spec : QuadratureSpec, optional
    route : {"substitution", "truncation"}
    tail_coeff : float
        Tail-bound constant for the truncation route.
    """
    spec = spec or QuadratureSpec()
    value, _ = _integrate_2d_bound(f, spec, route=route, tail_coeff=tail_coeff)
    return value
