"""Composition expansion of the multiple-scattering parameter.

For ``N`` parallel plates the interaction determinant ``Delta`` factorizes
into a sum over compositions (ordered integer partitions) of ``N - 1``: a
part of size 1 contributes a nearest-neighbour factor ``1 - r r' y`` and a
part of size ``c >= 2`` contributes a beyond-nearest loop passing through
the intermediate plates twice.  The module also provides an algebraically
independent evaluation through the dressed-mirror recursion, used as an
oracle in the test-suite, and the polynomial form of ``Delta`` in the
round-trip variable ``x = exp(-s)`` for uniform stacks.

Everything is evaluated in the scaled variable ``s = 2 kappa a_ref`` so a
gap of dimensionless length ``g`` carries a round-trip factor
``exp(-s g)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

__all__ = [
    "Composition",
    "StackGeometry",
    "NodeCoefficients",
    "DeltaPolynomial",
    "compositions",
    "delta_nn",
    "delta_beyond",
    "delta_total",
    "delta_oracle",
    "delta_polynomial",
]

#: One term of the expansion: ordered positive integers summing to N - 1.
Composition = Tuple[int, ...]

_MAX_COMPOSITION_N = 62


@dataclass(frozen=True)
class StackGeometry:
    """Dimensionless gap lengths of an N-plate stack (N - 1 entries)."""

    gaps: Tuple[float, ...]

    def __post_init__(self):
        gaps = tuple(float(g) for g in self.gaps)
        if len(gaps) < 1:
            raise ValueError("a stack needs at least one gap (two plates)")
        if not all(g > 0.0 and math.isfinite(g) for g in gaps):
            raise ValueError(f"gaps must be positive and finite, got {gaps}")
        object.__setattr__(self, "gaps", gaps)

    @property
    def n_plates(self) -> int:
        return len(self.gaps) + 1

    @property
    def uniform(self) -> bool:
        """True when every gap equals the reference length 1."""
        return all(g == 1.0 for g in self.gaps)


@dataclass(frozen=True)
class NodeCoefficients:
    """Per-plate (r, t) amplitudes for one polarization at one node."""

    r: Tuple[float, ...]
    t_coef: Tuple[float, ...]

    def __post_init__(self):
        r = tuple(float(v) for v in self.r)
        t = tuple(float(v) for v in self.t_coef)
        if len(r) != len(t):
            raise ValueError("r and t_coef must have equal length")
        if len(r) < 2:
            raise ValueError("need at least two plates")
        for v in (*r, *t):
            if not (-1.0 <= v <= 1.0):
                raise ValueError(f"amplitude {v} outside [-1, 1]")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "t_coef", t)

    @property
    def n_plates(self) -> int:
        return len(self.r)


@dataclass(frozen=True)
class DeltaPolynomial:
    """Coefficients c_0 ... c_d of Delta as a polynomial in x = exp(-s)."""

    coeffs: Tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs or coeffs[0] != 1.0:
            raise ValueError("leading (constant) coefficient must be exactly 1")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        """Evaluate at ``x`` by Horner's scheme."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def compositions(n: int) -> Tuple[Composition, ...]:
    """All compositions of ``n`` in lexicographic-by-first-part order.

    Parameters
    ----------
    n : int
        Positive integer, at most 62 (there are ``2**(n-1)`` compositions).

    Returns
    -------
    tuple of tuple of int
    """
    if not 1 <= n <= _MAX_COMPOSITION_N:
        raise ValueError(f"n must be in [1, {_MAX_COMPOSITION_N}], got {n}")
    return _compositions(n)


@lru_cache(maxsize=None)
def _compositions(n: int) -> Tuple[Composition, ...]:
    if n == 0:
        return ((),)
    return tuple(
        (first, *rest) for first in range(1, n + 1) for rest in _compositions(n - first)
    )


def delta_nn(r_i: float, r_j: float, y: float) -> float:
    """Nearest-neighbour factor ``1 - r_i r_j y`` with ``y = exp(-s g)``."""
    return 1.0 - r_i * r_j * y


def delta_beyond(
    coeffs: NodeCoefficients,
    i: int,
    k: int,
    geometry: StackGeometry,
    s: float,
) -> float:
    """Beyond-nearest-neighbour loop factor between plates ``i`` and ``k``.

    The loop reflects off plates ``i`` and ``k`` and is transmitted twice
    through every plate in between, so it carries ``t**2`` per intermediate
    plate and the round-trip exponential of the total enclosed distance.
    Indices are zero-based and must satisfy ``k >= i + 2``.

    Returns
    -------
    float
        ``-r_i r_k (prod t_m^2) exp(-s sum g_m)``; the minus sign belongs
        to the factor so the total expansion is a plain sum.
    """
    n = coeffs.n_plates
    if not (0 <= i and k < n):
        raise IndexError(f"plate indices ({i}, {k}) out of range for N={n}")
    if k < i + 2:
        raise IndexError(f"beyond-nearest factor needs k >= i + 2, got ({i}, {k})")
    trans = 1.0
    for m in range(i + 1, k):
        trans *= coeffs.t_coef[m] ** 2
    path = 0.0
    for m in range(i, k):
        path += geometry.gaps[m]
    return -coeffs.r[i] * coeffs.r[k] * trans * math.exp(-s * path)


def delta_total(coeffs: NodeCoefficients, geometry: StackGeometry, s: float) -> float:
    """Full multiple-scattering parameter at one (polarization, node, s).

    Sums ``2**(N-2)`` composition products in a fixed lexicographic order,
    each accumulated left to right, so results are bit-reproducible.
    ``Delta -> 1`` as ``s -> infinity``.
    """
    n = coeffs.n_plates
    if geometry.n_plates != n:
        raise ValueError(
            f"geometry is for {geometry.n_plates} plates, coefficients for {n}"
        )
    r, t, gaps = coeffs.r, coeffs.t_coef, geometry.gaps
    y = [math.exp(-s * g) for g in gaps]
    total = 0.0
    for comp in compositions(n - 1):
        term = 1.0
        p = 0
        for c in comp:
            q = p + c
            if c == 1:
                term *= 1.0 - r[p] * r[q] * y[p]
            else:
                trans = 1.0
                for m in range(p + 1, q):
                    trans *= t[m] ** 2
                prop = 1.0
                for m in range(p, q):
                    prop *= y[m]
                term *= -r[p] * r[q] * trans * prop
            p = q
        total += term
    return total


def delta_oracle(coeffs: NodeCoefficients, geometry: StackGeometry, s: float) -> float:
    """Independent evaluation of Delta via the dressed-mirror recursion.

    The sub-stack ``k..N-1`` seen from the left acts as a single mirror of
    reflection ``R_k``, built backwards from ``R_{N-1} = r_{N-1}``; Delta is
    the product of the denominators ``1 - r_k R_{k+1} y_k``.  Algebraically
    identical to `delta_total`; kept free of shared code so the two can
    cross-check each other.

    Raises
    ------
    ZeroDivisionError
        If a recursion denominator vanishes exactly (possible only in the
        ideal coincidence ``|r R y| = 1``).
    """
    n = coeffs.n_plates
    if geometry.n_plates != n:
        raise ValueError(
            f"geometry is for {geometry.n_plates} plates, coefficients for {n}"
        )
    r, t, gaps = coeffs.r, coeffs.t_coef, geometry.gaps
    dressed = r[n - 1]
    dens = [0.0] * (n - 1)
    for k in range(n - 2, -1, -1):
        y = math.exp(-s * gaps[k])
        den = 1.0 - r[k] * dressed * y
        if den == 0.0:
            raise ZeroDivisionError(
                f"dressed-mirror denominator vanished at plate {k} (s={s})"
            )
        dens[k] = den
        dressed = r[k] + t[k] ** 2 * dressed * y / den
    delta = 1.0
    for den in dens:
        delta *= den
    return delta


def delta_polynomial(
    coeffs: NodeCoefficients, geometry: StackGeometry
) -> DeltaPolynomial:
    """Delta as a polynomial in ``x = exp(-s)`` for a uniform stack.

    Each composition term is a product of linear factors ``1 - r r' x``
    (parts of size one) and monomials ``-r r' (prod t^2) x^c`` (larger
    parts); the expansion is assembled by polynomial convolution.  Only
    uniform geometries (all gaps equal to 1) admit a single propagation
    variable, so anything else is rejected.
    """
    n = coeffs.n_plates
    if geometry.n_plates != n:
        raise ValueError(
            f"geometry is for {geometry.n_plates} plates, coefficients for {n}"
        )
    if not geometry.uniform:
        raise ValueError("delta_polynomial requires a uniform stack (all gaps 1)")
    r, t = coeffs.r, coeffs.t_coef
    total = np.zeros(n)
    for comp in compositions(n - 1):
        prod = np.array([1.0])
        p = 0
        for c in comp:
            q = p + c
            if c == 1:
                factor = np.array([1.0, -r[p] * r[q]])
            else:
                trans = 1.0
                for m in range(p + 1, q):
                    trans *= t[m] ** 2
                factor = np.zeros(c + 1)
                factor[c] = -r[p] * r[q] * trans
            prod = np.convolve(prod, factor)
            p = q
        total[: prod.size] += prod
    # strip trailing exact zeros (e.g. opaque interior plates) but keep c_0
    d = n - 1
    while d > 0 and total[d] == 0.0:
        d -= 1
    return DeltaPolynomial(tuple(total[: d + 1]))
