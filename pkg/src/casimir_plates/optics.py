"""Plate materials and their reflection/transmission coefficients.

Every plate is an infinitesimally thin sheet whose electromagnetic response
is characterized either by a dimensionless constant conductivity ``sigma``
(graphene-like), by a pair of dimensionless delta-potential strengths
``lambda_e``/``lambda_g`` (electric / magnetic response), or by an exact
ideal limit (perfect electric or perfect magnetic conductor).

Coefficients are evaluated on the Euclidean frequency axis at a fixed
angular node ``t = zeta/kappa`` in [0, 1], the cosine of the polar angle in
the (frequency, transverse-momentum) plane.  All quantities are in
Heaviside-Lorentz natural units and dimensionless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Union

__all__ = [
    "ALPHA_FS",
    "SIGMA_GRAPHENE",
    "Polarization",
    "AngularNode",
    "Coefficients",
    "ConstantConductivity",
    "GenericDeltaPlate",
    "PerfectElectric",
    "PerfectMagnetic",
    "Transparent",
    "SweepSlot",
    "Material",
    "reflection",
    "transmission",
    "coefficients",
]

#: Fine-structure constant (CODATA-style inverse value used throughout).
ALPHA_FS = 1.0 / 137.035999

#: Universal constant conductivity of a graphene sheet, sigma = pi * alpha.
SIGMA_GRAPHENE = math.pi * ALPHA_FS


class Polarization(Enum):
    """Electromagnetic mode: transverse magnetic or transverse electric."""

    TM = "TM"
    TE = "TE"


@dataclass(frozen=True)
class AngularNode:
    """Cosine of the polar angle, t = zeta/kappa, in [0, 1]."""

    t: float

    def __post_init__(self):
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"angular node t must lie in [0, 1], got {self.t}")


class Coefficients(NamedTuple):
    """Reflection and transmission amplitudes of one plate at one node."""

    r: float
    t_coef: float


@dataclass(frozen=True)
class ConstantConductivity:
    """Plate with frequency-independent sheet conductivity sigma >= 0.

    The TM reflection is ``sigma / (sigma + 2 t)`` and the TE reflection is
    ``-sigma t / (sigma t + 2)``; transmissions follow from ``t = 1 - r``
    (TM) and ``t = 1 + r`` (TE).
    """

    sigma: float

    def __post_init__(self):
        if not (self.sigma >= 0.0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")


@dataclass(frozen=True)
class GenericDeltaPlate:
    """Plate described by dimensionless delta-potential strengths.

    Parameters
    ----------
    lambda_e : float
        Electric response strength (kappa-scaled), >= 0.
    lambda_g : float
        Magnetic response strength (kappa-scaled), >= 0.

    Notes
    -----
    The TM coefficients are

    .. math::

        r = \\frac{\\Lambda_e}{\\Lambda_e + 2}
            - \\frac{\\Lambda_g t^2}{\\Lambda_g t^2 + 2},
        \\qquad
        t_{\\mathrm{coef}} = 1 - \\frac{\\Lambda_e}{\\Lambda_e + 2}
            - \\frac{\\Lambda_g t^2}{\\Lambda_g t^2 + 2},

    and the TE ones follow by swapping the two strengths.  For a plate with
    both strengths large the transmission can become negative; only ``t**2``
    ever enters the scattering expansion, and ``|r| <= 1``, ``|t| <= 1``
    hold for all admissible strengths.
    """

    lambda_e: float
    lambda_g: float

    def __post_init__(self):
        for name in ("lambda_e", "lambda_g"):
            v = getattr(self, name)
            if not (v >= 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be finite and >= 0, got {v}")


@dataclass(frozen=True)
class PerfectElectric:
    """Perfectly conducting (infinite electric response) plate: r_TM = +1."""


@dataclass(frozen=True)
class PerfectMagnetic:
    """Infinitely permeable plate: r_TM = -1, r_TE = +1."""


@dataclass(frozen=True)
class Transparent:
    """Absent plate: reflects nothing, transmits everything."""


@dataclass(frozen=True)
class SweepSlot:
    """Placeholder for a conductivity value supplied later by a sweep.

    Evaluating coefficients on an unbound slot is an error; the sweep
    machinery replaces slots with ``ConstantConductivity`` instances before
    any energy evaluation.
    """


Material = Union[
    ConstantConductivity,
    GenericDeltaPlate,
    PerfectElectric,
    PerfectMagnetic,
    Transparent,
    SweepSlot,
]

# Ideal-limit coefficients are exact by construction.  TM sign convention:
# perfect electric reflects with +1, perfect magnetic with -1; TE negates.
_IDEAL_R = {
    (PerfectElectric, Polarization.TM): 1.0,
    (PerfectElectric, Polarization.TE): -1.0,
    (PerfectMagnetic, Polarization.TM): -1.0,
    (PerfectMagnetic, Polarization.TE): 1.0,
}


def _conductivity_r(sigma: float, pol: Polarization, t: float) -> float:
    if pol is Polarization.TM:
        if sigma == 0.0:
            return 0.0
        # t = 0 limit is 1 for any positive sigma
        return sigma / (sigma + 2.0 * t)
    return -sigma * t / (sigma * t + 2.0)


def _generic_r(lam_e: float, lam_g: float, pol: Polarization, t: float) -> float:
    if pol is Polarization.TE:
        lam_e, lam_g = lam_g, lam_e
    # electric piece: lam_e/(lam_e + 2), with the infinite limit handled by
    # the ideal material classes, not here
    e_term = lam_e / (lam_e + 2.0)
    g_term = lam_g * t * t / (lam_g * t * t + 2.0)
    return e_term - g_term


def reflection(m: Material, pol: Polarization, node: AngularNode) -> float:
    """Reflection amplitude of plate ``m`` at polarization ``pol`` and node.

    Parameters
    ----------
    m : Material
    pol : Polarization
    node : AngularNode

    Returns
    -------
    float
        Dimensionless amplitude in [-1, 1].
    """
    t = node.t
    if isinstance(m, ConstantConductivity):
        return _conductivity_r(m.sigma, pol, t)
    if isinstance(m, GenericDeltaPlate):
        return _generic_r(m.lambda_e, m.lambda_g, pol, t)
    if isinstance(m, (PerfectElectric, PerfectMagnetic)):
        return _IDEAL_R[(type(m), pol)]
    if isinstance(m, Transparent):
        return 0.0
    if isinstance(m, SweepSlot):
        raise TypeError("sweep slot is not bound to a conductivity value")
    raise TypeError(f"unsupported material: {m!r}")


def transmission(m: Material, pol: Polarization, node: AngularNode) -> float:
    """Transmission amplitude of plate ``m`` (see `reflection`)."""
    t = node.t
    if isinstance(m, ConstantConductivity):
        r = _conductivity_r(m.sigma, pol, t)
        return 1.0 - r if pol is Polarization.TM else 1.0 + r
    if isinstance(m, GenericDeltaPlate):
        lam_e, lam_g = m.lambda_e, m.lambda_g
        if pol is Polarization.TE:
            lam_e, lam_g = lam_g, lam_e
        return 1.0 - lam_e / (lam_e + 2.0) - lam_g * t * t / (lam_g * t * t + 2.0)
    if isinstance(m, (PerfectElectric, PerfectMagnetic)):
        return 0.0
    if isinstance(m, Transparent):
        return 1.0
    if isinstance(m, SweepSlot):
        raise TypeError("sweep slot is not bound to a conductivity value")
    raise TypeError(f"unsupported material: {m!r}")


def coefficients(m: Material, pol: Polarization, node: AngularNode) -> Coefficients:
    """Both amplitudes of one plate at one node, as a named pair."""
    return Coefficients(reflection(m, pol, node), transmission(m, pol, node))
