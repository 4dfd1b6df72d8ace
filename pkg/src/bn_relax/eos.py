"""Stiffened-gas equation of state (ideal gas is the ``p_inf = 0`` case).

The pressure law is ``p = (gamma - 1) rho e - gamma p_inf``.  Real sound
speeds require ``rho e > p_inf``, which is stricter than positivity of the
internal energy when ``p_inf > 0``.  The entropy returned here is the
mathematical (convex, dissipated) one; the physical entropy is its negative.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class EosDomainError(ValueError):
    """Raised when an EOS evaluation leaves the admissible thermodynamic domain."""


@dataclass(frozen=True)
class EosParams:
    """Stiffened-gas parameters for one phase.

    Parameters
    ----------
    gamma : float
        Ratio of specific heats, > 1.
    p_inf : float
        Pressure offset, >= 0 (0 for an ideal gas).
    cv : float
        Heat capacity at constant volume; only normalizes the entropy.
    s_ref : float
        Additive reference entropy.
    """

    gamma: float
    p_inf: float = 0.0
    cv: float = 1.0
    s_ref: float = 0.0

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if self.p_inf < 0.0:
            raise ValueError(f"p_inf must be >= 0, got {self.p_inf}")
        if not self.cv > 0.0:
            raise ValueError(f"cv must be positive, got {self.cv}")

    def pressure(self, rho, e):
        """Pressure from density and specific internal energy."""
        rho = np.asarray(rho, dtype=float)
        if np.any(rho <= 0.0):
            raise EosDomainError("pressure: non-positive density")
        return (self.gamma - 1.0) * rho * np.asarray(e, dtype=float) - self.gamma * self.p_inf

    def internal_energy(self, rho, p):
        """Specific internal energy from density and pressure."""
        rho = np.asarray(rho, dtype=float)
        if np.any(rho <= 0.0):
            raise EosDomainError("internal_energy: non-positive density")
        return (np.asarray(p, dtype=float) + self.gamma * self.p_inf) / ((self.gamma - 1.0) * rho)

    def sound_speed(self, rho, p):
        """Speed of sound ``sqrt(gamma (p + p_inf) / rho)``."""
        rho = np.asarray(rho, dtype=float)
        p = np.asarray(p, dtype=float)
        if np.any(rho <= 0.0):
            raise EosDomainError("sound_speed: non-positive density")
        arg = self.gamma * (p + self.p_inf) / rho
        if np.any(arg <= 0.0):
            raise EosDomainError(
                "sound_speed: complex sound speed (p + p_inf <= 0, hyperbolicity lost)"
            )
        return np.sqrt(arg)

    def lagrangian_sound_speed(self, rho, p):
        """``rho * c``, the lower bound for the relaxation parameter of this phase."""
        return np.asarray(rho, dtype=float) * self.sound_speed(rho, p)

    def entropy(self, rho, e):
        """Mathematical entropy ``s_ref - cv log((rho e - p_inf) / rho**gamma)``.

        Decreasing in ``e`` at fixed ``rho`` (ds/de = -1/T < 0).
        """
        rho = np.asarray(rho, dtype=float)
        e = np.asarray(e, dtype=float)
        if np.any(rho <= 0.0):
            raise EosDomainError("entropy: non-positive density")
        arg = rho * e - self.p_inf
        if np.any(arg <= 0.0):
            raise EosDomainError("entropy: rho e <= p_inf (outside hyperbolicity region)")
        return self.s_ref - self.cv * (np.log(arg) - self.gamma * np.log(rho))

    def temperature(self, rho, e):
        """Positive integrating factor T with ds/de = -1/T."""
        rho = np.asarray(rho, dtype=float)
        e = np.asarray(e, dtype=float)
        if np.any(rho <= 0.0):
            raise EosDomainError("temperature: non-positive density")
        arg = rho * e - self.p_inf
        if np.any(arg <= 0.0):
            raise EosDomainError("temperature: rho e <= p_inf (outside hyperbolicity region)")
        return arg / (self.cv * rho)
