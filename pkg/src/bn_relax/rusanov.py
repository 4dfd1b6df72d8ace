"""Rusanov (local Lax-Friedrichs) baseline for the nonconservative system.

The conservative part takes the standard central flux with spectral-radius
diffusion; the phase-fraction gradient terms use cell-centered coefficients
(u2, p1 of the cell) against the jump of interface-averaged alpha1.  This
variant is frozen here as the comparison baseline; it carries no positivity
or entropy guarantees, and failures on vanishing-phase data are a reportable
outcome rather than a bug.
"""
from __future__ import annotations

import numpy as np

from .eos import EosParams
from .scheme import InterfaceFluxes, RunConfig, StepInfo
from .state import ConservedState, PrimitiveState, max_abs_eigenvalue, to_primitive, validate_conserved


def _physical_flux(w: PrimitiveState, eos1: EosParams, eos2: EosParams):
    al1 = np.asarray(w.alpha1, dtype=float)
    al2 = 1.0 - al1
    e1 = eos1.internal_energy(w.rho1, w.p1)
    e2 = eos2.internal_energy(w.rho2, w.p2)
    E1 = e1 + 0.5 * np.asarray(w.u1) ** 2
    E2 = e2 + 0.5 * np.asarray(w.u2) ** 2
    return np.stack([
        np.zeros_like(al1),
        al1 * w.rho1 * w.u1,
        al2 * w.rho2 * w.u2,
        al1 * (w.rho1 * w.u1 * w.u1 + w.p1),
        al2 * (w.rho2 * w.u2 * w.u2 + w.p2),
        al1 * (w.rho1 * E1 + w.p1) * w.u1,
        al2 * (w.rho2 * E2 + w.p2) * w.u2,
    ])


def rusanov_fluxes(uL: ConservedState, uR: ConservedState, eos1: EosParams, eos2: EosParams):
    """Central flux with local spectral-radius diffusion; returns (flux, r)."""
    wL = to_primitive(uL, eos1, eos2)
    wR = to_primitive(uR, eos1, eos2)
    r = np.maximum(max_abs_eigenvalue(wL, eos1, eos2), max_abs_eigenvalue(wR, eos1, eos2))
    flux = 0.5 * (_physical_flux(wL, eos1, eos2) + _physical_flux(wR, eos1, eos2)) \
        - 0.5 * r * (uR.stack() - uL.stack())
    return flux, r


def rusanov_step(cells: ConservedState, cfg: RunConfig, eos1: EosParams, eos2: EosParams,
                 dx: float, dt_cap: float = np.inf):
    """One explicit Rusanov update with transmissive boundaries."""
    prim = to_primitive(cells, eos1, eos2)
    c1 = eos1.sound_speed(prim.rho1, prim.p1)
    c2 = eos2.sound_speed(prim.rho2, prim.p2)
    smax = max(float(np.max(np.abs(prim.u1) + c1)), float(np.max(np.abs(prim.u2) + c2)))
    dt = min(cfg.cfl * dx / smax, dt_cap)
    lam = dt / dx

    u = cells.stack()
    upad = np.concatenate([u[:, :1], u, u[:, -1:]], axis=1)
    n = u.shape[1]
    left = ConservedState.from_stack(upad[:, :n + 1])
    right = ConservedState.from_stack(upad[:, 1:])
    flux, _ = rusanov_fluxes(left, right, eos1, eos2)

    # centered treatment of the alpha1-gradient products, cell coefficients
    apad = upad[0]
    abar = 0.5 * (apad[:-1] + apad[1:])           # interface averages, n+1 of them
    dalpha = abar[1:] - abar[:-1]                 # per cell
    cvec = np.stack([prim.u2, np.zeros(n), np.zeros(n),
                     -prim.p1, prim.p1, -prim.p1 * prim.u2, prim.p1 * prim.u2])

    unew = u - lam * (flux[:, 1:] - flux[:, :-1]) - lam * cvec * dalpha
    out = ConservedState.from_stack(unew)
    validate_conserved(out, eos1, eos2, where=f"rusanov post-step, dt={dt:.3e}")
    return out, StepInfo(dt=dt, fluxes=InterfaceFluxes(f_minus=flux, f_plus=flux), sol=None)
