"""Passive shunt compensators: single capacitor and fixed-pole LC branches.

All elements are lossless and sit in shunt at a stiff bus, so the bus
voltage spectrum is unchanged and the source-side current at harmonic ``n``
becomes ``I_n + Y(n) U_n``.  An LC branch is an inductor in series with a
capacitor; its admittance has a pole at ``1/sqrt(LC)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InfeasibleDesignError, SingularAdmittanceError, SpectrumError
from .spectra import Spectrum, partition

#: Harmonics within this relative distance of a branch pole are rejected.
POLE_RTOL = 1e-9


@dataclass(frozen=True)
class ShuntCapacitor:
    C: float

    def __post_init__(self):
        if not self.C >= 0:
            raise ValueError(f"capacitance must be nonnegative, got {self.C!r}")


@dataclass(frozen=True)
class LCBranch:
    L: float
    C: float

    def __post_init__(self):
        if not (self.L > 0 and self.C > 0):
            raise ValueError(f"LC branch needs L > 0 and C > 0, got L={self.L!r}, C={self.C!r}")

    @property
    def pole(self) -> float:
        """Resonant angular frequency in rad/s."""
        return 1.0 / math.sqrt(self.L * self.C)


Element = Union[ShuntCapacitor, LCBranch]


def admittance(e: Element, n: int, omega: float) -> complex:
    """Admittance in siemens of one shunt element at harmonic ``n``."""
    w = n * omega
    if isinstance(e, ShuntCapacitor):
        return 1j * w * e.C
    if math.isclose(w, e.pole, rel_tol=POLE_RTOL):
        raise SingularAdmittanceError(
            f"harmonic {n} ({w:.6g} rad/s) sits on the branch pole {e.pole:.6g} rad/s")
    return 1j * w * e.C / (1 - w * w * e.L * e.C)


@dataclass(frozen=True)
class CompensatorDesign:
    elements: tuple[Element, ...]
    omega: float

    def admittance(self, n: int) -> complex:
        return sum((admittance(e, n, self.omega) for e in self.elements), 0j)

    @property
    def capacitors(self) -> list[ShuntCapacitor]:
        return [e for e in self.elements if isinstance(e, ShuntCapacitor)]

    @property
    def branches(self) -> list[LCBranch]:
        return [e for e in self.elements if isinstance(e, LCBranch)]


def apply_compensator(u: Spectrum, i: Spectrum, design: CompensatorDesign) -> Spectrum:
    """Source-side current spectrum after adding the compensator in shunt."""
    if not math.isclose(design.omega, u.omega, rel_tol=1e-12):
        raise SpectrumError(f"design built for {design.omega} rad/s, spectrum at {u.omega} rad/s")
    out = dict(i.components)
    if design.elements:
        for n in u.present_orders():
            out[n] = out.get(n, 0j) + design.admittance(n) * u.phasor(n)
    return Spectrum("current", i.omega, out)


def optimal_shunt_capacitor(u: Spectrum, i: Spectrum) -> ShuntCapacitor:
    """Capacitor minimising the rms of the compensated source current.

    Setting the derivative of ``sum_n |I_n + j n w C U_n|^2`` to zero gives
    ``C = sum_N n Q_n / (w sum n^2 U_n^2)``; the denominator runs over every
    voltage harmonic because the capacitor draws current at all of them.
    """
    part = partition(u, i)
    if not part.N:
        raise SpectrumError("no harmonic is common to voltage and current")
    num = sum(n * (u.phasor(n) * i.phasor(n).conjugate()).imag for n in part.N)
    den = u.omega * sum(n * n * u.rms_of(n) ** 2 for n in part.voltage_orders)
    return ShuntCapacitor(max(num / den, 0.0))


def _branch_susceptance_matrix(orders: Sequence[int], poles: Sequence[float], omega: float) -> np.ndarray:
    # B[n, i] = susceptance per farad of a branch tuned to k_i*w, seen at harmonic n
    return np.array([[n * omega * k * k / (k * k - n * n) for k in poles] for n in orders])


def design_fixed_pole_lc(
    u: Spectrum, i: Spectrum, pole_multipliers: Sequence[float]
) -> CompensatorDesign:
    """Series-LC branch bank cancelling reactive power at every common harmonic.

    Branch ``i`` resonates at ``pole_multipliers[i] * w``.  The capacitances
    solve ``sum_i C_i B_i(n) = Q_n / U_n^2`` for each common harmonic ``n``.
    """
    part = partition(u, i)
    orders = sorted(part.N)
    poles = [float(k) for k in pole_multipliers]
    if len(poles) != len(orders):
        raise InfeasibleDesignError(
            f"{len(poles)} pole multipliers given for {len(orders)} common harmonics {orders}")
    present = set(part.voltage_orders) | set(part.current_orders)
    for k in poles:
        if not k > 0:
            raise InfeasibleDesignError(f"pole multiplier must be positive, got {k!r}")
        for n in present:
            if math.isclose(k, n, rel_tol=POLE_RTOL):
                raise SingularAdmittanceError(
                    f"pole multiplier {k:g} coincides with harmonic {n}")
    if len(set(poles)) != len(poles):
        raise InfeasibleDesignError(f"pole multipliers must be distinct, got {poles}")
    if not orders:
        return CompensatorDesign((), u.omega)

    a = _branch_susceptance_matrix(orders, poles, u.omega)
    b = np.array([(u.phasor(n) * i.phasor(n).conjugate()).imag / u.rms_of(n) ** 2 for n in orders])
    if np.linalg.cond(a) > 1 / np.finfo(float).eps:
        raise InfeasibleDesignError("pole placement gives a singular design system")
    caps = np.linalg.solve(a, b)
    bad = [(k, c) for k, c in zip(poles, caps) if not c > 0]
    if bad:
        detail = ", ".join(f"k={k:g}: C={c:.6g} F" for k, c in bad)
        raise InfeasibleDesignError(f"pole placement needs non-positive capacitance ({detail})")
    branches = tuple(
        LCBranch(L=1.0 / ((k * u.omega) ** 2 * c), C=float(c)) for k, c in zip(poles, caps))
    return CompensatorDesign(branches, u.omega)
