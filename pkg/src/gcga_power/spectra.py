"""Harmonic voltage/current spectra and the N/L/M harmonic partition.

Waveforms follow the sine convention::

    x(t) = sqrt(2) * sum_p X_p * sin(p*w*t + theta_p)

and each term maps to the rms phasor ``X_p * exp(j*theta_p)`` attached to the
basis vector of order ``p``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, Mapping

import numpy as np

from .algebra import Multivector, PhasorTag, wrap_angle
from .errors import FundamentalMismatchError, SpectrumError

Kind = Literal["voltage", "current"]

#: Harmonics below this fraction of the largest rms count as absent.
PRESENCE_RTOL = 1e-9


@dataclass(frozen=True)
class HarmonicComponent:
    order: int
    rms: float
    phase: float = 0.0  # radians, sine-referenced

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 1:
            raise SpectrumError(f"harmonic order must be a positive integer, got {self.order!r}")
        if not self.rms >= 0:
            raise SpectrumError(f"rms must be nonnegative, got {self.rms!r} for order {self.order}")
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "phase", wrap_angle(float(self.phase)))

    @property
    def phasor(self) -> complex:
        return self.rms * complex(math.cos(self.phase), math.sin(self.phase))


@dataclass(frozen=True)
class Spectrum:
    """Per-harmonic rms phasors of one voltage or current waveform."""

    kind: Kind
    omega: float
    components: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("voltage", "current"):
            raise SpectrumError(f"unknown spectrum kind {self.kind!r}")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise SpectrumError(f"fundamental angular frequency must be positive, got {self.omega!r}")
        comps = {}
        for n, x in self.components.items():
            if int(n) != n or n < 1:
                raise SpectrumError(f"harmonic order must be a positive integer, got {n!r}")
            comps[int(n)] = complex(x)
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    @property
    def orders(self) -> list[int]:
        return list(self.components)

    def phasor(self, n: int) -> complex:
        return self.components.get(n, 0j)

    def rms_of(self, n: int) -> float:
        return abs(self.phasor(n))

    def phase(self, n: int) -> float:
        return wrap_angle(np.angle(self.phasor(n)))

    def present_orders(self) -> list[int]:
        """Orders whose rms is above the presence threshold."""
        if not self.components:
            return []
        cutoff = PRESENCE_RTOL * max(abs(x) for x in self.components.values())
        return [n for n, x in self.components.items() if abs(x) > cutoff and abs(x) > 0]

    def restricted(self, orders: Iterable[int]) -> "Spectrum":
        keep = set(orders)
        return Spectrum(self.kind, self.omega,
                        {n: x for n, x in self.components.items() if n in keep})

    def harmonics(self) -> list[HarmonicComponent]:
        return [HarmonicComponent(n, abs(x), self.phase(n)) for n, x in self.components.items()]

    def to_multivector(self, n: int | None = None) -> Multivector:
        """Vector-phasor ``sum_p X_p s_p``."""
        return Multivector.vector(self.components, n)

    def tags(self) -> list[PhasorTag]:
        return [PhasorTag(n, self.phase(n)) for n in self.components]


def cft(components: Iterable[HarmonicComponent], kind: Kind, omega: float) -> Spectrum:
    """Frequency-domain vector-phasor of a sine series given term by term.

    Zero-rms terms are dropped; duplicate orders are rejected.
    """
    phasors: dict[int, complex] = {}
    for c in components:
        if c.order in phasors:
            raise SpectrumError(f"duplicate harmonic order {c.order} in {kind} spectrum")
        phasors[c.order] = c.phasor
    return Spectrum(kind, omega, {n: x for n, x in phasors.items() if x != 0})


def sample(s: Spectrum, t):
    """Instantaneous value ``sqrt(2) sum_p X_p sin(p w t + theta_p)``.

    ``t`` may be a scalar or an array of times in seconds.
    """
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for n, x in s.components.items():
        out = out + math.sqrt(2) * abs(x) * np.sin(n * s.omega * t + np.angle(x))
    return float(out) if out.ndim == 0 else out


def rms(s: Spectrum) -> float:
    return math.sqrt(sum(abs(x) ** 2 for x in s.components.values()))


def period(s: Spectrum) -> float:
    return 2 * math.pi / s.omega


def _check_fundamental(u: Spectrum, i: Spectrum):
    if not math.isclose(u.omega, i.omega, rel_tol=1e-12):
        raise FundamentalMismatchError(f"fundamentals differ: {u.omega} vs {i.omega} rad/s")


@dataclass(frozen=True)
class HarmonicPartition:
    """Orders common to voltage and current (N), voltage-only (L), current-only (M)."""

    N: frozenset[int]
    L: frozenset[int]
    M: frozenset[int]

    @property
    def voltage_orders(self) -> list[int]:
        return sorted(self.N | self.L)

    @property
    def current_orders(self) -> list[int]:
        return sorted(self.N | self.M)


def partition(u: Spectrum, i: Spectrum) -> HarmonicPartition:
    _check_fundamental(u, i)
    vu = set(u.present_orders())
    vi = set(i.present_orders())
    return HarmonicPartition(frozenset(vu & vi), frozenset(vu - vi), frozenset(vi - vu))


def instantaneous_power(u: Spectrum, i: Spectrum, t):
    _check_fundamental(u, i)
    return sample(u, t) * sample(i, t)
