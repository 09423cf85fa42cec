"""Apparent-power multivector of a single-port load.

The voltage and conjugated current vector-phasors are multiplied with the
generalized geometric product.  In practice this is evaluated through the
complex coefficient matrix ``H[p, q] = U_p conj(I_q)``, phase-corrected by
``exp(-2j(alpha_p - alpha_q))`` below the diagonal when both orders carry
voltage and current.  Its trace over common orders is ``P + jQ`` and its
antisymmetrised off-diagonal entries are the distortion bivectors.

Distortion terms are keyed by ``(p, q)`` in the orientation the matrix rows
and columns give them: linear pairs (both orders common) as ``p < q``, and
nonlinear pairs as ``(voltage order, current order)``, e.g. ``(4, 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .algebra import Multivector, generalized_product, conjugate, rotation
from .errors import ConsistencyError, PowerFactorUndefined
from .spectra import HarmonicPartition, Spectrum, partition, rms

Pair = tuple[int, int]

#: Relative tolerance of the |S|^2 = |U|^2 |I|^2 = P^2 + Q^2 + D^2 cross-check.
IDENTITY_RTOL = 1e-9


@dataclass(frozen=True)
class HMatrix:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: Mapping[Pair, complex]
    partition: HarmonicPartition

    def __getitem__(self, pq: Pair) -> complex:
        return self.entries.get(pq, 0j)

    def trace(self) -> complex:
        return sum((self[n, n] for n in sorted(self.partition.N)), 0j)

    def to_array(self) -> np.ndarray:
        """Dense matrix with rows/cols ordered as ``self.rows``/``self.cols``."""
        out = np.zeros((len(self.rows), len(self.cols)), dtype=complex)
        for a, p in enumerate(self.rows):
            for b, q in enumerate(self.cols):
                out[a, b] = self[p, q]
        return out


def h_matrix(u: Spectrum, i: Spectrum) -> HMatrix:
    part = partition(u, i)
    rows = tuple(part.voltage_orders)
    cols = tuple(part.current_orders)
    alphas = {n: u.phase(n) for n in part.N}
    entries = {}
    for p in rows:
        for q in cols:
            entries[p, q] = rotation(p, q, alphas, part.N) * u.phasor(p) * i.phasor(q).conjugate()
    return HMatrix(rows, cols, entries, part)


@dataclass(frozen=True)
class PowerMultivector:
    """``(P + jQ) s_0 + sum d_pq s_pq`` with the harmonic bookkeeping kept."""

    scalar: complex
    d_terms: Mapping[Pair, complex] = field(default_factory=dict)
    partition: HarmonicPartition = field(
        default_factory=lambda: HarmonicPartition(frozenset(), frozenset(), frozenset()))

    @property
    def P(self) -> float:
        return self.scalar.real

    @property
    def Q(self) -> float:
        return self.scalar.imag

    @property
    def D(self) -> float:
        return math.sqrt(sum(abs(d) ** 2 for d in self.d_terms.values()))

    def is_linear(self, pair: Pair) -> bool:
        p, q = pair
        return p in self.partition.N and q in self.partition.N

    @property
    def linear_terms(self) -> dict[Pair, complex]:
        return {k: v for k, v in self.d_terms.items() if self.is_linear(k)}

    @property
    def nonlinear_terms(self) -> dict[Pair, complex]:
        return {k: v for k, v in self.d_terms.items() if not self.is_linear(k)}

    def to_multivector(self, n: int | None = None) -> Multivector:
        """Kernel multivector with canonically ordered blades."""
        if n is None:
            n = max((max(k) for k in self.d_terms), default=0)
            n = max([n] + list(self.partition.N))
        terms = {(): self.scalar} if self.scalar else {}
        for (p, q), d in self.d_terms.items():
            terms[(min(p, q), max(p, q))] = d if p < q else -d
        return Multivector(terms, n)


def apparent_power(u: Spectrum, i: Spectrum) -> PowerMultivector:
    """Apparent-power multivector built from the H matrix."""
    h = h_matrix(u, i)
    part = h.partition
    d_terms = {}
    for p in h.rows:
        for q in h.cols:
            if p == q:
                continue
            if p in part.N and q in part.N:
                if p < q:
                    d_terms[p, q] = h[p, q] - h[q, p]
            else:
                d_terms[p, q] = h[p, q]
    return PowerMultivector(h.trace(), dict(sorted(d_terms.items())), part)


def apparent_power_gcga(u: Spectrum, i: Spectrum) -> PowerMultivector:
    """Same quantity evaluated directly with the generalized product.

    Independent of :func:`h_matrix`; used to cross-check it.
    """
    part = partition(u, i)
    uu = u.restricted(part.voltage_orders)
    ii = i.restricted(part.current_orders)
    n = max(uu.orders + ii.orders, default=0)
    prod = generalized_product(
        uu.to_multivector(n), conjugate(ii.to_multivector(n)), uu.tags(), part.N)
    volt, curr = set(part.voltage_orders), set(part.current_orders)
    d_terms = {}
    for b, c in prod.terms.items():
        if len(b) != 2:
            continue
        a, z = b
        if a in volt and z in curr:
            d_terms[a, z] = c
        else:
            d_terms[z, a] = -c
    return PowerMultivector(prod.scalar_part, dict(sorted(d_terms.items())), part)


@dataclass(frozen=True)
class Decomposition:
    linear: Multivector      # (P + jQ) + linear distortion
    nonlinear: Multivector   # nonlinear distortion only
    nonactive: Multivector   # jQ + all distortion
    active: Multivector      # P


def decompose(pm: PowerMultivector) -> Decomposition:
    full = pm.to_multivector()
    n = full.n
    lin = PowerMultivector(pm.scalar, pm.linear_terms, pm.partition).to_multivector(n)
    nonlin = PowerMultivector(0j, pm.nonlinear_terms, pm.partition).to_multivector(n)
    active = Multivector.scalar(pm.P, n)
    return Decomposition(lin, nonlin, full - active, active)


@dataclass(frozen=True)
class PowerSummary:
    P: float
    Q_signed: float
    D: float
    S_mag: float
    U_rms: float
    I_rms: float
    d_magnitudes: Mapping[Pair, float] = field(default_factory=dict)

    @property
    def Q_abs(self) -> float:
        return abs(self.Q_signed)

    @property
    def S_squared(self) -> float:
        return self.S_mag ** 2

    @property
    def PF(self) -> float:
        if self.S_mag == 0:
            raise PowerFactorUndefined("power factor undefined: apparent power is zero")
        return self.P / self.S_mag


def magnitudes(pm: PowerMultivector, u: Spectrum, i: Spectrum) -> PowerSummary:
    """Scalar magnitudes; checks both routes to ``|S|^2`` agree."""
    u_rms, i_rms = rms(u), rms(i)
    s_sq = (u_rms * i_rms) ** 2
    parts_sq = pm.P ** 2 + pm.Q ** 2 + pm.D ** 2
    if abs(s_sq - parts_sq) > IDENTITY_RTOL * max(s_sq, parts_sq, np.finfo(float).tiny):
        raise ConsistencyError(
            f"|U|^2|I|^2 = {s_sq!r} but P^2+Q^2+D^2 = {parts_sq!r}")
    return PowerSummary(
        P=pm.P, Q_signed=pm.Q, D=pm.D, S_mag=math.sqrt(s_sq),
        U_rms=u_rms, I_rms=i_rms,
        d_magnitudes={k: abs(v) for k, v in pm.d_terms.items()},
    )


@dataclass(frozen=True)
class RQI:
    """Relative quality index, the power multivector divided by P."""

    scalar: complex
    terms: Mapping[Pair, complex]

    @property
    def magnitude(self) -> float:
        return math.sqrt(abs(self.scalar) ** 2 + sum(abs(t) ** 2 for t in self.terms.values()))

    @property
    def PF(self) -> float:
        return 1.0 / self.magnitude


def rqi(pm: PowerMultivector) -> RQI:
    if not pm.P > 0:
        raise PowerFactorUndefined(f"no meaningful power factor for P = {pm.P!r} <= 0")
    return RQI(1 + 1j * pm.Q / pm.P, {k: v / pm.P for k, v in pm.d_terms.items()})


def harmonic_powers(u: Spectrum, i: Spectrum) -> dict[int, complex]:
    """Per-harmonic ``P_n + jQ_n`` over the common orders."""
    part = partition(u, i)
    return {n: u.phasor(n) * i.phasor(n).conjugate() for n in sorted(part.N)}
