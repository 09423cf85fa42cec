"""Multivector apparent power for nonsinusoidal single-port circuits.

Voltage and current harmonics are treated as complex vector-phasors in a
Clifford algebra; their generalized geometric product splits apparent power
into active, reactive and per-plane distortion components.  Passive shunt
compensators (optimal capacitor, fixed-pole LC bank) are designed and
evaluated through the same decomposition.
"""
from .algebra import (
    Multivector,
    PhasorTag,
    blade,
    blade_mul,
    conjugate,
    generalized_product,
    geometric_product,
    norm,
    reverse,
)
from .circuit import CircuitFile, load_circuit, parse_circuit
from .compensation import (
    CompensatorDesign,
    LCBranch,
    ShuntCapacitor,
    admittance,
    apply_compensator,
    design_fixed_pole_lc,
    optimal_shunt_capacitor,
)
from .power import (
    HMatrix,
    PowerMultivector,
    PowerSummary,
    apparent_power,
    apparent_power_gcga,
    decompose,
    h_matrix,
    magnitudes,
    rqi,
)
from .spectra import (
    HarmonicComponent,
    HarmonicPartition,
    Spectrum,
    cft,
    instantaneous_power,
    partition,
    rms,
    sample,
)

__version__ = "0.1.0"
