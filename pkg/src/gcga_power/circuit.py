"""Circuit description files.

A circuit file is JSON::

    {
      "fundamental_hz": 50,
      "voltage": [{"order": 1, "rms": 200, "phase_deg": 0}, ...],
      "current": [{"order": 1, "rms": 20, "phase_deg": -45}, ...],
      "compensator": {"type": "lc", "pole_multipliers": [1.2, 2.5, 4.5]}
    }

Phases are sine-referenced degrees; ``compensator`` is optional and may also
be ``{"type": "capacitor", "farads": 3.653e-05}``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import jsonschema

from .errors import CircuitFileError
from .spectra import HarmonicComponent, Spectrum, cft

_HARMONIC_LIST = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["order", "rms"],
        "additionalProperties": False,
        "properties": {
            "order": {"type": "integer", "minimum": 1},
            "rms": {"type": "number", "exclusiveMinimum": 0},
            "phase_deg": {"type": "number"},
        },
    },
}

CIRCUIT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "circuit",
    "type": "object",
    "required": ["fundamental_hz", "voltage", "current"],
    "additionalProperties": False,
    "properties": {
        "fundamental_hz": {"type": "number", "exclusiveMinimum": 0},
        "voltage": _HARMONIC_LIST,
        "current": _HARMONIC_LIST,
        "compensator": {
            "type": "object",
            "required": ["type"],
            "properties": {"type": {"enum": ["capacitor", "lc"]}},
            "oneOf": [
                {
                    "properties": {"type": {"const": "capacitor"},
                                   "farads": {"type": "number", "minimum": 0}},
                    "required": ["farads"],
                    "additionalProperties": False,
                },
                {
                    "properties": {"type": {"const": "lc"},
                                   "pole_multipliers": {"type": "array",
                                                        "items": {"type": "number",
                                                                  "exclusiveMinimum": 0}}},
                    "required": ["pole_multipliers"],
                    "additionalProperties": False,
                },
            ],
        },
    },
}


@dataclass(frozen=True)
class HarmonicEntry:
    order: int
    rms: float
    phase_deg: float = 0.0

    def component(self) -> HarmonicComponent:
        return HarmonicComponent(self.order, self.rms, math.radians(self.phase_deg))


@dataclass(frozen=True)
class CompensatorSpec:
    type: str
    farads: Optional[float] = None
    pole_multipliers: Optional[tuple[float, ...]] = None


@dataclass(frozen=True)
class CircuitFile:
    fundamental_hz: float
    voltage: tuple[HarmonicEntry, ...] = ()
    current: tuple[HarmonicEntry, ...] = ()
    compensator: Optional[CompensatorSpec] = None

    @property
    def omega(self) -> float:
        return 2 * math.pi * self.fundamental_hz

    def voltage_spectrum(self) -> Spectrum:
        return cft([h.component() for h in self.voltage], "voltage", self.omega)

    def current_spectrum(self) -> Spectrum:
        return cft([h.component() for h in self.current], "current", self.omega)

    def to_dict(self) -> dict:
        out = {
            "fundamental_hz": self.fundamental_hz,
            "voltage": [vars(h).copy() for h in self.voltage],
            "current": [vars(h).copy() for h in self.current],
        }
        if self.compensator is not None:
            c = self.compensator
            out["compensator"] = ({"type": "capacitor", "farads": c.farads} if c.type == "capacitor"
                                  else {"type": "lc", "pole_multipliers": list(c.pole_multipliers)})
        return out


def _entries(items, label) -> tuple[HarmonicEntry, ...]:
    seen = set()
    out = []
    for item in items:
        n = item["order"]
        if n in seen:
            raise CircuitFileError(f"duplicate {label} harmonic order {n}")
        seen.add(n)
        out.append(HarmonicEntry(n, float(item["rms"]), float(item.get("phase_deg", 0.0))))
    return tuple(out)


def parse_circuit(text: str) -> CircuitFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitFileError(f"syntax error: {exc.msg}", exc.lineno, exc.colno) from exc
    comp = data.get("compensator") if isinstance(data, dict) else None
    if isinstance(comp, dict) and comp.get("type") not in ("capacitor", "lc"):
        raise CircuitFileError(f"unknown compensator type {comp.get('type')!r}")
    try:
        jsonschema.validate(data, CIRCUIT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise CircuitFileError(f"invalid circuit at {where}: {exc.message}") from exc

    spec = None
    if comp is not None:
        if comp["type"] == "capacitor":
            spec = CompensatorSpec("capacitor", farads=float(comp["farads"]))
        else:
            spec = CompensatorSpec("lc", pole_multipliers=tuple(float(k) for k in comp["pole_multipliers"]))
    return CircuitFile(
        fundamental_hz=float(data["fundamental_hz"]),
        voltage=_entries(data["voltage"], "voltage"),
        current=_entries(data["current"], "current"),
        compensator=spec,
    )


def load_circuit(path) -> CircuitFile:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())
