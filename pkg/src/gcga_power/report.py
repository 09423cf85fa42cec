"""Analysis reports and their table / JSON / CSV renderings."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .circuit import CircuitFile
from .compensation import (
    CompensatorDesign,
    ShuntCapacitor,
    apply_compensator,
    design_fixed_pole_lc,
    optimal_shunt_capacitor,
)
from .errors import CircuitFileError
from .power import apparent_power, harmonic_powers, magnitudes, rqi
from .spectra import Spectrum, period, sample

UNITS = {
    "U_rms": "V", "I_rms": "A", "P": "W", "Q_signed": "var", "Q_abs": "var",
    "D": "VA", "S": "VA", "S_squared": "VA^2", "PF": "1", "delta": "1",
    "d": "VA", "C": "F", "L": "H",
}


def _cx(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def power_block(u: Spectrum, i: Spectrum) -> dict:
    """Everything the power decomposition says about one (u, i) pair."""
    pm = apparent_power(u, i)
    summary = magnitudes(pm, u, i)
    part = pm.partition
    block = {
        "partition": {k: sorted(getattr(part, k)) for k in ("N", "L", "M")},
        "summary": {
            "U_rms": summary.U_rms, "I_rms": summary.I_rms,
            "P": summary.P, "Q_signed": summary.Q_signed, "Q_abs": summary.Q_abs,
            "D": summary.D, "S": summary.S_mag, "S_squared": summary.S_squared,
            "PF": None, "delta": None,
        },
        "scalar": _cx(pm.scalar),
        "distortion": [
            {"p": p, "q": q, **_cx(d), "magnitude": abs(d),
             "kind": "linear" if pm.is_linear((p, q)) else "nonlinear"}
            for (p, q), d in pm.d_terms.items()
        ],
        "harmonics": [
            {"order": n, "P": s.real, "Q": s.imag,
             "P_sign": "+" if s.real >= 0 else "-"}
            for n, s in harmonic_powers(u, i).items()
        ],
        "rqi": None,
    }
    if summary.S_mag > 0:
        r = rqi(pm)  # raises when P <= 0
        block["summary"]["PF"] = r.PF
        block["summary"]["delta"] = r.magnitude
        block["rqi"] = {
            "scalar": _cx(r.scalar),
            "terms": [{"p": p, "q": q, **_cx(t)} for (p, q), t in r.terms.items()],
        }
    return block


@dataclass
class AnalysisReport:
    inputs: dict
    partition: dict
    summary: dict
    scalar: dict
    distortion: list
    harmonics: list
    rqi: Optional[dict]
    units: dict = field(default_factory=lambda: dict(UNITS))
    compensation: Optional[dict] = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        return cls(**data)


def analyze(circuit: CircuitFile) -> AnalysisReport:
    u, i = circuit.voltage_spectrum(), circuit.current_spectrum()
    return AnalysisReport(inputs=circuit.to_dict(), **power_block(u, i))


def _design_dict(design: CompensatorDesign) -> list:
    out = []
    for e in design.elements:
        if isinstance(e, ShuntCapacitor):
            out.append({"type": "capacitor", "C": e.C})
        else:
            out.append({"type": "lc", "L": e.L, "C": e.C,
                        "pole_rad_s": e.pole, "pole_multiplier": e.pole / design.omega})
    return out


def _comparison(columns: list[str], blocks: list[dict]) -> dict:
    pairs = []
    for b in blocks:
        for d in b["distortion"]:
            if (d["p"], d["q"]) not in pairs:
                pairs.append((d["p"], d["q"]))
    rows = [
        {"quantity": "I_Load", "unit": "A", "values": [b["summary"]["I_rms"] for b in blocks]},
        {"quantity": "P", "unit": "W", "values": [b["summary"]["P"] for b in blocks]},
        {"quantity": "Q", "unit": "var", "values": [b["summary"]["Q_abs"] for b in blocks]},
    ]
    for p, q in sorted(pairs):
        vals = []
        for b in blocks:
            hit = [d["magnitude"] for d in b["distortion"] if (d["p"], d["q"]) == (p, q)]
            vals.append(hit[0] if hit else None)
        rows.append({"quantity": f"D_{p},{q}", "unit": "VA", "values": vals})
    rows += [
        {"quantity": "D", "unit": "VA", "values": [b["summary"]["D"] for b in blocks]},
        {"quantity": "S", "unit": "VA", "values": [b["summary"]["S"] for b in blocks]},
        {"quantity": "|delta|", "unit": "1", "values": [b["summary"]["delta"] for b in blocks]},
        {"quantity": "PF", "unit": "1", "values": [b["summary"]["PF"] for b in blocks]},
    ]
    return {"columns": columns, "rows": rows}


def compensate(circuit: CircuitFile, mode: Optional[str] = None,
               poles: Optional[list[float]] = None) -> AnalysisReport:
    """Design a compensator, apply it and compare before/after.

    ``mode`` is ``"cap"`` (optimal capacitor) or ``"lc"`` (fixed-pole bank).
    Without a mode the file's own compensator entry is used.
    """
    u, i = circuit.voltage_spectrum(), circuit.current_spectrum()
    spec = circuit.compensator
    if mode is None:
        if spec is None:
            raise CircuitFileError("no --mode given and the circuit file has no compensator")
        if spec.type == "capacitor":
            design = CompensatorDesign((ShuntCapacitor(spec.farads),), u.omega)
            mode, label = "cap", "C"
        else:
            design = design_fixed_pole_lc(u, i, list(spec.pole_multipliers))
            mode, label = "lc", "LC"
    elif mode == "cap":
        design = CompensatorDesign((optimal_shunt_capacitor(u, i),), u.omega)
        label = "C_opt"
    elif mode == "lc":
        if poles is None:
            if spec is None or spec.type != "lc":
                raise CircuitFileError("lc mode needs pole multipliers (--poles or a file entry)")
            poles = list(spec.pole_multipliers)
        design = design_fixed_pole_lc(u, i, poles)
        label = "LC"
    else:
        raise ValueError(f"unknown compensation mode {mode!r}")

    before = power_block(u, i)
    after = power_block(u, apply_compensator(u, i, design))
    report = AnalysisReport(inputs=circuit.to_dict(), **before)
    report.compensation = {
        "mode": mode,
        "label": label,
        "design": _design_dict(design),
        "after": after,
        "comparison": _comparison(["-", label], [before, after]),
    }
    return report


# -- renderers ---------------------------------------------------------------

def render_json(report: AnalysisReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def _num(x) -> str:
    return "" if x is None else repr(float(x))


def render_csv(report: AnalysisReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "quantity", "p", "q", "real", "imag", "unit"])
    _csv_block(w, "", report.to_dict())
    comp = report.compensation
    if comp:
        for e in comp["design"]:
            for key in ("C", "L"):
                if key in e:
                    w.writerow(["design", f"{e['type']}_{key}", "", "", _num(e[key]), "", UNITS[key]])
        _csv_block(w, "after_", comp["after"])
    return buf.getvalue()


def _csv_block(w, prefix: str, block: dict):
    for key, val in block["summary"].items():
        w.writerow([prefix + "summary", key, "", "", _num(val), "", UNITS[key]])
    s = block["scalar"]
    w.writerow([prefix + "scalar", "P+jQ", "", "", _num(s["re"]), _num(s["im"]), "VA"])
    for d in block["distortion"]:
        w.writerow([prefix + "distortion", d["kind"], d["p"], d["q"], _num(d["re"]), _num(d["im"]), "VA"])
    for h in block["harmonics"]:
        w.writerow([prefix + "harmonic", "P+jQ", h["order"], h["order"], _num(h["P"]), _num(h["Q"]), "VA"])
    if block["rqi"]:
        r = block["rqi"]
        w.writerow([prefix + "rqi", "scalar", "", "", _num(r["scalar"]["re"]), _num(r["scalar"]["im"]), "1"])
        for t in r["terms"]:
            w.writerow([prefix + "rqi", "term", t["p"], t["q"], _num(t["re"]), _num(t["im"]), "1"])


def _fmt(x, nd=2) -> str:
    return "-" if x is None else f"{x:.{nd}f}"


def _cfmt(re, im) -> str:
    return f"{re:.2f} {'+' if im >= 0 else '-'} j{abs(im):.2f}"


def render_table(report: AnalysisReport) -> str:
    r = report.to_dict()
    lines = []
    inp = r["inputs"]
    lines.append(f"fundamental: {inp['fundamental_hz']:g} Hz")
    p = r["partition"]
    lines.append(f"harmonics  N (common) = {p['N']}  L (voltage only) = {p['L']}  M (current only) = {p['M']}")
    lines.append("")
    lines += _table_block(r)
    comp = r["compensation"]
    if comp:
        lines.append("")
        lines.append(f"compensator ({comp['label']}):")
        for i, e in enumerate(comp["design"], 1):
            if e["type"] == "capacitor":
                lines.append(f"  C = {e['C'] * 1e6:.2f} uF")
            else:
                lines.append(f"  branch {i}: L = {e['L'] * 1e3:.2f} mH  C = {e['C'] * 1e6:.2f} uF"
                             f"  pole = {e['pole_multiplier']:.3g} w")
        lines.append("")
        lines.append("after compensation:")
        lines += _table_block(comp["after"])
        lines.append("")
        cmp_ = comp["comparison"]
        width = max(len(row["quantity"]) for row in cmp_["rows"]) + 2
        lines.append("".ljust(width) + "".join(c.rjust(14) for c in cmp_["columns"]) + "  unit")
        for row in cmp_["rows"]:
            lines.append(row["quantity"].ljust(width)
                         + "".join(_fmt(v).rjust(14) for v in row["values"]) + f"  {row['unit']}")
    return "\n".join(lines) + "\n"


def _table_block(b: dict) -> list[str]:
    s = b["summary"]
    lines = [
        f"  U rms  = {_fmt(s['U_rms'])} V",
        f"  I rms  = {_fmt(s['I_rms'])} A",
        f"  P      = {_fmt(s['P'])} W",
        f"  Q      = {_fmt(s['Q_signed'])} var  (|Q| = {_fmt(s['Q_abs'])} var)",
        f"  D      = {_fmt(s['D'])} VA",
        f"  S      = {_fmt(s['S'])} VA  (S^2 = {s['S_squared']:.6g} VA^2)",
        f"  |delta|= {_fmt(s['delta'])}",
        f"  PF     = {_fmt(s['PF'])}",
    ]
    if b["distortion"]:
        lines.append("  distortion bivectors [VA]:")
        for d in b["distortion"]:
            lines.append(f"    s{d['p']}{d['q']:<4} {_cfmt(d['re'], d['im']):>24}"
                         f"   |{_fmt(d['magnitude'])}|  {d['kind']}")
    if b["harmonics"]:
        lines.append("  per-harmonic power:")
        for h in b["harmonics"]:
            lines.append(f"    n={h['order']:<3} P = {_fmt(h['P']):>10} W  Q = {_fmt(h['Q']):>10} var  [{h['P_sign']}]")
    return lines


# -- waveform ----------------------------------------------------------------

def waveform_rows(circuit: CircuitFile, samples: int, cycles: int) -> np.ndarray:
    """Columns t, u, i, p sampled uniformly over ``cycles`` periods, endpoint excluded."""
    if samples < 2 or cycles < 1:
        raise ValueError(f"need samples >= 2 and cycles >= 1, got {samples}, {cycles}")
    u, i = circuit.voltage_spectrum(), circuit.current_spectrum()
    t = np.arange(samples) * (cycles * period(u) / samples)
    uu, ii = sample(u, t), sample(i, t)
    return np.column_stack([t, uu, ii, uu * ii])


def render_waveform(rows: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "u", "i", "p"])
    for r in rows:
        w.writerow([repr(float(x)) for x in r])
    return buf.getvalue()
