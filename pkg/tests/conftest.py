import math
from pathlib import Path

import numpy as np
import pytest

from gcga_power.circuit import load_circuit
from gcga_power.spectra import Spectrum

CIRCUITS = Path(__file__).resolve().parent.parent / "circuits"
W50 = 100 * math.pi

ACCEPTANCE_LINES = []


def deg(x):
    return math.radians(x)


def phasors(*triples):
    return {n: r * complex(math.cos(deg(a)), math.sin(deg(a))) for n, r, a in triples}


@pytest.fixture
def circuits_dir():
    return CIRCUITS


@pytest.fixture
def ex1():
    c = load_circuit(CIRCUITS / "example1.json")
    return c.voltage_spectrum(), c.current_spectrum()


@pytest.fixture
def ex1b():
    c = load_circuit(CIRCUITS / "example1b.json")
    return c.voltage_spectrum(), c.current_spectrum()


@pytest.fixture
def ex2():
    c = load_circuit(CIRCUITS / "example2.json")
    return c.voltage_spectrum(), c.current_spectrum()


def random_pair(rng, max_order=8, omega=W50, force_common=False):
    """Random voltage/current spectra with arbitrary N/L/M overlap."""
    orders = np.arange(1, max_order + 1)
    while True:
        vu = [int(n) for n in orders if rng.random() < 0.6]
        vi = [int(n) for n in orders if rng.random() < 0.6]
        if vu and vi and (not force_common or set(vu) & set(vi)):
            break
    u = {n: rng.uniform(1, 300) * np.exp(1j * rng.uniform(-np.pi, np.pi)) for n in vu}
    i = {n: rng.uniform(0.1, 30) * np.exp(1j * rng.uniform(-np.pi, np.pi)) for n in vi}
    return Spectrum("voltage", omega, u), Spectrum("current", omega, i)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
