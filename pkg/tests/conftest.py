import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from qcprofile.circuit import Circuit, Gate

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ONE_Q_NAMES = ("h", "x", "t", "s", "z")


@st.composite
def circuits(draw, max_qubits=5, max_gates=12, min_qubits=1):
    n = draw(st.integers(min_qubits, max_qubits))
    k = draw(st.integers(0, max_gates))
    gates = []
    for _ in range(k):
        if n >= 2 and draw(st.booleans()):
            a = draw(st.integers(0, n - 1))
            b = draw(st.integers(0, n - 2))
            gates.append(Gate("cx", (a, b if b < a else b + 1)))
        else:
            gates.append(Gate(draw(st.sampled_from(ONE_Q_NAMES)), (draw(st.integers(0, n - 1)),)))
    return Circuit(n, tuple(gates))


def random_small_circuit(rng: np.random.Generator, max_qubits=5, max_gates=12, p2q=0.5) -> Circuit:
    n = int(rng.integers(1, max_qubits + 1))
    k = int(rng.integers(0, max_gates + 1))
    gates = []
    for _ in range(k):
        if n >= 2 and rng.random() < p2q:
            a, b = (int(x) for x in rng.choice(n, 2, replace=False))
            gates.append(Gate("cx", (a, b)))
        else:
            gates.append(Gate(ONE_Q_NAMES[int(rng.integers(len(ONE_Q_NAMES)))], (int(rng.integers(n)),)))
    return Circuit(n, tuple(gates))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
