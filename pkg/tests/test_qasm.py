import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import circuits
from oracles import circuit_unitary, toffoli_matrix
from qcprofile.circuit import Circuit, Gate
from qcprofile.qasm import (
    QasmError,
    QasmSyntaxError,
    QubitIndexError,
    UnsupportedStatementError,
    parse_qasm,
    parse_qasm_with_metadata,
    to_qasm,
)


def test_minimal_program():
    c = parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1];")
    assert c.n_qubits == 2
    assert c.gates == (Gate("h", (0,)), Gate("cx", (0, 1)))


def test_empty_program():
    c = parse_qasm("qreg q[1];")
    assert c.n_qubits == 1 and c.gates == ()


def test_toffoli_expansion_is_toffoli():
    c = parse_qasm("qreg q[3]; ccx q[0],q[1],q[2];")
    assert c.n_gates == 15
    u = circuit_unitary(3, [(g.name, g.qubits, g.params) for g in c.gates])
    assert np.allclose(u, toffoli_matrix(), atol=1e-12)


def test_cswap_expansion_is_controlled_swap():
    c = parse_qasm("qreg q[3]; cswap q[0],q[1],q[2];")
    u = circuit_unitary(3, [(g.name, g.qubits, g.params) for g in c.gates])
    expected = np.eye(8)
    expected[[5, 6]] = expected[[6, 5]]
    assert np.allclose(u, expected, atol=1e-12)


def test_three_qubit_gate_rejected_without_decomposition():
    with pytest.raises(UnsupportedStatementError):
        parse_qasm("qreg q[3]; ccx q[0],q[1],q[2];", decompose=False)


def test_header_registers_and_metadata():
    text = """OPENQASM 2.0;
include "qelib1.inc";
qreg a[2];
qreg b[2];
creg c[4];
h a;
cx a[1],b[0];
barrier a,b;
measure b[1] -> c[3];
reset a[0];
"""
    c, meta = parse_qasm_with_metadata(text)
    assert c.n_qubits == 4
    assert c.gates == (Gate("h", (0,)), Gate("h", (1,)), Gate("cx", (1, 2)))
    assert meta.n_barrier == 1 and meta.n_measure == 1 and meta.n_reset == 1
    assert meta.registers == {"a": [0, 2], "b": [2, 2]}


def test_broadcast_over_registers():
    c = parse_qasm("qreg a[3]; qreg b[3]; cx a,b;")
    assert [g.qubits for g in c.gates] == [(0, 3), (1, 4), (2, 5)]


def test_parameter_expressions():
    c = parse_qasm("qreg q[1]; rz(pi/4) q[0]; u3(-pi, 2*pi^2, sqrt(4)+ln(1)) q[0];")
    assert c.gates[0].params == (math.pi / 4,)
    assert c.gates[1].params == pytest.approx((-math.pi, 2 * math.pi**2, 2.0))


def test_user_gate_is_inlined():
    text = """qreg q[3];
gate bell(theta) a, b { h a; cx a, b; rz(theta/2) b; }
bell(pi) q[2], q[0];
"""
    c = parse_qasm(text)
    assert c.gates == (Gate("h", (2,)), Gate("cx", (2, 0)), Gate("rz", (0,), (math.pi / 2,)))


@pytest.mark.parametrize(
    "text,exc,line",
    [
        ("qreg q[2];\nh q[2];", QubitIndexError, 2),
        ("qreg q[2];\n\ncx q[0] q[1];", QasmSyntaxError, 3),
        ("qreg q[2];\nfoo q[0];", UnsupportedStatementError, 2),
        ("qreg q[1];\nopaque g a;", UnsupportedStatementError, 2),
        ("qreg q[2];\ncx q[0],q[0];", QasmSyntaxError, 2),
    ],
)
def test_errors_carry_location(text, exc, line):
    with pytest.raises(exc) as info:
        parse_qasm(text)
    assert isinstance(info.value, QasmError)
    assert info.value.line == line
    assert info.value.column is not None


@given(circuits(max_qubits=6, max_gates=20))
def test_round_trip(c):
    assert parse_qasm(to_qasm(c)).gates == c.gates


@given(st.floats(min_value=-10, max_value=10, allow_nan=False))
def test_round_trip_keeps_parameters_exactly(theta):
    c = Circuit(2, (Gate("cp", (0, 1), (theta,)),))
    assert parse_qasm(to_qasm(c)).gates[0].params == (theta,)
