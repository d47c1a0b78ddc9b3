"""Write the small bundled circuit set under circuits/."""

from pathlib import Path

import numpy as np

from qcprofile.generators import figure2_circuit, ghz, qft, random_circuit
from qcprofile.qasm import to_qasm

ROOT = Path(__file__).resolve().parents[1] / "circuits"


def main():
    rng = np.random.default_rng(7)
    real = [ghz(5), ghz(8), qft(4), qft(6), figure2_circuit()]
    rand = [random_circuit(6, 40, rng, 0.5, name=f"rand6_{i}") for i in range(3)]
    rand += [random_circuit(10, 80, rng, 0.6, name=f"rand10_{i}") for i in range(3)]
    for sub, circuits in (("real", real), ("random", rand)):
        (ROOT / sub).mkdir(parents=True, exist_ok=True)
        for c in circuits:
            (ROOT / sub / f"{c.name}.qasm").write_text(to_qasm(c))
    toffoli = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\ncreg c[3];\nh q[0];\nh q[1];\nccx q[0],q[1],q[2];\nbarrier q;\nmeasure q -> c;\n'
    (ROOT / "real" / "toffoli.qasm").write_text(toffoli)


if __name__ == "__main__":
    main()
