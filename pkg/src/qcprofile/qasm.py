"""OpenQASM 2.0 subset reader and writer.

Supported: ``OPENQASM``/``include`` headers, ``qreg``/``creg``, ``gate``
definitions (inlined on use), qelib1 gate applications with register
broadcasting, ``measure``, ``barrier`` and ``reset``. Measurements, barriers
and resets are stripped from the gate list and counted in ``ParseMetadata``.
Three-qubit gates are expanded by a fixed rule table (``ccx``, ``cswap``).
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .circuit import Circuit, Gate


class QasmError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class QasmSyntaxError(QasmError):
    pass


class UnsupportedStatementError(QasmError):
    pass


class QubitIndexError(QasmError):
    pass


# name -> (number of params, number of qubits)
QELIB1 = {
    "U": (3, 1), "u": (3, 1), "u3": (3, 1), "u2": (2, 1), "u1": (1, 1), "u0": (1, 1),
    "p": (1, 1), "id": (0, 1), "x": (0, 1), "y": (0, 1), "z": (0, 1), "h": (0, 1),
    "s": (0, 1), "sdg": (0, 1), "t": (0, 1), "tdg": (0, 1), "sx": (0, 1), "sxdg": (0, 1),
    "rx": (1, 1), "ry": (1, 1), "rz": (1, 1),
    "CX": (0, 2), "cx": (0, 2), "cy": (0, 2), "cz": (0, 2), "ch": (0, 2), "swap": (0, 2),
    "crx": (1, 2), "cry": (1, 2), "crz": (1, 2), "cu1": (1, 2), "cp": (1, 2),
    "cu3": (3, 2), "rxx": (1, 2), "ryy": (1, 2), "rzz": (1, 2), "csx": (0, 2),
    "ccx": (0, 3), "cswap": (0, 3),
}

# (gate, local qubit indices) sequences; the 15-gate Toffoli is the textbook
# Clifford+T network with target on local qubit 2
DECOMPOSITIONS = {
    "ccx": [
        ("h", (2,)), ("cx", (1, 2)), ("tdg", (2,)), ("cx", (0, 2)), ("t", (2,)),
        ("cx", (1, 2)), ("tdg", (2,)), ("cx", (0, 2)), ("t", (1,)), ("t", (2,)),
        ("h", (2,)), ("cx", (0, 1)), ("t", (0,)), ("tdg", (1,)), ("cx", (0, 1)),
    ],
}
# controlled swap = cx(b, a) . ccx(c, a -> b) . cx(b, a)
DECOMPOSITIONS["cswap"] = [("cx", (2, 1))] + DECOMPOSITIONS["ccx"] + [("cx", (2, 1))]


@dataclass
class ParseMetadata:
    n_measure: int = 0
    n_barrier: int = 0
    n_reset: int = 0
    decompositions: dict[str, int] = field(default_factory=dict)
    registers: dict[str, list[int]] = field(default_factory=dict)
    custom_gates: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<real>(?:\d+\.\d*|\.\d+)(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<int>\d+)
  | (?P<string>"[^"\n]*")
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<eq>==)
  | (?P<sym>[()\[\]{},;+\-*/^])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QasmSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    # block comments are not part of OpenQASM 2.0
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


_FUNCS = {"sin": math.sin, "cos": math.cos, "tan": math.tan, "exp": math.exp, "ln": math.log, "sqrt": math.sqrt}


def _eval_expr(node, env: dict[str, float]) -> float:
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "var":
        return env[node[1]]
    if kind == "neg":
        return -_eval_expr(node[1], env)
    if kind == "call":
        return _FUNCS[node[1]](_eval_expr(node[2], env))
    a, b = _eval_expr(node[1], env), _eval_expr(node[2], env)
    if kind == "+":
        return a + b
    if kind == "-":
        return a - b
    if kind == "*":
        return a * b
    if kind == "/":
        return a / b
    return a**b


@dataclass
class _GateDef:
    params: list[str]
    qargs: list[str]
    body: list[tuple[str, list, list[str], _Tok]]


class _Parser:
    def __init__(self, text: str, decompose: bool):
        self.toks = _tokenize(text)
        self.i = 0
        self.decompose = decompose
        self.meta = ParseMetadata()
        self.qregs: dict[str, tuple[int, int]] = {}
        self.cregs: dict[str, int] = {}
        self.n_qubits = 0
        self.gates: list[Gate] = []
        self.defs: dict[str, _GateDef] = {}

    # token helpers
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str | None = None, kind: str | None = None) -> _Tok:
        tok = self.next()
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            raise QasmSyntaxError(f"expected {want}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return tok

    def accept(self, text: str) -> bool:
        if self.peek().text == text:
            self.i += 1
            return True
        return False

    # expressions
    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            node = (op, node, self.unary())
        return node

    def unary(self):
        if self.accept("-"):
            return ("neg", self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            return ("^", base, self.unary())
        return base

    def atom(self):
        tok = self.next()
        if tok.kind in ("real", "int"):
            return ("num", float(tok.text))
        if tok.kind == "id":
            if tok.text == "pi":
                return ("num", math.pi)
            if tok.text in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return ("call", tok.text, arg)
            return ("var", tok.text, tok)
        if tok.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise QasmSyntaxError(f"unexpected {tok.text or 'end of input'!r} in expression", tok.line, tok.col)

    def param_list(self) -> list:
        params = []
        if self.accept("("):
            if not self.accept(")"):
                params.append(self.expr())
                while self.accept(","):
                    params.append(self.expr())
                self.expect(")")
        return params

    # program
    def parse(self) -> tuple[int, list[Gate], ParseMetadata]:
        if self.peek().text == "OPENQASM":
            self.next()
            self.next()
            self.expect(";")
        while self.peek().kind != "eof":
            self.statement()
        return self.n_qubits, self.gates, self.meta

    def statement(self):
        tok = self.peek()
        if tok.kind != "id":
            raise QasmSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.col)
        word = tok.text
        if word == "include":
            self.next()
            self.expect(kind="string")
            self.expect(";")
        elif word in ("qreg", "creg"):
            self.next()
            name = self.expect(kind="id").text
            self.expect("[")
            size = int(self.expect(kind="int").text)
            self.expect("]")
            self.expect(";")
            if word == "qreg":
                self.qregs[name] = (self.n_qubits, size)
                self.meta.registers[name] = [self.n_qubits, size]
                self.n_qubits += size
            else:
                self.cregs[name] = size
        elif word == "gate":
            self.gate_definition()
        elif word in ("opaque", "if"):
            raise UnsupportedStatementError(f"{word!r} statements are not supported", tok.line, tok.col)
        elif word == "measure":
            self.next()
            qubits = self.qarg()
            self.expect("->")
            self.carg()
            self.expect(";")
            self.meta.n_measure += len(qubits)
        elif word == "barrier":
            self.next()
            self.qarg()
            while self.accept(","):
                self.qarg()
            self.expect(";")
            self.meta.n_barrier += 1
        elif word == "reset":
            self.next()
            self.meta.n_reset += len(self.qarg())
            self.expect(";")
        else:
            self.application()

    def qarg(self) -> list[int]:
        tok = self.expect(kind="id")
        if tok.text not in self.qregs:
            raise QasmSyntaxError(f"unknown quantum register {tok.text!r}", tok.line, tok.col)
        offset, size = self.qregs[tok.text]
        if self.accept("["):
            itok = self.expect(kind="int")
            self.expect("]")
            idx = int(itok.text)
            if idx >= size:
                raise QubitIndexError(f"index {idx} out of range for {tok.text}[{size}]", itok.line, itok.col)
            return [offset + idx]
        return list(range(offset, offset + size))

    def carg(self):
        tok = self.expect(kind="id")
        if tok.text not in self.cregs:
            raise QasmSyntaxError(f"unknown classical register {tok.text!r}", tok.line, tok.col)
        if self.accept("["):
            itok = self.expect(kind="int")
            self.expect("]")
            if int(itok.text) >= self.cregs[tok.text]:
                raise QasmSyntaxError(f"classical index {itok.text} out of range", itok.line, itok.col)

    def gate_definition(self):
        self.next()
        name_tok = self.expect(kind="id")
        params = []
        if self.accept("("):
            if not self.accept(")"):
                params.append(self.expect(kind="id").text)
                while self.accept(","):
                    params.append(self.expect(kind="id").text)
                self.expect(")")
        qargs = [self.expect(kind="id").text]
        while self.accept(","):
            qargs.append(self.expect(kind="id").text)
        self.expect("{")
        body = []
        while not self.accept("}"):
            tok = self.expect(kind="id")
            if tok.text == "barrier":
                self.expect(kind="id")
                while self.accept(","):
                    self.expect(kind="id")
                self.expect(";")
                continue
            exprs = self.param_list()
            args = [self.expect(kind="id").text]
            while self.accept(","):
                args.append(self.expect(kind="id").text)
            self.expect(";")
            for a in args:
                if a not in qargs:
                    raise QasmSyntaxError(f"unknown gate argument {a!r}", tok.line, tok.col)
            body.append((tok.text, exprs, args, tok))
        self.defs[name_tok.text] = _GateDef(params, qargs, body)
        self.meta.custom_gates.append(name_tok.text)

    def application(self):
        tok = self.next()
        exprs = self.param_list()
        args = [self.qarg()]
        while self.accept(","):
            args.append(self.qarg())
        self.expect(";")
        try:
            params = [_eval_expr(e, {}) for e in exprs]
        except KeyError as exc:
            raise QasmSyntaxError(f"unknown identifier {exc.args[0]!r}", tok.line, tok.col) from None
        widths = {len(a) for a in args if len(a) > 1}
        if len(widths) > 1:
            raise QasmSyntaxError("broadcast registers differ in size", tok.line, tok.col)
        width = widths.pop() if widths else 1
        for k in range(width):
            qubits = [a[k] if len(a) > 1 else a[0] for a in args]
            self.emit(tok.text, params, qubits, tok)

    def emit(self, name: str, params: list[float], qubits: list[int], tok: _Tok):
        if len(set(qubits)) != len(qubits):
            raise QasmSyntaxError(f"gate {name!r} applied to repeated qubit", tok.line, tok.col)
        if name in self.defs:
            gdef = self.defs[name]
            if len(params) != len(gdef.params) or len(qubits) != len(gdef.qargs):
                raise QasmSyntaxError(f"wrong number of arguments for gate {name!r}", tok.line, tok.col)
            env = dict(zip(gdef.params, params))
            qmap = dict(zip(gdef.qargs, qubits))
            for sub, sub_exprs, sub_args, sub_tok in gdef.body:
                try:
                    sub_params = [_eval_expr(e, env) for e in sub_exprs]
                except KeyError as exc:
                    raise QasmSyntaxError(f"unknown identifier {exc.args[0]!r}", sub_tok.line, sub_tok.col) from None
                self.emit(sub, sub_params, [qmap[a] for a in sub_args], sub_tok)
            return
        if name not in QELIB1:
            raise UnsupportedStatementError(f"unknown gate {name!r}", tok.line, tok.col)
        n_params, n_q = QELIB1[name]
        if len(params) != n_params or len(qubits) != n_q:
            raise QasmSyntaxError(
                f"gate {name!r} takes {n_params} parameter(s) and {n_q} qubit(s)", tok.line, tok.col
            )
        if n_q >= 3:
            if not self.decompose or name not in DECOMPOSITIONS:
                raise UnsupportedStatementError(f"{n_q}-qubit gate {name!r} needs decomposition", tok.line, tok.col)
            for sub, local in DECOMPOSITIONS[name]:
                self.gates.append(Gate(sub, tuple(qubits[q] for q in local)))
            self.meta.decompositions[name] = self.meta.decompositions.get(name, 0) + 1
            return
        self.gates.append(Gate(name, tuple(qubits), tuple(params)))


def parse_qasm_with_metadata(
    text: str, name: str = "circuit", decompose: bool = True, origin_label: str | None = None
) -> tuple[Circuit, ParseMetadata]:
    n_qubits, gates, meta = _Parser(text, decompose).parse()
    return Circuit(n_qubits, tuple(gates), name, origin_label), meta


def parse_qasm(text: str, name: str = "circuit", decompose: bool = True, origin_label: str | None = None) -> Circuit:
    return parse_qasm_with_metadata(text, name, decompose, origin_label)[0]


def load_qasm(path, decompose: bool = True, origin_label: str | None = None) -> tuple[Circuit, ParseMetadata]:
    path = Path(path)
    return parse_qasm_with_metadata(path.read_text(), path.stem, decompose, origin_label)


def to_qasm(c: Circuit, register: str = "q") -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg {register}[{c.n_qubits}];"]
    for g in c.gates:
        head = g.name
        if g.params:
            head += "(" + ",".join(repr(p) for p in g.params) + ")"
        lines.append(f"{head} " + ",".join(f"{register}[{q}]" for q in g.qubits) + ";")
    return "\n".join(lines) + "\n"
