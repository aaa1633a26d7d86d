"""Text format for interferometer chains, with parser and evaluator.

Grammar:

    circuit  := stage { ";" stage } [ ";" ]
    stage    := name "(" [ arg { "," arg } ] ")"
    name     := "rotate" | "split" | "phase" | "atten"
              | "squeeze" | "decohere"
    arg      := ident "=" number [ "deg" ]

"#" starts a comment running to end of line; whitespace is
insignificant. Numbers are plain decimal floats, "deg" on an angle
converts to radians at parse time. Stage order in the text is the
order the beam meets the elements.

Parsing normalizes every stage to a fixed set of radian-valued
parameters (split's ratio becomes the equivalent mixer angle), so
unparse emits a canonical text and parse(unparse(ast)) == ast. All
rejections carry a 1-based line:column location; no input text can
crash the parser. The format is versioned as "circuit-v1".
"""

import math
import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .states import (
    CoherencyMatrix,
    JonesVector,
    PhysicsError,
    StokesVector,
    CLASSIFY_TOL,
    coherency_from_jones,
    coherency_from_stokes,
    conjugate,
    purity_report,
    stokes_from_coherency,
)
from .elements import attenuator, phase_shifter, rotator, split_angle, squeezer
from .decoherence import decohere_channel
from .littlegroup import classify

__all__ = [
    "CIRCUIT_FORMAT",
    "CircuitError",
    "CircuitSyntaxError",
    "CircuitSemanticError",
    "Stage",
    "CircuitAst",
    "StageRecord",
    "SimulationReport",
    "parse",
    "unparse",
    "evaluate",
]

CIRCUIT_FORMAT = "circuit-v1"


class CircuitError(ValueError):
    """A located rejection of circuit text or stage parameters."""

    def __init__(self, message, line, col):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


class CircuitSyntaxError(CircuitError):
    """The text does not match the grammar."""


class CircuitSemanticError(CircuitError):
    """Grammatical text with a bad parameter or stage failure."""


@dataclass(frozen=True)
class Stage:
    """One element of a circuit, with canonical radian parameters.

    Locations take no part in equality, so structurally identical
    circuits compare equal regardless of layout.
    """

    name: str
    params: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def arg(self, name):
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)


@dataclass(frozen=True)
class CircuitAst:
    stages: tuple

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        for stage in self.stages:
            if not isinstance(stage, Stage):
                raise TypeError("CircuitAst stages must be Stage instances")


class _Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


class _Arg(NamedTuple):
    name: str
    value: float
    line: int
    col: int
    deg: bool


_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUM_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")

# Canonical argument layout per stage. split also accepts ratio in the
# source text; it is folded into theta during validation.
_STAGE_ARGS = {
    "rotate": ("theta",),
    "split": ("theta",),
    "phase": ("phi",),
    "atten": ("eta1", "eta2"),
    "squeeze": ("eta",),
    "decohere": ("lambda",),
}
_ANGLE_ARGS = {"theta", "phi"}


def _tokenize(text):
    tokens = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r\f\v":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
                col += 1
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(_Token("ident", m.group(), line, col))
            col += m.end() - i
            i = m.end()
            continue
        m = _NUM_RE.match(text, i)
        if m:
            tokens.append(_Token("number", m.group(), line, col))
            col += m.end() - i
            i = m.end()
            continue
        if ch in ";(),=":
            tokens.append(_Token("sym", ch, line, col))
            i += 1
            col += 1
            continue
        raise CircuitSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, text, what):
        tok = self.advance()
        if tok.kind != "sym" or tok.text != text:
            raise CircuitSyntaxError(f"expected {what}", tok.line, tok.col)
        return tok

    def circuit(self):
        stages = [self.stage()]
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text == ";":
                self.advance()
                if self.peek().kind == "end":
                    break
                stages.append(self.stage())
            elif tok.kind == "end":
                break
            else:
                raise CircuitSyntaxError("expected ';' or end of input", tok.line, tok.col)
        return CircuitAst(tuple(stages))

    def stage(self):
        tok = self.advance()
        if tok.kind != "ident":
            raise CircuitSyntaxError("expected stage name", tok.line, tok.col)
        if tok.text not in _STAGE_ARGS:
            raise CircuitSyntaxError(f"unknown stage name '{tok.text}'", tok.line, tok.col)
        self.expect_sym("(", "'('")
        args = []
        nxt = self.peek()
        if nxt.kind == "sym" and nxt.text == ")":
            self.advance()
        else:
            while True:
                args.append(self.arg())
                sep = self.advance()
                if sep.kind == "sym" and sep.text == ",":
                    continue
                if sep.kind == "sym" and sep.text == ")":
                    break
                raise CircuitSyntaxError("expected ',' or ')'", sep.line, sep.col)
        params = _validate_stage(tok.text, args, tok.line, tok.col)
        return Stage(tok.text, params, tok.line, tok.col)

    def arg(self):
        name = self.advance()
        if name.kind != "ident":
            raise CircuitSyntaxError("expected argument name", name.line, name.col)
        eq = self.advance()
        if eq.kind != "sym" or eq.text != "=":
            raise CircuitSyntaxError("expected '='", eq.line, eq.col)
        num = self.advance()
        if num.kind != "number":
            raise CircuitSyntaxError("expected a number", num.line, num.col)
        deg = False
        nxt = self.peek()
        if nxt.kind == "ident":
            if nxt.text != "deg":
                raise CircuitSyntaxError("expected 'deg', ',' or ')'", nxt.line, nxt.col)
            self.advance()
            deg = True
        value = float(num.text)
        if not math.isfinite(value):
            raise CircuitSemanticError("number out of range", num.line, num.col)
        return _Arg(name.text, value, name.line, name.col, deg)


def _validate_stage(name, args, line, col):
    seen = {}
    for a in args:
        if a.name in seen:
            raise CircuitSemanticError(f"duplicate argument '{a.name}'", a.line, a.col)
        seen[a.name] = a
    allowed = set(_STAGE_ARGS[name])
    if name == "split":
        allowed.add("ratio")
    for a in args:
        if a.name not in allowed:
            raise CircuitSemanticError(f"unknown argument '{a.name}' for {name}", a.line, a.col)
        if a.deg and a.name not in _ANGLE_ARGS:
            raise CircuitSemanticError(f"'deg' does not apply to {a.name}", a.line, a.col)

    def value_of(a):
        return math.radians(a.value) if a.deg else a.value

    if name == "split":
        if "theta" in seen and "ratio" in seen:
            raise CircuitSemanticError("split takes theta or ratio, not both", line, col)
        if "theta" in seen:
            return (("theta", value_of(seen["theta"])),)
        if "ratio" in seen:
            a = seen["ratio"]
            if not 0.0 <= a.value <= 1.0:
                raise CircuitSemanticError("ratio must lie in [0, 1]", a.line, a.col)
            return (("theta", split_angle(a.value)),)
        raise CircuitSemanticError("split requires theta or ratio", line, col)

    params = []
    for key in _STAGE_ARGS[name]:
        if key not in seen:
            raise CircuitSemanticError(f"{name} requires {key}", line, col)
        a = seen[key]
        if name == "decohere" and a.value < 0.0:
            raise CircuitSemanticError("lambda must be nonnegative", a.line, a.col)
        if name == "atten" and a.value < 0.0:
            raise CircuitSemanticError(f"{key} must be nonnegative", a.line, a.col)
        params.append((key, value_of(a)))
    return tuple(params)


def parse(text) -> CircuitAst:
    """Parse circuit text; raise a located CircuitError on rejection."""
    if not isinstance(text, str):
        raise TypeError("circuit text must be str")
    return _Parser(_tokenize(text)).circuit()


def unparse(ast: CircuitAst) -> str:
    """Canonical text of an AST; parse(unparse(ast)) == ast."""
    parts = []
    for stage in ast.stages:
        inner = ", ".join(f"{key}={float(value)!r}" for key, value in stage.params)
        parts.append(f"{stage.name}({inner})")
    return "; ".join(parts)


class StageRecord(NamedTuple):
    stage: str
    params: tuple
    stokes_before: StokesVector
    stokes_after: StokesVector
    coherency_after: CoherencyMatrix
    purity_after: tuple
    classification_after: object


@dataclass(frozen=True)
class SimulationReport:
    """Stage-by-stage history of a circuit evaluation.

    final_jones is populated only when the input carried amplitudes
    and no decoherence stage ran; a mixed state has no amplitude
    representation, so the track is dropped at the first decohere.
    """

    circuit_format: str
    input_stokes: StokesVector
    input_jones: JonesVector | None
    stages: tuple
    final_stokes: StokesVector
    final_coherency: CoherencyMatrix
    final_jones: JonesVector | None
    final_purity: tuple
    final_classification: object


def _stage_action(stage):
    p = dict(stage.params)
    if stage.name in ("rotate", "split"):
        return 1.0, rotator(p["theta"])
    if stage.name == "phase":
        return 1.0, phase_shifter(p["phi"])
    if stage.name == "squeeze":
        return 1.0, squeezer(p["eta"])
    if stage.name == "atten":
        return attenuator(p["eta1"], p["eta2"])
    raise PhysicsError(f"unknown stage '{stage.name}'")


def evaluate(ast: CircuitAst, inp, tol=CLASSIFY_TOL) -> SimulationReport:
    """Push a state through the circuit, recording every stage.

    Coherent stages conjugate the coherency matrix (scaled by the
    attenuator's overall factor where applicable) and transform the
    amplitude track in step with it; decohere applies the physical
    channel and ends the amplitude track. Stage failures re-raise as
    located CircuitSemanticError.
    """
    if isinstance(inp, JonesVector):
        jones = inp
        coh = coherency_from_jones(inp)
    elif isinstance(inp, StokesVector):
        jones = None
        coh = coherency_from_stokes(inp, tol)
    else:
        raise TypeError("input must be a JonesVector or StokesVector")
    stokes = stokes_from_coherency(coh)
    if stokes.s0 <= 0.0:
        raise PhysicsError("evaluation requires positive input intensity")
    input_jones = jones
    input_stokes = stokes
    records = []
    for stage in ast.stages:
        before = stokes
        try:
            if stage.name == "decohere":
                stokes = decohere_channel(stokes, stage.arg("lambda"))
                coh = coherency_from_stokes(stokes, tol)
                jones = None
            else:
                scale, g = _stage_action(stage)
                coh = conjugate(coh, g)
                if scale != 1.0:
                    coh = CoherencyMatrix(
                        scale**2 * coh.s11, scale**2 * coh.s22, scale**2 * coh.s12
                    )
                if jones is not None:
                    amps = scale * (np.conj(g.matrix) @ jones.as_array())
                    jones = JonesVector(amps[0], amps[1])
                stokes = stokes_from_coherency(coh)
            record = StageRecord(
                stage.name,
                stage.params,
                before,
                stokes,
                coh,
                purity_report(coh),
                classify(stokes, tol),
            )
        except (PhysicsError, OverflowError) as err:
            raise CircuitSemanticError(
                f"stage {stage.name}: {err}", stage.line, stage.col
            ) from err
        records.append(record)
    return SimulationReport(
        circuit_format=CIRCUIT_FORMAT,
        input_stokes=input_stokes,
        input_jones=input_jones,
        stages=tuple(records),
        final_stokes=stokes,
        final_coherency=coh,
        final_jones=jones,
        final_purity=purity_report(coh),
        final_classification=classify(stokes, tol),
    )
