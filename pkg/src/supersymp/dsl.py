"""Plain-text declarations for charts, functions, fields, forms, algebras,
pairings, and cochains.

One statement per ``;``.  Multiplication is ``*``, wedge and integer powers
are ``^``, partials are ``d/dx``, differentials ``dx``, Grassmann generators
``th1..thN``, the imaginary unit ``i``, and the two C-basis markers ``c0``
and ``c1``.  Fixtures written in this format double as the readable record
of every object the engine is expected to reproduce.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .charts import CFunction, Chart, SuperFunction, VectorField
from .forms import CKForm, KForm, wedge
from .grassmann import GrassmannNumber, default_generator_count
from .heisenberg import HeisenbergSpec
from .liecoh import CECochain, SuperLieAlgebra
from .scalars import GaussianRational


class DslError(Exception):
    """Syntax or semantic error with a source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


# ----------------------------------------------------------------------
# lexer
# ----------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>\d+)
  | (?P<op>[-+*/^()\[\],;=])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str  # "name" | "int" | "op" | "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line = 1
    col = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DslError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token("op" if kind == "op" else kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


# ----------------------------------------------------------------------
# expression AST
# ----------------------------------------------------------------------


@dataclass
class Num:
    value: int
    tok: Token


@dataclass
class Name:
    text: str
    tok: Token


@dataclass
class Partial:
    coord: str
    tok: Token


@dataclass
class Unary:
    op: str
    arg: object
    tok: Token


@dataclass
class Bin:
    op: str
    left: object
    right: object
    tok: Token


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise DslError(message, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            self.fail(f"expected {text!r}, found {tok.text!r}" if tok.text else f"expected {text!r}", tok)
        return self.next()

    def expect_name(self, what: str = "name") -> Token:
        tok = self.peek()
        if tok.kind != "name":
            self.fail(f"expected a {what}", tok)
        return self.next()

    # expressions ------------------------------------------------------

    def expression(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            tok = self.next()
            node = Bin(tok.text, node, self.term(), tok)
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/", "^"):
            tok = self.next()
            node = Bin(tok.text, node, self.unary(), tok)
        return node

    def unary(self):
        tok = self.peek()
        if tok.text == "-":
            self.next()
            return Unary("-", self.unary(), tok)
        if tok.text == "+":
            self.next()
            return self.unary()
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return Num(int(tok.text), tok)
        if tok.text == "(":
            self.next()
            node = self.expression()
            self.expect(")")
            return node
        if tok.kind == "name":
            if (
                tok.text == "d"
                and self.peek(1).text == "/"
                and self.peek(2).kind == "name"
                and self.peek(2).text.startswith("d")
                and len(self.peek(2).text) > 1
            ):
                self.next()
                self.next()
                coord_tok = self.next()
                return Partial(coord_tok.text[1:], tok)
            self.next()
            return Name(tok.text, tok)
        self.fail(f"unexpected token {tok.text!r}" if tok.text else "unexpected end of input", tok)

    # helpers for declaration clauses -----------------------------------

    def name_list(self) -> List[str]:
        names = [self.expect_name().text]
        while self.peek().text == ",":
            self.next()
            names.append(self.expect_name().text)
        return names

    def int_list(self) -> List[int]:
        out = []
        while True:
            neg = False
            if self.peek().text == "-":
                self.next()
                neg = True
            tok = self.peek()
            if tok.kind != "int":
                self.fail("expected an integer")
            self.next()
            out.append(-int(tok.text) if neg else int(tok.text))
            if self.peek().text != ",":
                return out
            self.next()

    def rational(self) -> Fraction:
        neg = False
        if self.peek().text == "-":
            self.next()
            neg = True
        tok = self.peek()
        if tok.kind != "int":
            self.fail("expected a number")
        self.next()
        value = Fraction(int(tok.text))
        if self.peek().text == "/":
            self.next()
            den = self.peek()
            if den.kind != "int":
                self.fail("expected a denominator")
            self.next()
            value = value / int(den.text)
        return -value if neg else value

    def matrix(self) -> List[List[Fraction]]:
        self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = []
            if self.peek().text != "]":
                row.append(self.rational())
                while self.peek().text == ",":
                    self.next()
                    row.append(self.rational())
            self.expect("]")
            rows.append(row)
            if self.peek().text == ",":
                self.next()
                continue
            break
        self.expect("]")
        return rows


# ----------------------------------------------------------------------
# values and evaluation
# ----------------------------------------------------------------------


class CBasis:
    """Marker for the c0 / c1 atoms."""

    def __init__(self, alpha: int):
        self.alpha = alpha


def _as_function(value, chart: Chart):
    if isinstance(value, GaussianRational):
        return chart.constant(value)
    if isinstance(value, SuperFunction):
        return value
    return None


class Evaluator:
    """Evaluate expression ASTs against a document and a chart context."""

    def __init__(self, document: "Document", chart: Optional[Chart]):
        self.document = document
        self.chart = chart

    def resolve(self, node: Name):
        text = node.text
        doc = self.document
        for table in (doc.functions, doc.cfunctions, doc.fields, doc.forms):
            if text in table:
                return table[text]
        if text == "i":
            return GaussianRational(0, 1)
        chart = self.chart
        if chart is not None:
            if text in chart.coords:
                return chart.var(text)
            if text.startswith("d") and text[1:] in chart.coords:
                return KForm.differential(chart, text[1:])
            m = re.fullmatch(r"th(\d+)", text)
            if m:
                k = int(m.group(1))
                if not 1 <= k <= chart.generators:
                    raise DslError(
                        f"Grassmann generator th{k} is out of range (N = {chart.generators})",
                        node.tok.line,
                        node.tok.col,
                    )
                return chart.constant(GrassmannNumber.generator(k, chart.generators))
        if text in ("c0", "c1"):
            return CBasis(int(text[1]))
        raise DslError(f"undefined identifier {text!r}", node.tok.line, node.tok.col)

    def eval(self, node):
        if isinstance(node, Num):
            return GaussianRational(node.value)
        if isinstance(node, Name):
            return self.resolve(node)
        if isinstance(node, Partial):
            if self.chart is None:
                raise DslError("no chart in scope for a partial derivative", node.tok.line, node.tok.col)
            if node.coord not in self.chart.coords:
                raise DslError(f"unknown coordinate {node.coord!r}", node.tok.line, node.tok.col)
            return self.chart.vector_field({node.coord: 1})
        if isinstance(node, Unary):
            val = self.eval(node.arg)
            return self._negate(val, node.tok)
        if isinstance(node, Bin):
            if node.op == "+":
                return self._add(self.eval(node.left), self.eval(node.right), node.tok)
            if node.op == "-":
                return self._add(
                    self.eval(node.left), self._negate(self.eval(node.right), node.tok), node.tok
                )
            if node.op == "*":
                return self._mul(self.eval(node.left), self.eval(node.right), node.tok)
            if node.op == "/":
                return self._div(self.eval(node.left), self.eval(node.right), node.tok)
            if node.op == "^":
                return self._pow(self.eval(node.left), self.eval(node.right), node.tok)
        raise AssertionError(f"unhandled node {node!r}")

    def _negate(self, val, tok):
        if isinstance(val, (GaussianRational, SuperFunction, VectorField, KForm, CKForm)):
            return -val
        if isinstance(val, CFunction):
            return -val
        raise DslError("cannot negate this expression", tok.line, tok.col)

    def _add(self, a, b, tok):
        if isinstance(a, GaussianRational) and isinstance(b, GaussianRational):
            return a + b
        if self.chart is not None:
            fa, fb = _as_function(a, self.chart), _as_function(b, self.chart)
            if fa is not None and fb is not None:
                return fa + fb
        for kind in (VectorField, KForm, CKForm, CFunction):
            if isinstance(a, kind) and isinstance(b, kind):
                try:
                    return a + b
                except Exception as exc:
                    raise DslError(str(exc), tok.line, tok.col) from exc
        if isinstance(a, CFunction) and _as_function(b, a.chart) is not None:
            raise DslError("cannot add a C-valued and a plain function; tag with c0/c1", tok.line, tok.col)
        if isinstance(b, CFunction) and self.chart is not None and _as_function(a, self.chart) is not None:
            raise DslError("cannot add a C-valued and a plain function; tag with c0/c1", tok.line, tok.col)
        raise DslError("incompatible operands for +", tok.line, tok.col)

    def _mul(self, a, b, tok):
        if isinstance(a, GaussianRational) and isinstance(b, GaussianRational):
            return a * b
        if isinstance(b, CBasis):
            chart = self.chart
            if chart is None:
                raise DslError("no chart in scope for a C-valued expression", tok.line, tok.col)
            fa = _as_function(a, chart)
            if fa is not None:
                parts = [chart.zero(), chart.zero()]
                parts[b.alpha] = fa
                return CFunction(parts[0], parts[1])
            if isinstance(a, KForm):
                zero = KForm.zero(chart, a.degree)
                return CKForm(a, zero) if b.alpha == 0 else CKForm(zero, a)
            raise DslError("only functions and forms can be tagged with c0/c1", tok.line, tok.col)
        if isinstance(a, CBasis):
            raise DslError("write the c0/c1 tag on the right of the factor", tok.line, tok.col)
        if isinstance(a, GaussianRational):
            if isinstance(b, SuperFunction):
                return b.scale(a)
            if isinstance(b, (VectorField, KForm, CKForm)):
                return b.scale(a)
            if isinstance(b, CFunction):
                return b.scale(a)
        if isinstance(b, GaussianRational):
            return self._mul(b, a, tok) if not isinstance(a, SuperFunction) else a.scale(b)
        if isinstance(a, SuperFunction):
            if isinstance(b, SuperFunction):
                return a * b
            if isinstance(b, VectorField):
                return b.left_multiply(a)
            if isinstance(b, KForm):
                return b.left_multiply(a)
            if isinstance(b, CFunction):
                raise DslError("multiply plain functions before tagging with c0/c1", tok.line, tok.col)
        if isinstance(a, KForm):
            if isinstance(b, SuperFunction):
                return a.right_multiply(b)
            if isinstance(b, KForm):
                return wedge(a, b)
        if isinstance(a, VectorField) and isinstance(b, SuperFunction):
            raise DslError("write coefficients to the left of d/dz", tok.line, tok.col)
        raise DslError("incompatible operands for *", tok.line, tok.col)

    def _div(self, a, b, tok):
        if not isinstance(b, GaussianRational):
            raise DslError("division only by scalars", tok.line, tok.col)
        if b.is_zero():
            raise DslError("division by zero", tok.line, tok.col)
        inv = b.inverse()
        if isinstance(a, GaussianRational):
            return a * inv
        return self._mul(inv, a, tok)

    def _pow(self, a, b, tok):
        if isinstance(b, GaussianRational):
            if not b.is_rational() or b.re.denominator != 1 or b.re < 0:
                raise DslError("power needs a nonnegative integer exponent", tok.line, tok.col)
            n = int(b.re)
            if isinstance(a, GaussianRational):
                out = GaussianRational(1)
                for _ in range(n):
                    out = out * a
                return out
            if isinstance(a, SuperFunction):
                out = a.chart.one()
                for _ in range(n):
                    out = out * a
                return out
            if isinstance(a, KForm):
                if n == 0:
                    raise DslError("zeroth wedge power is not a form", tok.line, tok.col)
                out = a
                for _ in range(n - 1):
                    out = wedge(out, a)
                return out
            raise DslError("cannot raise this expression to a power", tok.line, tok.col)
        if isinstance(a, KForm) and isinstance(b, KForm):
            return wedge(a, b)
        if isinstance(a, KForm) and isinstance(b, SuperFunction):
            return wedge(a, KForm.from_function(b))
        if isinstance(a, SuperFunction) and isinstance(b, KForm):
            return wedge(KForm.from_function(a), b)
        raise DslError("incompatible operands for ^", tok.line, tok.col)


# ----------------------------------------------------------------------
# documents
# ----------------------------------------------------------------------


@dataclass
class Document:
    charts: Dict[str, Chart] = field(default_factory=dict)
    functions: Dict[str, SuperFunction] = field(default_factory=dict)
    cfunctions: Dict[str, CFunction] = field(default_factory=dict)
    fields: Dict[str, VectorField] = field(default_factory=dict)
    forms: Dict[str, KForm] = field(default_factory=dict)
    algebras: Dict[str, SuperLieAlgebra] = field(default_factory=dict)
    cocycles: Dict[str, CECochain] = field(default_factory=dict)
    heisenbergs: Dict[str, HeisenbergSpec] = field(default_factory=dict)
    order: List[Tuple[str, str]] = field(default_factory=list)  # (kind, name)
    spans: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    current_chart: Optional[str] = None

    def all_names(self):
        for _, name in self.order:
            yield name

    def chart_of(self, name: Optional[str], tok: Optional[Token] = None) -> Chart:
        if name is None:
            if self.current_chart is None:
                raise DslError("no chart declared", tok.line if tok else 0, tok.col if tok else 0)
            return self.charts[self.current_chart]
        if name not in self.charts:
            raise DslError(f"unknown chart {name!r}", tok.line if tok else 0, tok.col if tok else 0)
        return self.charts[name]

    def evaluate(self, text: str, chart: Optional[Chart] = None):
        """Evaluate a standalone expression in this document's scope."""
        if chart is None and self.current_chart is not None:
            chart = self.charts[self.current_chart]
        parser = _Parser(tokenize(text))
        node = parser.expression()
        if parser.peek().kind != "eof":
            parser.fail("trailing input after expression")
        return Evaluator(self, chart).eval(node)


def _register(doc: Document, kind: str, name: str, tok: Token):
    if name in set(doc.all_names()):
        raise DslError(f"name {name!r} already declared", tok.line, tok.col)
    doc.order.append((kind, name))
    doc.spans[name] = (tok.line, tok.col)


def parse(text: str) -> Document:
    """Parse a document; errors carry precise line/column positions."""
    doc = Document()
    parser = _Parser(tokenize(text))
    while parser.peek().kind != "eof":
        _statement(parser, doc)
    return doc


def _statement(parser: _Parser, doc: Document) -> None:
    head = parser.expect_name("declaration keyword")
    name_tok = parser.expect_name()
    name = name_tok.text

    if head.text == "chart":
        even: List[str] = []
        odd: List[str] = []
        if parser.peek().text == "even":
            parser.next()
            even = parser.name_list()
        if parser.peek().text == "odd":
            parser.next()
            odd = parser.name_list()
        try:
            chart = Chart(name, tuple(even), tuple(odd), default_generator_count())
        except ValueError as exc:
            raise DslError(str(exc), head.line, head.col) from exc
        _register(doc, "chart", name, name_tok)
        doc.charts[name] = chart
        doc.current_chart = name

    elif head.text in ("fn", "cfn", "vf", "form"):
        chart_name = None
        if parser.peek().text == "on":
            parser.next()
            chart_name = parser.expect_name("chart name").text
        parser.expect("=")
        chart = doc.chart_of(chart_name, head)
        node = parser.expression()
        value = Evaluator(doc, chart).eval(node)
        if head.text == "fn":
            value = _as_function(value, chart)
            if value is None:
                raise DslError("fn expects a plain superfunction", head.line, head.col)
            _register(doc, "fn", name, name_tok)
            doc.functions[name] = value
        elif head.text == "cfn":
            if isinstance(value, (GaussianRational, SuperFunction)):
                raise DslError("cfn expects c0/c1 components", head.line, head.col)
            if not isinstance(value, CFunction):
                raise DslError("cfn expects a C-valued function", head.line, head.col)
            _register(doc, "cfn", name, name_tok)
            doc.cfunctions[name] = value
        elif head.text == "vf":
            if isinstance(value, GaussianRational) and value.is_zero():
                value = VectorField(chart, {})
            if not isinstance(value, VectorField):
                raise DslError("vf expects a vector field", head.line, head.col)
            _register(doc, "vf", name, name_tok)
            doc.fields[name] = value
        else:
            if isinstance(value, (GaussianRational, SuperFunction)):
                value = KForm.from_function(_as_function(value, chart))
            if not isinstance(value, KForm):
                raise DslError("form expects a differential form", head.line, head.col)
            _register(doc, "form", name, name_tok)
            doc.forms[name] = value

    elif head.text == "algebra":
        kw = parser.expect("parities")
        parities = parser.int_list()
        brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        if parser.peek().text == "bracket":
            parser.next()
            while True:
                parser.expect("[")
                itok = parser.peek()
                if itok.kind != "int":
                    parser.fail("expected a basis index")
                parser.next()
                parser.expect(",")
                jtok = parser.peek()
                if jtok.kind != "int":
                    parser.fail("expected a basis index")
                parser.next()
                parser.expect("]")
                parser.expect("=")
                vec = _basis_expression(parser, len(parities))
                brackets[(int(itok.text) - 1, int(jtok.text) - 1)] = vec
                if parser.peek().text == ",":
                    parser.next()
                    continue
                break
        try:
            algebra = SuperLieAlgebra(parities, brackets)
        except ValueError as exc:
            raise DslError(f"parity mismatch or invalid bracket: {exc}", head.line, head.col) from exc
        _register(doc, "algebra", name, name_tok)
        doc.algebras[name] = algebra

    elif head.text == "cocycle":
        parser.expect("on")
        alg_tok = parser.expect_name("algebra name")
        if alg_tok.text not in doc.algebras:
            raise DslError(f"unknown algebra {alg_tok.text!r}", alg_tok.line, alg_tok.col)
        algebra = doc.algebras[alg_tok.text]
        parser.expect("degree")
        deg_tok = parser.peek()
        if deg_tok.kind != "int":
            parser.fail("expected a degree")
        parser.next()
        degree = int(deg_tok.text)
        values: Dict[Tuple[int, ...], Tuple[Fraction, Fraction]] = {}
        if parser.peek().text == "values":
            parser.next()
            while True:
                parser.expect("[")
                idxs = []
                while True:
                    t = parser.peek()
                    if t.kind != "int":
                        parser.fail("expected a basis index")
                    parser.next()
                    idxs.append(int(t.text) - 1)
                    if parser.peek().text == ",":
                        parser.next()
                        continue
                    break
                parser.expect("]")
                parser.expect("=")
                values[tuple(idxs)] = _cvalue_expression(parser)
                if parser.peek().text == ",":
                    parser.next()
                    continue
                break
        try:
            cochain = CECochain(algebra, degree, values)
        except ValueError as exc:
            raise DslError(str(exc), head.line, head.col) from exc
        _register(doc, "cocycle", name, name_tok)
        doc.cocycles[name] = cochain

    elif head.text == "heisenberg":
        parser.expect("parities")
        parities = parser.int_list()
        parser.expect("omega0")
        omega0 = parser.matrix()
        parser.expect("omega1")
        omega1 = parser.matrix()
        n = len(parities)
        for label, m in (("omega0", omega0), ("omega1", omega1)):
            if len(m) != n or any(len(row) != n for row in m):
                raise DslError(f"{label} must be {n}x{n}", head.line, head.col)
        try:
            spec = HeisenbergSpec(parities, omega0, omega1)
        except ValueError as exc:
            raise DslError(str(exc), head.line, head.col) from exc
        _register(doc, "heisenberg", name, name_tok)
        doc.heisenbergs[name] = spec

    else:
        raise DslError(f"unknown declaration {head.text!r}", head.line, head.col)

    parser.expect(";")


def _basis_expression(parser: _Parser, dimension: int) -> Dict[int, Fraction]:
    """Linear combination of e1..en with rational coefficients."""
    out: Dict[int, Fraction] = {}

    def add_term(sign: Fraction):
        coeff = Fraction(1)
        tok = parser.peek()
        if tok.kind == "int":
            coeff = parser.rational()
            parser.expect("*")
            tok = parser.peek()
        if tok.kind != "name" or not re.fullmatch(r"e\d+", tok.text):
            parser.fail("expected a basis vector e<k>")
        parser.next()
        k = int(tok.text[1:]) - 1
        if not 0 <= k < dimension:
            raise DslError(f"basis index e{k+1} out of range", tok.line, tok.col)
        out[k] = out.get(k, Fraction(0)) + sign * coeff
        if out[k] == 0:
            del out[k]

    sign = Fraction(1)
    if parser.peek().text == "-":
        parser.next()
        sign = Fraction(-1)
    if parser.peek().kind == "int" and parser.peek(1).text in (",", ";"):
        tok = parser.peek()
        if tok.text == "0":
            parser.next()
            return out
        parser.fail("expected a basis combination or 0")
    add_term(sign)
    while parser.peek().text in ("+", "-"):
        op = parser.next()
        add_term(Fraction(1) if op.text == "+" else Fraction(-1))
    return out


def _cvalue_expression(parser: _Parser) -> Tuple[Fraction, Fraction]:
    """Linear combination of c0 and c1 with rational coefficients."""
    c0 = Fraction(0)
    c1 = Fraction(0)

    def add_term(sign: Fraction):
        nonlocal c0, c1
        coeff = Fraction(1)
        tok = parser.peek()
        if tok.kind == "int":
            coeff = parser.rational()
            if parser.peek().text == "*":
                parser.next()
                tok = parser.peek()
            else:
                if coeff != 0:
                    parser.fail("expected c0 or c1 after the coefficient")
                return
        if tok.text not in ("c0", "c1"):
            parser.fail("expected c0 or c1")
        parser.next()
        if tok.text == "c0":
            c0 += sign * coeff
        else:
            c1 += sign * coeff

    sign = Fraction(1)
    if parser.peek().text == "-":
        parser.next()
        sign = Fraction(-1)
    add_term(sign)
    while parser.peek().text in ("+", "-"):
        op = parser.next()
        add_term(Fraction(1) if op.text == "+" else Fraction(-1))
    return c0, c1


# ----------------------------------------------------------------------
# rendering (canonical form; parse . render = identity)
# ----------------------------------------------------------------------


def render(doc: Document) -> str:
    lines: List[str] = []
    for kind, name in doc.order:
        if kind == "chart":
            chart = doc.charts[name]
            chunks = [f"chart {name}"]
            if chart.even:
                chunks.append("even " + ",".join(chart.even))
            if chart.odd:
                chunks.append("odd " + ",".join(chart.odd))
            lines.append(" ".join(chunks) + ";")
        elif kind == "fn":
            f = doc.functions[name]
            lines.append(f"fn {name} on {f.chart.name} = {f};")
        elif kind == "cfn":
            f = doc.cfunctions[name]
            lines.append(f"cfn {name} on {f.chart.name} = ({f.f0})*c0 + ({f.f1})*c1;")
        elif kind == "vf":
            x = doc.fields[name]
            lines.append(f"vf {name} on {x.chart.name} = {x if not x.is_zero() else 0};")
        elif kind == "form":
            w = doc.forms[name]
            lines.append(f"form {name} on {w.chart.name} = {w};")
        elif kind == "algebra":
            g = doc.algebras[name]
            chunks = [f"algebra {name} parities " + ",".join(str(p) for p in g.parities)]
            entries = []
            for (i, j), vec in sorted(g.brackets.items()):
                if i > j:
                    continue
                body = " + ".join(
                    (f"{v}*e{k+1}" if v != 1 else f"e{k+1}") for k, v in sorted(vec.items())
                ).replace("+ -", "- ")
                entries.append(f"[{i+1},{j+1}] = {body}")
            if entries:
                chunks.append("bracket " + ", ".join(entries))
            lines.append(" ".join(chunks) + ";")
        elif kind == "cocycle":
            c = doc.cocycles[name]
            alg_name = next(n for n, a in doc.algebras.items() if a is c.g or a.parities == c.g.parities)
            chunks = [f"cocycle {name} on {alg_name} degree {c.degree}"]
            entries = []
            for key, (v0, v1) in sorted(c.values.items()):
                idx = ",".join(str(i + 1) for i in key)
                parts = []
                if v0:
                    parts.append(f"{v0}*c0")
                if v1:
                    parts.append(f"{v1}*c1")
                entries.append(f"[{idx}] = " + " + ".join(parts))
            if entries:
                chunks.append("values " + ", ".join(entries))
            lines.append(" ".join(chunks) + ";")
        elif kind == "heisenberg":
            spec = doc.heisenbergs[name]

            def mat(m):
                return "[" + ",".join("[" + ",".join(str(v) for v in row) + "]" for row in m) + "]"

            lines.append(
                f"heisenberg {name} parities "
                + ",".join(str(p) for p in spec.parities)
                + f" omega0 {mat(spec.omega0)} omega1 {mat(spec.omega1)};"
            )
    return "\n".join(lines) + ("\n" if lines else "")
