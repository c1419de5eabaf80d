"""Line-oriented input language.

::

    ring p=32003 vars=x,y,z order=grevlex
    poly f1 = x^2          # comments run to end of line
    poly g1 = y^2
    ideal X1 = (f1, g1)
    matrix A = [[0, x], [-x, 0]]
    vector a = [x, y]
    task pipeline X1=X1 X2=X2
    task identities size=5 trials=200 seed=42

Expressions use ``+ - * ^`` and parentheses; ``^`` binds tightest and
multiplication must be written explicitly.  Identifiers are ring variables
or earlier ``poly`` bindings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import CIUError
from ..ring import MonomialOrder, Poly, Ring, is_prime


class ParseError(CIUError):
    def __init__(self, message, line=None, col=None, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        where = f"line {line}, column {col}: " if line is not None else ""
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}{message}{exp}")


class SemanticError(CIUError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text, line, col0=1):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        kind = ("int", "id", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start + col0))
        pos = m.end()
    end_col = len(text.rstrip()) + col0
    tokens.append(("end", "", end_col))
    return tokens


class _ExprParser:
    def __init__(self, tokens, ring, env, line):
        self.toks = tokens
        self.i = 0
        self.ring = ring
        self.env = env
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok, expected):
        raise ParseError(msg, self.line, tok[2], expected)

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("id", "int") or tok[1] == "(":
                self.error("implicit multiplication is not allowed", tok, ["*", "+", "-", "^", "end of line"])
            self.error(f"unexpected {tok[1]!r}", tok, ["+", "-", "*", "^", "end of line"])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.next()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() == ("op", "*", self.peek()[2]):
            self.next()
            value = value * self.unary()
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.next()
            return -self.unary()
        if tok[0] == "op" and tok[1] == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.next()
            ex = self.next()
            if ex[0] != "int":
                self.error("exponent must be a nonnegative integer literal", ex, ["integer"])
            base = base ** int(ex[1])
        return base

    def atom(self):
        tok = self.next()
        kind, text, col = tok
        if kind == "int":
            return self.ring.const(int(text))
        if kind == "id":
            if text in self.env:
                return self.env[text]
            if text in self.ring.variables:
                return self.ring.var(text)
            raise SemanticError(f"unknown name {text!r}", self.line)
        if kind == "op" and text == "(":
            value = self.expr()
            close = self.next()
            if close[1] != ")":
                self.error("unbalanced parenthesis", close, [")"])
            return value
        expected = ["integer", "identifier", "("]
        if kind == "end":
            self.error("unexpected end of line", tok, expected)
        self.error(f"unexpected {text!r}", tok, expected)


def parse_expression(text: str, ring: Ring, env=None, line=None, col0=1) -> Poly:
    toks = _tokenize(text, line, col0)
    return _ExprParser(toks, ring, env or {}, line).parse()


@dataclass
class Task:
    kind: str
    args: dict
    line: int


@dataclass
class InputDocument:
    ring: Ring | None = None
    polys: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)
    # statement log for canonical re-rendering
    statements: list = field(default_factory=list)


TASK_ARGS = {
    "pipeline": ({"X1": "ideal", "X2": "ideal"}, {"seed": "int"}),
    "inverse": (
        {"A": "matrix", "alpha": "vector", "beta": "vector", "gamma": "vector"},
        {"seed": "int"},
    ),
    "identities": ({"size": "int", "trials": "int", "seed": "int"}, {}),
    "hilbert": ({"I": "ideal"}, {"dim": "int"}),
    "propgen": ({"X1": "ideal", "X2": "ideal"}, {}),
}

_KEYWORDS = ("ring", "poly", "ideal", "matrix", "vector", "task")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _split_binding(body, line, col0, keyword):
    m = re.match(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*", body)
    if not m:
        raise ParseError(f"malformed {keyword} binding", line, col0, ["name = ..."])
    return m.group(1), body[m.end():], col0 + m.end()


def _split_top(text, line, col0):
    """Split on commas not nested inside brackets or parentheses."""
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced bracket", line, col0 + i)
        elif ch == "," and depth == 0:
            parts.append((text[start:i], col0 + start))
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced bracket", line, col0 + len(text), ["]", ")"])
    parts.append((text[start:], col0 + start))
    return parts


def _strip_brackets(text, line, col0, open_, close):
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not s.startswith(open_):
        raise ParseError(f"expected {open_!r}", line, col0 + lead, [open_])
    if not s.endswith(close):
        raise ParseError(f"expected {close!r}", line, col0 + lead + len(s), [close])
    return s[1:-1], col0 + lead + 1


def parse(text: str) -> InputDocument:
    doc = InputDocument()
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"\s*([A-Za-z]+)", line)
        if not m or m.group(1) not in _KEYWORDS:
            col = (m.start(1) + 1) if m else len(line) - len(line.lstrip()) + 1
            raise ParseError("unknown statement", lineno, col, _KEYWORDS)
        kw = m.group(1)
        body = line[m.end():]
        col0 = m.end() + 1
        if kw == "ring":
            doc.ring = _parse_ring(body, lineno, col0)
            doc.statements.append(("ring", None))
            continue
        if kw == "task":
            doc.tasks.append(_parse_task(body, lineno, col0, doc))
            doc.statements.append(("task", len(doc.tasks) - 1))
            continue
        if doc.ring is None:
            raise SemanticError("a ring declaration must come first", lineno)
        name, rest, rcol = _split_binding(body, lineno, col0, kw)
        if name in names or name in doc.ring.variables:
            raise SemanticError(f"name {name!r} is already defined", lineno)
        env = doc.polys
        if kw == "poly":
            doc.polys[name] = parse_expression(rest, doc.ring, env, lineno, rcol)
        elif kw == "ideal":
            inner, icol = _strip_brackets(rest, lineno, rcol, "(", ")")
            members = []
            for part, pcol in _split_top(inner, lineno, icol):
                ref = part.strip()
                if not ref:
                    raise ParseError("empty ideal member", lineno, pcol, ["poly name"])
                if ref not in doc.polys:
                    raise SemanticError(f"unknown poly {ref!r}", lineno)
                members.append(ref)
            doc.ideals[name] = members
        elif kw == "vector":
            inner, icol = _strip_brackets(rest, lineno, rcol, "[", "]")
            doc.vectors[name] = [
                parse_expression(part, doc.ring, env, lineno, pcol) for part, pcol in _split_top(inner, lineno, icol)
            ]
        elif kw == "matrix":
            inner, icol = _strip_brackets(rest, lineno, rcol, "[", "]")
            rows = []
            for part, pcol in _split_top(inner, lineno, icol):
                rinner, rc = _strip_brackets(part, lineno, pcol, "[", "]")
                rows.append([parse_expression(e, doc.ring, env, lineno, ec) for e, ec in _split_top(rinner, lineno, rc)])
            if len({len(r) for r in rows}) > 1:
                raise SemanticError("matrix rows have different lengths", lineno)
            doc.matrices[name] = rows
        names.add(name)
        doc.statements.append((kw, name))
    if doc.ring is None:
        raise SemanticError("missing ring declaration")
    return doc


def _key_values(body, line, col0):
    out = {}
    for m in re.finditer(r"\S+", body):
        item = m.group(0)
        if "=" not in item:
            raise ParseError(f"expected key=value, got {item!r}", line, col0 + m.start(), ["key=value"])
        k, v = item.split("=", 1)
        if not v:
            raise ParseError(f"missing value for {k!r}", line, col0 + m.end(), ["value"])
        out[k] = (v, col0 + m.start())
    return out


def _parse_ring(body, line, col0):
    kv = _key_values(body, line, col0)
    for key in ("p", "vars"):
        if key not in kv:
            raise ParseError(f"ring declaration lacks {key}=", line, col0 + len(body), ["p=", "vars=", "order="])
    extra = set(kv) - {"p", "vars", "order"}
    if extra:
        k = sorted(extra)[0]
        raise ParseError(f"unknown ring option {k!r}", line, kv[k][1], ["p", "vars", "order"])
    pv, pcol = kv["p"]
    if not pv.isdigit():
        raise ParseError("prime must be an integer", line, pcol, ["integer"])
    p = int(pv)
    if p % 2 == 0:
        raise SemanticError("even characteristic is not supported", line)
    if not is_prime(p):
        raise SemanticError(f"{p} is not prime", line)
    names = kv["vars"][0].split(",")
    for nm in names:
        if not _NAME.match(nm):
            raise ParseError(f"bad variable name {nm!r}", line, kv["vars"][1], ["identifier"])
    order = kv.get("order", ("grevlex", None))[0]
    if order not in ("lex", "grevlex"):
        raise ParseError(f"unknown order {order!r}", line, kv["order"][1], ["lex", "grevlex"])
    try:
        return Ring(names, p, MonomialOrder(order))
    except CIUError as exc:
        raise SemanticError(str(exc), line) from None


def _parse_task(body, line, col0, doc):
    m = re.match(r"\s*([A-Za-z]+)", body)
    if not m:
        raise ParseError("missing task kind", line, col0, sorted(TASK_ARGS))
    kind = m.group(1)
    if kind not in TASK_ARGS:
        raise ParseError(f"unknown task {kind!r}", line, col0 + m.start(1), sorted(TASK_ARGS))
    required, optional = TASK_ARGS[kind]
    kv = _key_values(body[m.end():], line, col0 + m.end())
    args = {}
    for key, (value, col) in kv.items():
        typ = required.get(key) or optional.get(key)
        if typ is None:
            raise ParseError(f"unknown argument {key!r} for task {kind}", line, col, sorted(required) + sorted(optional))
        if typ == "int":
            if not value.lstrip("-").isdigit():
                raise ParseError(f"{key} must be an integer", line, col, ["integer"])
            args[key] = int(value)
        else:
            table = {"ideal": doc.ideals, "matrix": doc.matrices, "vector": doc.vectors}[typ]
            if value not in table:
                raise SemanticError(f"unknown {typ} {value!r}", line)
            args[key] = value
    missing = [k for k in required if k not in args]
    if missing:
        raise ParseError(f"task {kind} lacks {missing[0]}=", line, col0 + len(body), [f"{k}=" for k in missing])
    return Task(kind, args, line)


def format_document(doc: InputDocument) -> str:
    """Canonical text of a document: one statement per line, comments dropped."""
    from ..ring import format_poly

    ring = doc.ring
    out = []
    for kw, key in doc.statements:
        if kw == "ring":
            out.append(f"ring p={ring.p} vars={','.join(ring.variables)} order={ring.order.kind}")
        elif kw == "poly":
            out.append(f"poly {key} = {format_poly(doc.polys[key])}")
        elif kw == "ideal":
            out.append(f"ideal {key} = ({', '.join(doc.ideals[key])})")
        elif kw == "vector":
            out.append(f"vector {key} = [{', '.join(format_poly(e) for e in doc.vectors[key])}]")
        elif kw == "matrix":
            rows = ", ".join("[" + ", ".join(format_poly(e) for e in row) + "]" for row in doc.matrices[key])
            out.append(f"matrix {key} = [{rows}]")
        elif kw == "task":
            task = doc.tasks[key]
            required, optional = TASK_ARGS[task.kind]
            args = [f"{k}={task.args[k]}" for k in list(required) + list(optional) if k in task.args]
            out.append(" ".join(["task", task.kind] + args))
    return "\n".join(out) + "\n"
