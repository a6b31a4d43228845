"""Arithmetic circuits: a small DSL, a programmatic builder, and the
flattening of both into rank-1 constraint systems.

Circuits are lists of statements over named signals.  Additions and
constant multiplications are free: they fold into linear combinations over
wires, so only genuine products (and assertions) become constraint rows.
Wire 0 always carries the constant 1, which is where constant terms live.

Wire ordering: input signals get their wire at declaration, assigned
signals (internal and output) get theirs at the statement that assigns
them.  Values therefore appear in the witness in the order they become
computable.

Linear assignments to internal signals do not allocate a wire at all; the
name becomes an alias for its linear combination.  Linear assignments to
*output* signals do allocate a wire plus a multiply-by-one row, because an
output must be a wire for later per-statement binding (see ``bind``).

The DSL surface::

    signal in x;          # private input
    signal pub y;         # public input
    signal out z;         # output
    signal t;             # internal (optional; assignment auto-declares)
    z <- (x + 2) * y;     # assignment: at most one product per statement
    assert x * y = z + 1; # assertion
    h <- mimc2(x, y, 0);  # gadget instantiation (registered templates)
    (q, r) <- divrem(x, d, 16);   # multi-output gadget

``#`` starts a comment.  Integer literals are decimal or 0x-hex.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Optional

from .errors import (
    AssertionFailed,
    CircuitError,
    CircuitSyntaxError,
    CyclicDependency,
    DimensionMismatch,
    DoubleAssignment,
    MissingInput,
    ModulusMismatch,
    UndeclaredSignal,
)
from .fields import FieldElement, PrimeField

ONE_WIRE = 0  # reserved index of the constant-one wire

VIS_CONSTANT = "constant"
VIS_PUBLIC = "public-input"
VIS_PRIVATE = "private-input"
VIS_INTERNAL = "internal"
VIS_OUTPUT = "output"


class LinComb:
    """Immutable linear combination of wires; constants ride on wire 0."""

    __slots__ = ("field", "terms")

    def __init__(self, field: PrimeField, terms: dict[int, int]):
        self.field = field
        self.terms = {i: c for i, c in terms.items() if c % field.p != 0}
        for i in list(self.terms):
            self.terms[i] %= field.p

    @classmethod
    def constant(cls, field: PrimeField, v) -> "LinComb":
        return cls(field, {ONE_WIRE: int(field(v))})

    @classmethod
    def wire(cls, field: PrimeField, wire_id: int) -> "LinComb":
        return cls(field, {wire_id: 1})

    def is_constant(self) -> bool:
        return all(i == ONE_WIRE for i in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(ONE_WIRE, 0)

    def evaluate(self, values: list[int]) -> int:
        p = self.field.p
        acc = 0
        for i, c in self.terms.items():
            acc += c * values[i]
        return acc % p

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = LinComb.constant(self.field, other)
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out.get(i, 0) + c
        return LinComb(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return LinComb(self.field, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = LinComb.constant(self.field, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        if isinstance(scalar, LinComb):
            if scalar.is_constant():
                scalar = scalar.constant_value()
            elif self.is_constant():
                return scalar * self.constant_value()
            else:
                raise CircuitError(
                    "linear combinations cannot be multiplied directly; "
                    "use CircuitBuilder.mul to allocate a product wire"
                )
        s = int(self.field(scalar))
        return LinComb(self.field, {i: c * s for i, c in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return f"LinComb({self.terms})"


class Product:
    """One product of two linear combinations plus a linear remainder."""

    __slots__ = ("a", "b", "rest")

    def __init__(self, a: LinComb, b: LinComb, rest: Optional[LinComb] = None):
        self.a = a
        self.b = b
        self.rest = rest if rest is not None else LinComb(a.field, {})


# --- statements ----------------------------------------------------------


class MulAssign:
    """lhs := a(s) * b(s) + rest(s); one constraint row."""

    __slots__ = ("lhs", "a", "b", "rest", "pos")

    def __init__(self, lhs, a, b, rest, pos=None):
        self.lhs, self.a, self.b, self.rest, self.pos = lhs, a, b, rest, pos


class LinAssign:
    """lhs := lc(s) for an output wire; one multiply-by-one row."""

    __slots__ = ("lhs", "lc", "pos")

    def __init__(self, lhs, lc, pos=None):
        self.lhs, self.lc, self.pos = lhs, lc, pos


class HintAssign:
    """lhs computed out-of-band during witness evaluation; no row.

    The surrounding gadget must pin the value down with constraints.
    """

    __slots__ = ("lhs", "fn", "args", "tag", "pos")

    def __init__(self, lhs, fn, args, tag="", pos=None):
        self.lhs, self.fn, self.args, self.tag, self.pos = lhs, fn, tuple(args), tag, pos


class AssertEq:
    """a(s) * b(s) = c(s); one constraint row, checked during evaluation."""

    __slots__ = ("a", "b", "c", "pos")

    def __init__(self, a, b, c, pos=None):
        self.a, self.b, self.c, self.pos = a, b, c, pos


class CircuitAst:
    """A frozen circuit: wire table plus normalized statements."""

    def __init__(self, field, wires, statements, aliases=None, source=None):
        self.field = field
        self.wires = tuple(wires)          # (name, visibility), index = wire id
        self.statements = tuple(statements)
        self.aliases = dict(aliases or {})
        self.source = source
        self._ids = {name: i for i, (name, _) in enumerate(self.wires)}

    @property
    def signals(self):
        """Declared signals in wire order (excludes the constant wire)."""
        return self.wires[1:]

    @property
    def n_wires(self) -> int:
        return len(self.wires)

    def wire_id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise UndeclaredSignal(f"unknown signal {name!r}") from None

    def input_names(self, private_only=False):
        return [
            name
            for name, vis in self.wires
            if vis == VIS_PRIVATE or (not private_only and vis == VIS_PUBLIC)
        ]

    def output_names(self):
        return [name for name, vis in self.wires if vis == VIS_OUTPUT]

    def public_names(self):
        """Signals a verifier-side binding may fix: public inputs and outputs."""
        return [name for name, vis in self.wires if vis in (VIS_PUBLIC, VIS_OUTPUT)]


# --- builder ---------------------------------------------------------------


class CircuitBuilder:
    """Programmatic circuit construction; also the parser's backend.

    Namespacing: ``scope`` pushes a prefix so gadget-internal signal names
    never collide across instances.
    """

    def __init__(self, field: PrimeField):
        self.field = field
        self._wires: list[tuple[str, str]] = [("~one", VIS_CONSTANT)]
        self._stmts: list = []
        self._ids: dict[str, int] = {"~one": ONE_WIRE}
        self._aliases: dict[str, LinComb] = {}
        self._pending_outputs: dict[str, None] = {}
        self._prefix: list[str] = []
        self._auto = 0

    # -- names ---------------------------------------------------------

    def _qualify(self, name: str) -> str:
        return "".join(f"{p}." for p in self._prefix) + name

    def fresh(self, stem: str = "t") -> str:
        self._auto += 1
        return self._qualify(f"{stem}${self._auto}")

    def scope(self, prefix: str):
        builder = self

        class _Scope:
            def __enter__(self_inner):
                builder._prefix.append(prefix)
                return builder

            def __exit__(self_inner, *exc):
                builder._prefix.pop()
                return False

        return _Scope()

    def _new_wire(self, name: str, vis: str) -> int:
        if name in self._ids or name in self._aliases:
            raise DoubleAssignment(f"signal {name!r} already defined")
        self._wires.append((name, vis))
        wid = len(self._wires) - 1
        self._ids[name] = wid
        return wid

    # -- declarations ----------------------------------------------------

    def private_input(self, name: str) -> LinComb:
        name = self._qualify(name)
        return LinComb.wire(self.field, self._new_wire(name, VIS_PRIVATE))

    def public_input(self, name: str) -> LinComb:
        name = self._qualify(name)
        return LinComb.wire(self.field, self._new_wire(name, VIS_PUBLIC))

    def declare_output(self, name: str):
        name = self._qualify(name)
        if name in self._ids or name in self._aliases or name in self._pending_outputs:
            raise DoubleAssignment(f"signal {name!r} already defined")
        self._pending_outputs[name] = None

    def constant(self, v) -> LinComb:
        return LinComb.constant(self.field, v)

    def one(self) -> LinComb:
        return LinComb.constant(self.field, 1)

    # -- statements ------------------------------------------------------

    def _assign_target(self, name: str, is_output: bool) -> int:
        """Allocate the wire for an assignment target."""
        if name in self._pending_outputs:
            del self._pending_outputs[name]
            is_output = True
        elif name in self._ids or name in self._aliases:
            raise DoubleAssignment(f"signal {name!r} assigned twice")
        return self._new_wire(name, VIS_OUTPUT if is_output else VIS_INTERNAL)

    def mul(self, a: LinComb, b: LinComb, name: Optional[str] = None, pos=None) -> LinComb:
        """Allocate an internal wire carrying a(s)*b(s)."""
        if a.is_constant():
            return b * a.constant_value()
        if b.is_constant():
            return a * b.constant_value()
        name = self._qualify(name) if name else self.fresh("mul")
        wid = self._assign_target(name, is_output=False)
        self._stmts.append(MulAssign(wid, a, b, LinComb(self.field, {}), pos))
        return LinComb.wire(self.field, wid)

    def assign(self, name: str, expr, is_output=False, pos=None) -> LinComb:
        """Bind ``name`` to a LinComb or Product expression."""
        name = self._qualify(name)
        if isinstance(expr, Product):
            wid = self._assign_target(name, is_output)
            self._stmts.append(MulAssign(wid, expr.a, expr.b, expr.rest, pos))
            return LinComb.wire(self.field, wid)
        expr = expr if isinstance(expr, LinComb) else self.constant(expr)
        if name in self._pending_outputs or is_output:
            wid = self._assign_target(name, is_output=True)
            self._stmts.append(LinAssign(wid, expr, pos))
            return LinComb.wire(self.field, wid)
        if name in self._ids or name in self._aliases:
            raise DoubleAssignment(f"signal {name!r} assigned twice")
        self._aliases[name] = expr
        return expr

    def output(self, name: str, expr, pos=None) -> LinComb:
        return self.assign(name, expr, is_output=True, pos=pos)

    def hint(self, fn: Callable, args: Iterable[LinComb], name=None, tag="", pos=None) -> LinComb:
        """Free wire whose value is fn(field, *arg_values) at witness time."""
        name = self._qualify(name) if name else self.fresh("hint")
        wid = self._assign_target(name, is_output=False)
        self._stmts.append(HintAssign(wid, fn, args, tag, pos))
        return LinComb.wire(self.field, wid)

    def assert_eq(self, left, right, pos=None):
        left_q = isinstance(left, Product)
        right_q = isinstance(right, Product)
        if left_q and right_q:
            raise CircuitError("at most one product per assertion")
        if right_q:
            left, right = right, left
            left_q = True
        if left_q:
            right = right if isinstance(right, LinComb) else self.constant(right)
            self._stmts.append(AssertEq(left.a, left.b, right - left.rest, pos))
        else:
            left = left if isinstance(left, LinComb) else self.constant(left)
            right = right if isinstance(right, LinComb) else self.constant(right)
            self._stmts.append(AssertEq(left, self.one(), right, pos))

    def assert_product(self, a: LinComb, b: LinComb, c: LinComb, pos=None):
        self._stmts.append(AssertEq(a, b, c, pos))

    # -- lookup ------------------------------------------------------------

    def ref(self, name: str) -> LinComb:
        """Resolve a name (wire or alias) to its linear combination."""
        name = self._qualify(name)
        if name in self._aliases:
            return self._aliases[name]
        if name in self._ids:
            return LinComb.wire(self.field, self._ids[name])
        raise UndeclaredSignal(f"unknown signal {name!r}")

    def build(self, source=None) -> CircuitAst:
        if self._pending_outputs:
            missing = ", ".join(self._pending_outputs)
            raise CircuitError(f"declared outputs never assigned: {missing}")
        return CircuitAst(self.field, self._wires, self._stmts, self._aliases, source)


# --- DSL parser -------------------------------------------------------------


_KEYWORDS = {"signal", "in", "pub", "out", "assert"}


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "kw" if word in _KEYWORDS else "ident"
            tokens.append(_Token(kind, word, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            if text[i : i + 2] in ("0x", "0X"):
                j = i + 2
                while j < n and text[j] in "0123456789abcdefABCDEF":
                    j += 1
            else:
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(_Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if text[i : i + 2] == "<-":
            tokens.append(_Token("arrow", "<-", line, start_col))
            i += 2
            col += 2
            continue
        if ch in ";,()=+-*":
            tokens.append(_Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        raise CircuitSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, field: PrimeField, gadgets):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.field = field
        self.gadgets = gadgets or {}
        self.builder = CircuitBuilder(field)
        self.assigned: set[str] = set()   # names with values available so far
        self.declared: set[str] = set()   # all declared names

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what=None) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise CircuitSyntaxError(
                f"expected {what or kind}, found {tok.text!r}", tok.line, tok.col
            )
        return tok

    def parse(self, source=None) -> CircuitAst:
        while self.peek().kind != "eof":
            self.statement()
        return self.builder.build(source)

    def statement(self):
        tok = self.peek()
        if tok.kind == "kw" and tok.text == "signal":
            self.declaration()
        elif tok.kind == "kw" and tok.text == "assert":
            self.assertion()
        elif tok.kind in ("ident", "("):
            self.assignment()
        else:
            raise CircuitSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.col)

    def declaration(self):
        self.next()  # 'signal'
        tok = self.peek()
        vis = VIS_INTERNAL
        if tok.kind == "kw" and tok.text in ("in", "pub", "out"):
            vis = {"in": VIS_PRIVATE, "pub": VIS_PUBLIC, "out": VIS_OUTPUT}[tok.text]
            self.next()
        name_tok = self.expect("ident", "signal name")
        name = name_tok.text
        if name in self.declared:
            raise DoubleAssignment(f"signal {name!r} declared twice")
        self.declared.add(name)
        if vis == VIS_PRIVATE:
            self.builder.private_input(name)
            self.assigned.add(name)
        elif vis == VIS_PUBLIC:
            self.builder.public_input(name)
            self.assigned.add(name)
        elif vis == VIS_OUTPUT:
            self.builder.declare_output(name)
        # internal: value arrives at its assignment
        self.expect(";")

    def assertion(self):
        tok = self.next()  # 'assert'
        left = self.expr()
        self.expect("=", "'='")
        right = self.expr()
        self.expect(";")
        self.builder.assert_eq(left, right, pos=(tok.line, tok.col))

    def assignment(self):
        targets = []
        tok = self.peek()
        if tok.kind == "(":
            self.next()
            targets.append(self.expect("ident").text)
            while self.peek().kind == ",":
                self.next()
                targets.append(self.expect("ident").text)
            self.expect(")")
        else:
            targets.append(self.expect("ident").text)
        arrow = self.expect("arrow", "'<-'")
        # gadget call or expression
        if (
            self.peek().kind == "ident"
            and self.tokens[self.pos + 1].kind == "("
            and self.peek().text in self.gadgets
        ):
            outs = self.gadget_call(targets)
        else:
            if len(targets) != 1:
                raise CircuitSyntaxError(
                    "tuple targets need a gadget call", arrow.line, arrow.col
                )
            outs = [self.expr(assign_target=targets[0])]
        for name, value in zip(targets, outs):
            if name in self.assigned:
                raise DoubleAssignment(f"signal {name!r} assigned twice")
            self.builder.assign(name, value, pos=(arrow.line, arrow.col))
            self.declared.add(name)
            self.assigned.add(name)
        self.expect(";")

    def gadget_call(self, targets):
        name_tok = self.next()
        template = self.gadgets[name_tok.text]
        self.expect("(")
        args = []
        if self.peek().kind != ")":
            args.append(self.expr())
            while self.peek().kind == ",":
                self.next()
                args.append(self.expr())
        self.expect(")")
        try:
            outs = template.instantiate(self.builder, args)
        except CircuitError:
            raise
        except (TypeError, ValueError) as exc:
            raise CircuitSyntaxError(
                f"bad arguments for gadget {name_tok.text!r}: {exc}",
                name_tok.line,
                name_tok.col,
            ) from exc
        if len(outs) != len(targets):
            raise CircuitSyntaxError(
                f"gadget {name_tok.text!r} yields {len(outs)} outputs, "
                f"{len(targets)} targets given",
                name_tok.line,
                name_tok.col,
            )
        return outs

    # expression grammar: expr -> term (("+"|"-") term)*; term -> factor ("*" factor)*
    def expr(self, assign_target=None):
        acc = self.term(assign_target)
        while self.peek().kind in ("+", "-"):
            op = self.next()
            rhs = self.term(assign_target)
            acc = self._combine_add(acc, rhs, op)
        return acc

    def term(self, assign_target=None):
        acc = self.factor(assign_target)
        while self.peek().kind == "*":
            op = self.next()
            rhs = self.factor(assign_target)
            acc = self._combine_mul(acc, rhs, op)
        return acc

    def factor(self, assign_target=None):
        tok = self.next()
        if tok.kind == "int":
            return self.builder.constant(int(tok.text, 0))
        if tok.kind == "-":
            inner = self.factor(assign_target)
            if isinstance(inner, Product):
                return Product(inner.a, -1 * inner.b, -1 * inner.rest)
            return -inner
        if tok.kind == "(":
            inner = self.expr(assign_target)
            self.expect(")")
            return inner
        if tok.kind == "ident":
            name = tok.text
            if name == assign_target:
                raise CyclicDependency(
                    f"signal {name!r} used inside its own assignment "
                    f"(line {tok.line}, col {tok.col})"
                )
            if name not in self.declared:
                raise UndeclaredSignal(
                    f"signal {name!r} is not declared (line {tok.line}, col {tok.col})"
                )
            if name not in self.assigned:
                raise CyclicDependency(
                    f"signal {name!r} used before it is assigned "
                    f"(line {tok.line}, col {tok.col})"
                )
            return self.builder.ref(name)
        raise CircuitSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.col)

    def _combine_add(self, a, b, op):
        sign = 1 if op.kind == "+" else -1
        if isinstance(a, Product) and isinstance(b, Product):
            raise CircuitSyntaxError("at most one product per statement", op.line, op.col)
        if isinstance(a, Product):
            return Product(a.a, a.b, a.rest + sign * b)
        if isinstance(b, Product):
            if sign == 1:
                return Product(b.a, b.b, b.rest + a)
            return Product(b.a, -1 * b.b, a - b.rest)
        return a + sign * b

    def _combine_mul(self, a, b, op):
        if isinstance(a, Product) or isinstance(b, Product):
            # allowed only when the other side is a plain constant
            prod = a if isinstance(a, Product) else b
            other = b if isinstance(a, Product) else a
            if isinstance(other, LinComb) and other.is_constant():
                s = other.constant_value()
                return Product(prod.a, s * prod.b, s * prod.rest)
            raise CircuitSyntaxError(
                "statements admit a single product of linear terms", op.line, op.col
            )
        if a.is_constant() or b.is_constant():
            return a * b
        return Product(a, b)


def parse_circuit(text: str, field: PrimeField, gadgets=None) -> CircuitAst:
    """Parse DSL source into a circuit AST."""
    return _Parser(text, field, gadgets).parse(source=text)


# --- constraint systems -----------------------------------------------------


class ConstraintSystem:
    """m sparse rank-1 rows (a, b, c) over n wires: (s.a)(s.b) = s.c."""

    def __init__(self, field, wire_meta, rows, bindings=()):
        if not rows:
            raise CircuitError("a constraint system needs at least one row")
        if len(wire_meta) < 2:
            raise CircuitError("a constraint system needs a signal besides the constant")
        self.field = field
        self.wire_meta = tuple(wire_meta)      # (name, visibility) per wire
        self.rows = tuple(rows)                # (dict, dict, dict) id -> coeff
        self.bindings = tuple(bindings)        # ((name, value), ...) folded publics
        self._ids = {name: i for i, (name, _) in enumerate(self.wire_meta)}

    @property
    def n(self) -> int:
        return len(self.wire_meta)

    @property
    def m(self) -> int:
        return len(self.rows)

    def wire_id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise UndeclaredSignal(f"unknown wire {name!r}") from None


class Witness:
    """Wire assignment s with s[0] = 1."""

    __slots__ = ("field", "values")

    def __init__(self, field, values):
        vals = tuple(int(field(v)) for v in values)
        if not vals or vals[0] != 1:
            raise CircuitError("witness must start with the constant 1")
        self.field = field
        self.values = vals

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other):
        return (
            isinstance(other, Witness)
            and self.field == other.field
            and self.values == other.values
        )

    def __repr__(self):
        return f"Witness{self.values}"


def flatten(ast: CircuitAst) -> ConstraintSystem:
    """Turn a circuit into its rank-1 constraint system.

    One row per product assignment, per assertion, and per linear output
    binding; additions and constant factors live inside the row vectors.
    """
    field = ast.field
    one = {ONE_WIRE: 1}
    rows = []
    for st in ast.statements:
        if isinstance(st, MulAssign):
            c = dict((-st.rest).terms)
            c[st.lhs] = (c.get(st.lhs, 0) + 1) % field.p
            rows.append((dict(st.a.terms), dict(st.b.terms), c))
        elif isinstance(st, LinAssign):
            rows.append((dict(st.lc.terms), dict(one), {st.lhs: 1}))
        elif isinstance(st, AssertEq):
            rows.append((dict(st.a.terms), dict(st.b.terms), dict(st.c.terms)))
        # hints contribute no row
    return ConstraintSystem(field, ast.wires, rows)


def eval_witness(ast: CircuitAst, inputs: dict) -> Witness:
    """Execute the circuit on the given inputs and return the full witness.

    Every declared input (public and private) must be supplied; assert
    statements are checked as they are reached.  The returned witness is
    re-checked against the flattened system before being handed out.
    """
    field = ast.field
    p = field.p
    values = [0] * ast.n_wires
    values[ONE_WIRE] = 1
    known = {name for name, _ in ast.wires}
    for name in inputs:
        if name not in known:
            raise UndeclaredSignal(f"input {name!r} does not name a declared signal")
    for wid, (name, vis) in enumerate(ast.wires):
        if vis in (VIS_PUBLIC, VIS_PRIVATE):
            if name not in inputs:
                raise MissingInput(f"no value supplied for input {name!r}")
            values[wid] = int(field(inputs[name]))
    for idx, st in enumerate(ast.statements):
        if isinstance(st, MulAssign):
            values[st.lhs] = (
                st.a.evaluate(values) * st.b.evaluate(values) + st.rest.evaluate(values)
            ) % p
        elif isinstance(st, LinAssign):
            values[st.lhs] = st.lc.evaluate(values)
        elif isinstance(st, HintAssign):
            v = st.fn(field, *[a.evaluate(values) for a in st.args])
            values[st.lhs] = int(field(v))
        elif isinstance(st, AssertEq):
            lhs = st.a.evaluate(values) * st.b.evaluate(values) % p
            rhs = st.c.evaluate(values)
            if lhs != rhs:
                raise AssertionFailed(
                    f"assertion at statement {idx} violated"
                    + (f" (line {st.pos[0]})" if st.pos else ""),
                    index=idx,
                )
    w = Witness(field, values)
    cs = flatten(ast)
    if not check_constraints(cs, w):
        raise AssertionFailed("internal: evaluated witness violates a constraint row")
    return w


def check_constraints(cs: ConstraintSystem, w: Witness) -> bool:
    """Brute-force row check; the oracle the QAP layer is tested against."""
    if cs.field != w.field or len(w) != cs.n:
        raise DimensionMismatch(
            f"witness of length {len(w)} against a system with {cs.n} wires"
        )
    p = cs.field.p
    vals = w.values
    for a, b, c in cs.rows:
        av = sum(coef * vals[i] for i, coef in a.items()) % p
        bv = sum(coef * vals[i] for i, coef in b.items()) % p
        cv = sum(coef * vals[i] for i, coef in c.items()) % p
        if av * bv % p != cv:
            return False
    return True


def bind(cs: ConstraintSystem, assignments: dict) -> ConstraintSystem:
    """Fold public-input/output wires to constants (specialization).

    The bound wires disappear; their contribution moves onto the constant
    wire in every row.  Proof statements are therefore about the circuit
    *with these values fixed*, and the binding list becomes part of the
    system identity (and its digest).
    """
    field = cs.field
    fold: dict[int, int] = {}
    bindings = list(cs.bindings)
    for name, value in assignments.items():
        wid = cs.wire_id(name)
        vis = cs.wire_meta[wid][1]
        if vis not in (VIS_PUBLIC, VIS_OUTPUT):
            raise CircuitError(f"cannot bind {vis} wire {name!r}; publics only")
        fold[wid] = int(field(value))
        bindings.append((name, fold[wid]))
    if not fold:
        return cs
    remap: dict[int, int] = {}
    new_meta = []
    for wid, meta in enumerate(cs.wire_meta):
        if wid in fold:
            continue
        remap[wid] = len(new_meta)
        new_meta.append(meta)
    new_rows = []
    for row in cs.rows:
        new_row = []
        for vec in row:
            out: dict[int, int] = {}
            const = 0
            for wid, coef in vec.items():
                if wid in fold:
                    const = (const + coef * fold[wid]) % field.p
                else:
                    out[remap[wid]] = coef
            if const:
                out[ONE_WIRE] = (out.get(ONE_WIRE, 0) + const) % field.p
            if out.get(ONE_WIRE) == 0:
                del out[ONE_WIRE]
            new_row.append(out)
        new_rows.append(tuple(new_row))
    return ConstraintSystem(field, new_meta, new_rows, bindings)


def project_witness(cs_bound: ConstraintSystem, full: Witness, cs_full: ConstraintSystem) -> Witness:
    """Restrict a full witness to a bound system's wires.

    Checks that the witness actually carries the bound values; disagreement
    means the claimed publics do not match the computation.
    """
    bound = dict(cs_bound.bindings)
    values = []
    for name, _vis in cs_full.wire_meta:
        wid = cs_full.wire_id(name)
        if name in bound:
            if full[wid] != bound[name]:
                raise AssertionFailed(
                    f"witness value for {name!r} differs from its public binding"
                )
        else:
            values.append(full[wid])
    return Witness(cs_bound.field, values)


def random_inputs(ast: CircuitAst, rng: random.Random) -> dict:
    """Uniformly random assignment for every declared input."""
    return {name: rng.randrange(ast.field.p) for name in ast.input_names()}
