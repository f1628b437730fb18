"""Exact scalar arithmetic for curvature computations.

Every scalar handled by this package is a rational function, with exact
rational coefficients, in a fixed finite set of *atoms* attached to a chart:

* one atom per coordinate ``x``,
* one exponential atom per coordinate, denoting ``exp(x)`` (integer powers
  ``exp(k*x)`` are powers of that atom),
* one atom per named constant parameter.

The atoms are algebraically independent, so an expression is canonically a
reduced fraction of multivariate polynomials over Q.  Canonical form means:
numerator and denominator share no common factor, the denominator is monic
under the ring's monomial order, and zero is ``0/1``.  Structural equality of
canonical forms therefore decides mathematical equality, which is the
zero-test every classifier in this package ultimately rests on.

Differentiation uses d(x)/dx = 1, d(exp(x))/dx = exp(x) and kills parameters;
it is extended by linearity and the product/quotient rules.  Because atoms are
independent, substituting independent random rationals for them (including the
exponential atoms) is a sound Schwartz-Zippel style zero test; see
``Expr.evaluate``.

Polynomial arithmetic and multivariate GCD are delegated to ``sympy.polys``
sparse rings; everything above that level (grammar, canonicalization policy,
derivatives, evaluation, printing) lives here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import ring as _sympy_ring


class ExpressionError(ValueError):
    """Base class for errors raised by the expression layer."""


class ParseError(ExpressionError):
    """Source text does not conform to the expression grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvaluationError(ExpressionError):
    """A rational evaluation hit a vanishing denominator."""


@dataclass(frozen=True)
class Atom:
    """One generator of a chart's coefficient field.

    kind is "coord", "exp" (the exponential of a coordinate) or "param";
    index refers to the coordinate/parameter position in the context.
    """

    kind: str
    index: int
    name: str


Number = Union[int, Fraction]


class Context:
    """Declared coordinate and parameter names plus the polynomial ring.

    Ring generators are ordered: coordinates, exponential atoms (one per
    coordinate, in coordinate order), parameters.  Contexts with equal
    declarations produce interoperable expressions.
    """

    __slots__ = ("coords", "params", "ring", "atoms", "_coord_pos",
                 "_param_pos", "_zero", "_one", "_ints")

    def __init__(self, coords: Sequence[str], params: Sequence[str] = ()):
        coords = tuple(coords)
        params = tuple(params)
        seen: set[str] = set()
        for name in coords + params:
            if not name.isidentifier():
                raise ExpressionError(f"invalid atom name {name!r}")
            if name == "exp":
                raise ExpressionError("'exp' is reserved")
            if name in seen:
                raise ExpressionError(f"duplicate atom name {name!r}")
            seen.add(name)
        self.coords = coords
        self.params = params
        gen_names = (list(coords)
                     + [f"_exp_{c}" for c in coords]
                     + list(params))
        self.ring = _sympy_ring(gen_names, QQ, order="grevlex")[0]
        atoms = [Atom("coord", i, c) for i, c in enumerate(coords)]
        atoms += [Atom("exp", i, f"exp({c})") for i, c in enumerate(coords)]
        atoms += [Atom("param", j, p) for j, p in enumerate(params)]
        self.atoms = tuple(atoms)
        self._coord_pos = {c: i for i, c in enumerate(coords)}
        self._param_pos = {p: j for j, p in enumerate(params)}
        self._zero = Expr(self, self.ring.zero, self.ring.one)
        self._one = Expr(self, self.ring.one, self.ring.one)
        self._ints = {0: self._zero, 1: self._one}

    @property
    def n(self) -> int:
        return len(self.coords)

    def __eq__(self, other):
        return (isinstance(other, Context)
                and self.coords == other.coords
                and self.params == other.params)

    def __hash__(self):
        return hash((self.coords, self.params))

    def __repr__(self):
        return f"Context(coords={self.coords}, params={self.params})"

    # -- atom positions in the ring -------------------------------------

    def coord_gen(self, i: int):
        return self.ring.gens[i]

    def exp_gen(self, i: int):
        return self.ring.gens[len(self.coords) + i]

    def param_gen(self, j: int):
        return self.ring.gens[2 * len(self.coords) + j]

    # -- constructors ----------------------------------------------------

    @property
    def zero(self) -> "Expr":
        return self._zero

    @property
    def one(self) -> "Expr":
        return self._one

    def integer(self, k: int) -> "Expr":
        cached = self._ints.get(k)
        if cached is None:
            cached = Expr(self, self.ring.ground_new(QQ(k)), self.ring.one)
            if -8 <= k <= 8:
                self._ints[k] = cached
        return cached

    def rational(self, p: int, q: int = 1) -> "Expr":
        if q == 0:
            raise ExpressionError("zero denominator in rational literal")
        return Expr(self, self.ring.ground_new(QQ(p, q)), self.ring.one)

    def coordinate(self, which: Union[int, str]) -> "Expr":
        i = self._coord_pos[which] if isinstance(which, str) else which
        return Expr(self, self.coord_gen(i), self.ring.one)

    def exponential(self, which: Union[int, str], k: int = 1) -> "Expr":
        """exp(k * coordinate) as an expression; k may be negative."""
        i = self._coord_pos[which] if isinstance(which, str) else which
        t = self.exp_gen(i)
        if k >= 0:
            return Expr(self, t ** k, self.ring.one)
        return Expr(self, self.ring.one, t ** (-k))

    def parameter(self, which: Union[int, str]) -> "Expr":
        j = self._param_pos[which] if isinstance(which, str) else which
        return Expr(self, self.param_gen(j), self.ring.one)

    def parse(self, src: str) -> "Expr":
        return parse_expression(src, self)

    def atom_of_gen(self, position: int) -> Atom:
        return self.atoms[position]


def _normalized(ctx: Context, num, den) -> "Expr":
    """Reduce num/den to canonical form (coprime, monic denominator)."""
    if not num:
        return ctx._zero
    if not den:
        raise ExpressionError("division by zero expression")
    if den != ctx.ring.one:
        g = num.gcd(den)
        if g != ctx.ring.one:
            num = num.quo(g)
            den = den.quo(g)
        lc = den.LC
        if lc != QQ.one:
            inv = QQ.one / lc
            num = num.mul_ground(inv)
            den = den.mul_ground(inv)
    return Expr(ctx, num, den)


class Expr:
    """A canonical rational function over a context's atoms.

    Immutable; all arithmetic returns new canonical values.  Supports the
    usual operators against Expr, int and Fraction operands, so componentwise
    tensor arithmetic over numpy object arrays works transparently.
    """

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self, ctx: Context, num, den):
        # Callers must supply canonical (num, den); use combine()/_normalized
        # to build values from raw polynomials.
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self.num == self.ctx.ring.one and self.den == self.ctx.ring.one

    @property
    def is_rational_constant(self) -> bool:
        return self.num.is_ground and self.den == self.ctx.ring.one

    def is_constant(self) -> bool:
        """True when no coordinate or exponential atom occurs (parameters ok)."""
        ncoord = 2 * len(self.ctx.coords)
        for poly in (self.num, self.den):
            for monom in poly.monoms():
                if any(monom[:ncoord]):
                    return False
        return True

    def atoms(self) -> set[Atom]:
        present: set[Atom] = set()
        for poly in (self.num, self.den):
            for monom in poly.monoms():
                for pos, e in enumerate(monom):
                    if e:
                        present.add(self.ctx.atoms[pos])
        return present

    # -- equality / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Expr):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == _coerce(self.ctx, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()),
                               frozenset(self.den.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(self.ctx, other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self.ctx, other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, _neg(other))

    def __rsub__(self, other):
        other = _coerce(self.ctx, other)
        if other is NotImplemented:
            return NotImplemented
        return _add(other, _neg(self))

    def __mul__(self, other):
        other = _coerce(self.ctx, other)
        if other is NotImplemented:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(self.ctx, other)
        if other is NotImplemented:
            return NotImplemented
        return _div(self, other)

    def __rtruediv__(self, other):
        other = _coerce(self.ctx, other)
        if other is NotImplemented:
            return NotImplemented
        return _div(other, self)

    def __neg__(self):
        return _neg(self)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ExpressionError("exponent must be an integer")
        return _int_pow(self, k)

    def diff(self, coord: Union[int, str]) -> "Expr":
        return differentiate(self, coord)

    def evaluate(self, assignment: Mapping[Atom, Number]) -> Fraction:
        return evaluate_rational(self, assignment)

    def __str__(self):
        return _format_expr(self)

    def __repr__(self):
        return f"Expr({_format_expr(self)})"

    def __bool__(self):
        return not self.is_zero


def _coerce(ctx: Context, value):
    if isinstance(value, Expr):
        return value
    if isinstance(value, int):
        return ctx.integer(value)
    if isinstance(value, Fraction):
        return ctx.rational(value.numerator, value.denominator)
    return NotImplemented


def _neg(a: Expr) -> Expr:
    if a.is_zero:
        return a
    return Expr(a.ctx, a.num.mul_ground(-QQ.one), a.den)


def _add(a: Expr, b: Expr) -> Expr:
    ctx = a.ctx
    one = ctx.ring.one
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.den == one and b.den == one:
        num = a.num + b.num
        return Expr(ctx, num, one) if num else ctx._zero
    if a.den == b.den:
        return _normalized(ctx, a.num + b.num, a.den)
    # Henrici: split common denominator factor so only that factor can cancel.
    g = a.den.gcd(b.den)
    if g == one:
        num = a.num * b.den + b.num * a.den
        if not num:
            return ctx._zero
        return Expr(ctx, num, a.den * b.den)  # coprime by construction
    da = a.den.quo(g)
    db = b.den.quo(g)
    num = a.num * db + b.num * da
    if not num:
        return ctx._zero
    h = num.gcd(g)
    if h != one:
        num = num.quo(h)
        g = g.quo(h)
    den = g * da * db
    lc = den.LC
    if lc != QQ.one:
        inv = QQ.one / lc
        num = num.mul_ground(inv)
        den = den.mul_ground(inv)
    return Expr(ctx, num, den)


def _mul(a: Expr, b: Expr) -> Expr:
    ctx = a.ctx
    one = ctx.ring.one
    if a.is_zero or b.is_zero:
        return ctx._zero
    if a.den == one and b.den == one:
        return Expr(ctx, a.num * b.num, one)
    n1, d1, n2, d2 = a.num, a.den, b.num, b.den
    if d2 != one:
        g = n1.gcd(d2)
        if g != one:
            n1 = n1.quo(g)
            d2 = d2.quo(g)
    if d1 != one:
        g = n2.gcd(d1)
        if g != one:
            n2 = n2.quo(g)
            d1 = d1.quo(g)
    num = n1 * n2
    den = d1 * d2
    lc = den.LC
    if lc != QQ.one:
        inv = QQ.one / lc
        num = num.mul_ground(inv)
        den = den.mul_ground(inv)
    return Expr(ctx, num, den)


def _div(a: Expr, b: Expr) -> Expr:
    if b.is_zero:
        raise ExpressionError("division by zero expression")
    inv = _normalized(b.ctx, b.den, b.num)
    return _mul(a, inv)


def _int_pow(a: Expr, k: int) -> Expr:
    ctx = a.ctx
    if k == 0:
        if a.is_zero:
            raise ExpressionError("0^0 is undefined")
        return ctx._one
    if a.is_zero:
        if k < 0:
            raise ExpressionError("division by zero expression")
        return ctx._zero
    if k > 0:
        return Expr(ctx, a.num ** k, a.den ** k)
    num, den = a.den ** (-k), a.num ** (-k)
    lc = den.LC
    if lc != QQ.one:
        inv = QQ.one / lc
        num = num.mul_ground(inv)
        den = den.mul_ground(inv)
    return Expr(ctx, num, den)


_COMBINE = {"add": _add,
            "sub": lambda a, b: _add(a, _neg(b)),
            "mul": _mul,
            "div": _div}


def combine(a: Expr, b: Union[Expr, int], op: str) -> Expr:
    """Apply one of {add, sub, mul, div, int_pow} canonically."""
    if op == "int_pow":
        if isinstance(b, Expr):
            if not b.is_rational_constant or QQ.denom(b.num.LC) != 1:
                raise ExpressionError("int_pow exponent must be an integer")
            b = int(QQ.numer(b.num.LC))
        return _int_pow(a, b)
    try:
        fn = _COMBINE[op]
    except KeyError:
        raise ExpressionError(f"unknown operation {op!r}") from None
    b = _coerce(a.ctx, b)
    return fn(a, b)


def is_zero(e: Expr) -> bool:
    """True iff the canonical numerator is the zero polynomial."""
    return e.is_zero


def _poly_diff(ctx: Context, poly, i: int):
    # Chain rule for the exponential atom: d(t)/dx = t.
    d = poly.diff(ctx.coord_gen(i))
    t = ctx.exp_gen(i)
    dt = poly.diff(t)
    if dt:
        d = d + t * dt
    return d


def differentiate(e: Expr, coord: Union[int, str]) -> Expr:
    """Partial derivative with respect to a coordinate, in canonical form."""
    ctx = e.ctx
    i = ctx._coord_pos[coord] if isinstance(coord, str) else coord
    if not 0 <= i < len(ctx.coords):
        raise ExpressionError(f"coordinate index {i} out of range")
    dnum = _poly_diff(ctx, e.num, i)
    if e.den == ctx.ring.one:
        return Expr(ctx, dnum, ctx.ring.one) if dnum else ctx._zero
    dden = _poly_diff(ctx, e.den, i)
    return _normalized(ctx, dnum * e.den - e.num * dden, e.den * e.den)


def evaluate_rational(e: Expr, assignment: Mapping[Atom, Number]) -> Fraction:
    """Evaluate at exact rational atom values.

    The exponential atoms are substituted independently of their coordinates:
    atoms are algebraically independent, so this is exactly the substitution
    a randomized zero test needs.  Raises EvaluationError when the denominator
    vanishes at the point and ExpressionError when an occurring atom has no
    value.
    """
    ctx = e.ctx
    values: list = [None] * len(ctx.atoms)
    for atom, val in assignment.items():
        if isinstance(atom, Atom):
            pos = _atom_position(ctx, atom)
            if pos is not None:
                values[pos] = QQ(Fraction(val))

    def poly_value(poly):
        total = QQ.zero
        for monom, coeff in poly.items():
            term = coeff
            for pos, exp in enumerate(monom):
                if exp:
                    v = values[pos]
                    if v is None:
                        raise ExpressionError(
                            f"no value assigned to atom {ctx.atoms[pos].name}")
                    term = term * v ** exp
            total = total + term
        return total

    den_val = poly_value(e.den)
    if not den_val:
        raise EvaluationError("denominator vanishes at the given point")
    val = poly_value(e.num) / den_val
    return Fraction(int(QQ.numer(val)), int(QQ.denom(val)))


def _atom_position(ctx: Context, atom: Atom):
    if atom.kind == "coord":
        return atom.index if atom.index < len(ctx.coords) else None
    if atom.kind == "exp":
        return len(ctx.coords) + atom.index
    if atom.kind == "param":
        return 2 * len(ctx.coords) + atom.index
    return None


# ---------------------------------------------------------------------------
# Parsing.
#
# Grammar (also used by metric files):
#   sum     := product (("+" | "-") product)*
#   product := unary (("*" | "/") unary)*
#   unary   := "-" unary | power
#   power   := atom ["^" ["-"] INT]
#   atom    := INT | IDENT | expcall | "(" sum ")"
#   expcall := "exp" "(" ["-"] [INT "*"] COORD ")"
# Precedence: ^  >  unary -  >  * /  >  + -.  Rational literals like 7/2 are
# covered by the division operator; exponents are integer literals only.
# ---------------------------------------------------------------------------

_TOKEN_OPS = set("+-*/^()")


def _tokenize(src: str):
    tokens = []  # (kind, value, position)
    i, size = 0, len(src)
    while i < size:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < size and src[j].isdigit():
                j += 1
            tokens.append(("int", int(src[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < size and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("ident", src[i:j], i))
            i = j
            continue
        if ch in _TOKEN_OPS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, size))
    return tokens


class _Parser:
    def __init__(self, tokens, ctx: Context):
        self.tokens = tokens
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, position = self.advance()
        if kind != "op" or value != op:
            raise ParseError(f"expected '{op}'", position)

    def parse_sum(self) -> Expr:
        value = self.parse_product()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in "+-":
                self.advance()
                rhs = self.parse_product()
                value = value + rhs if op == "+" else value - rhs
            else:
                return value

    def parse_product(self) -> Expr:
        value = self.parse_unary()
        while True:
            kind, op, position = self.peek()
            if kind == "op" and op in "*/":
                self.advance()
                rhs = self.parse_unary()
                if op == "/":
                    if rhs.is_zero:
                        raise ParseError("division by zero", position)
                    value = value / rhs
                else:
                    value = value * rhs
            else:
                return value

    def parse_unary(self) -> Expr:
        kind, op, _ = self.peek()
        if kind == "op" and op == "-":
            self.advance()
            return -self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        kind, op, _ = self.peek()
        if kind == "op" and op == "^":
            self.advance()
            k = self.parse_int_literal("integer literal exponent expected")
            if base.is_zero and k <= 0:
                raise ParseError("zero base with non-positive exponent",
                                 self.tokens[self.pos - 1][2])
            return _int_pow(base, k)
        return base

    def parse_int_literal(self, message: str) -> int:
        sign = 1
        kind, value, position = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            sign = -1
            kind, value, position = self.peek()
        if kind != "int":
            raise ParseError(message, position)
        self.advance()
        return sign * value

    def parse_atom(self) -> Expr:
        kind, value, position = self.advance()
        if kind == "int":
            return self.ctx.integer(value)
        if kind == "op" and value == "(":
            inner = self.parse_sum()
            self.expect_op(")")
            return inner
        if kind == "ident":
            if value == "exp":
                return self.parse_expcall(position)
            if value in self.ctx._coord_pos:
                return self.ctx.coordinate(value)
            if value in self.ctx._param_pos:
                return self.ctx.parameter(value)
            raise ParseError(f"unknown identifier {value!r}", position)
        raise ParseError("expected a number, name or parenthesized "
                         "subexpression", position)

    def parse_expcall(self, start: int) -> Expr:
        self.expect_op("(")
        k = 1
        kind, value, position = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            k = -1
            kind, value, position = self.peek()
        if kind == "int":
            self.advance()
            k *= value
            self.expect_op("*")
            kind, value, position = self.peek()
        if kind != "ident" or value not in self.ctx._coord_pos:
            raise ParseError("exp() argument must be integer * coordinate",
                             position)
        self.advance()
        kind, close, position = self.advance()
        if kind != "op" or close != ")":
            raise ParseError("exp() argument must be integer * coordinate",
                             position)
        return self.ctx.exponential(value, k)


def parse_expression(src: str, ctx: Context) -> Expr:
    """Parse source text into a canonical expression.

    Raises ParseError with the offending position on malformed input,
    unknown identifiers, non-integer exponents, or exp() of anything other
    than an integer multiple of a declared coordinate.
    """
    parser = _Parser(_tokenize(src), ctx)
    value = parser.parse_sum()
    kind, _, position = parser.peek()
    if kind != "end":
        raise ParseError("unexpected trailing input", position)
    return value


# ---------------------------------------------------------------------------
# Printing.  The printer emits strings inside the grammar above, and printing
# then re-parsing reproduces the same canonical value.  Exponential atoms in a
# one-term denominator are folded into exp(-k*x) factors, so e.g. the value
# (7/2)/exp(x1) renders as "7/2 * exp(-x1)".
# ---------------------------------------------------------------------------


def _coeff_str(coeff) -> str:
    p, q = QQ.numer(coeff), QQ.denom(coeff)
    return f"{p}" if q == 1 else f"{p}/{q}"


def _factor_strs(ctx: Context, monom) -> list[str]:
    factors = []
    for pos, e in enumerate(monom):
        if not e:
            continue
        atom = ctx.atoms[pos]
        if atom.kind == "exp":
            factors.append(_exp_str(ctx.coords[atom.index], e))
        else:
            name = atom.name
            factors.append(name if e == 1 else f"{name}^{e}")
    return factors


def _exp_str(coord: str, k: int) -> str:
    if k == 1:
        return f"exp({coord})"
    if k == -1:
        return f"exp(-{coord})"
    return f"exp({k}*{coord})"


def _poly_str(ctx: Context, poly) -> str:
    if not poly:
        return "0"
    order = ctx.ring.order
    parts: list[str] = []
    for monom, coeff in sorted(poly.items(), key=lambda mc: order(mc[0]),
                               reverse=True):
        negative = coeff < 0
        mag = -coeff if negative else coeff
        factors = _factor_strs(ctx, monom)
        if not factors or mag != QQ.one:
            factors.insert(0, _coeff_str(mag))
        body = " * ".join(factors)
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


def _format_expr(e: Expr) -> str:
    ctx = e.ctx
    if e.is_zero:
        return "0"
    if e.den == ctx.ring.one:
        return _poly_str(ctx, e.num)
    den_terms = list(e.den.items())
    if len(den_terms) == 1:
        # Monic single-term denominator: fold exponential atoms into the
        # numerator as negative exponents, divide by the rest.
        monom, _ = den_terms[0]
        exp_factors: list[str] = []
        plain_factors: list[str] = []
        ncoords = len(ctx.coords)
        for pos, k in enumerate(monom):
            if not k:
                continue
            atom = ctx.atoms[pos]
            if atom.kind == "exp":
                exp_factors.append(_exp_str(ctx.coords[atom.index], -k))
            else:
                plain_factors.append(atom.name if k == 1
                                     else f"{atom.name}^{k}")
        num_str = _poly_str(ctx, e.num)
        if len(e.num.items()) > 1:
            num_str = f"({num_str})"
        if exp_factors:
            if num_str == "1":
                num_str = " * ".join(exp_factors)
            else:
                num_str = " * ".join([num_str] + exp_factors)
        if plain_factors:
            if len(plain_factors) == 1:
                num_str = f"{num_str} / {plain_factors[0]}"
            else:
                num_str = f"{num_str} / ({' * '.join(plain_factors)})"
        return num_str
    num_str = _poly_str(ctx, e.num)
    if len(e.num.items()) > 1:
        num_str = f"({num_str})"
    return f"{num_str} / ({_poly_str(ctx, e.den)})"
