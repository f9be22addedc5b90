"""Coefficient field K = Q(x_1..x_p, g_1..g_q) with commuting derivations.

Field arithmetic is delegated to sympy's sparse rational function field,
whose elements are immutable, hashable and kept in lowest terms with a
positive leading denominator coefficient, so equality is equality of
representations.  What this module adds is the differential structure:
every derivation is defined by its values on the field's symbols, and
``derive`` applies the chain rule through those table entries.
"""

import re
from fractions import Fraction
from itertools import chain

from sympy import QQ
from sympy.polys.fields import FracElement, field

from . import expr
from .errors import (ClosureError, DivisionByZero, DuplicateName,
                     ParseError, UnknownSymbol)

FieldElement = FracElement

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class FieldSpec:
    """Derivation names, field symbols and the derivation table.

    ``table[i][k]`` is the value of the ``i``-th derivation on the ``k``-th
    symbol, where symbols are the base variables followed by the auxiliary
    generators.
    """

    def __init__(self, derivation_names, base_variables, aux_generators,
                 table, _caches=None):
        self.derivation_names = tuple(derivation_names)
        self.base_variables = tuple(base_variables)
        self.aux_generators = tuple(aux_generators)
        self.symbols = self.base_variables + self.aux_generators
        self.field = _make_field(self.symbols)
        self.table = tuple(tuple(self.field(v) for v in row) for row in table)
        if len(self.table) != self.m or any(len(r) != len(self.symbols) for r in self.table):
            raise ValueError("derivation table has the wrong shape")
        # derivations that vanish on every symbol act as central variables
        self.trivial = tuple(all(v == 0 for v in row) for row in self.table)
        self._gens = dict(zip(self.symbols, self.field.gens))
        self._dcache = {} if _caches is None else _caches[0]
        self._mcache = {} if _caches is None else _caches[1]
        self._key = (self.derivation_names, self.symbols, self.table)

    @property
    def m(self):
        return len(self.derivation_names)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (f"FieldSpec(derivations={list(self.derivation_names)}, "
                f"variables={list(self.base_variables)}, "
                f"generators={list(self.aux_generators)})")

    # -- elements -----------------------------------------------------------

    @property
    def zero(self):
        return self.field.zero

    @property
    def one(self):
        return self.field.one

    def gen(self, name):
        try:
            return self._gens[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def element(self, value):
        """Coerce an int, Fraction, field element or expression string."""
        if isinstance(value, FracElement):
            if value.field is not self.field:
                return self.field.from_expr(value.as_expr())
            return value
        if isinstance(value, str):
            return self.parse_element(value)
        if isinstance(value, Fraction):
            return self.field(QQ(value.numerator, value.denominator))
        return self.field(value)

    def parse_element(self, text):
        """Parse a commutative rational-function expression."""
        tree = expr.parse(text)

        def symbol(name, pos):
            if name in self._gens:
                return self._gens[name]
            raise UnknownSymbol(name, pos)

        def divide(a, b, pos):
            if b == 0:
                raise DivisionByZero(f"division by zero at position {pos}")
            return a / b

        return expr.evaluate(tree, self.element, symbol, divide)

    def is_constant(self, a):
        return all(self.derive(a, i) == 0 for i in range(self.m))

    # -- derivations --------------------------------------------------------

    def derive(self, a, i):
        """Apply the ``i``-th derivation to the field element ``a``."""
        if self.trivial[i] or (a.numer.is_ground and a.denom.is_ground):
            return self.field.zero
        key = (a, i)
        hit = self._dcache.get(key)
        if hit is not None:
            return hit
        out = self.field.zero
        row = self.table[i]
        for k, g in enumerate(self.field.gens):
            if row[k] != 0:
                da = a.diff(g)
                if da != 0:
                    out += da * row[k]
        self._dcache[key] = out
        return out

    def derive_multi(self, a, kappa):
        """Apply the monomial derivation operator with exponents ``kappa``."""
        for i, e in enumerate(kappa):
            if e and self.trivial[i]:
                return self.field.zero
        key = (a, kappa)
        hit = self._mcache.get(key)
        if hit is not None:
            return hit
        for i, e in enumerate(kappa):
            if e:
                rest = kappa[:i] + (e - 1,) + kappa[i + 1:]
                out = self.derive(self.derive_multi(a, rest), i)
                break
        else:
            out = a
        self._mcache[key] = out
        return out

    def with_tag(self, name="_w"):
        """Copy of this spec with one extra derivation acting as zero.

        Such a derivation commutes with every coefficient, so it behaves as
        a central commutative variable in the operator ring.
        """
        while name in self.derivation_names or name in self.symbols:
            name = "_" + name
        row = [0] * len(self.symbols)
        return FieldSpec(self.derivation_names + (name,), self.base_variables,
                         self.aux_generators, self.table + (tuple(row),),
                         _caches=(self._dcache, self._mcache))

    # -- rendering ----------------------------------------------------------

    def render(self, a):
        """Canonical text of a field element, parseable by ``parse_element``."""
        return render_element(a, self.symbols)


def _make_field(symbols):
    if symbols:
        return field(",".join(symbols), QQ)[0]
    return field("", QQ)[0]


# -- arithmetic entry points ---------------------------------------------------

def field_add(a, b):
    return a + b


def field_mul(a, b):
    return a * b


def field_div(a, b):
    if b == 0:
        raise DivisionByZero("division by the zero element")
    return a / b


def derive(spec, a, i):
    """``i`` may be a derivation index or a derivation name."""
    if isinstance(i, str):
        i = spec.derivation_names.index(i)
    return spec.derive(a, i)


# -- rendering helpers ---------------------------------------------------------

def _render_rational(c):
    c = Fraction(int(c.numerator), int(c.denominator))
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_monomial(exps, names):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_terms(p, names):
    """Signed term strings ``(negative, body)`` of a polynomial, grlex-descending."""
    out = []
    for exps, c in p.terms(order="grlex"):
        neg = c < 0
        c = -c if neg else c
        mono = render_monomial(exps, names)
        if not mono:
            body = _render_rational(c)
        elif c == 1:
            body = mono
        else:
            body = f"{_render_rational(c)}*{mono}"
        out.append((neg, body))
    return out


def render_poly(p, names):
    terms = poly_terms(p, names)
    if not terms:
        return "0"
    text = ""
    for k, (neg, body) in enumerate(terms):
        if k == 0:
            text = ("-" if neg else "") + body
        else:
            text += (" - " if neg else " + ") + body
    return text


def _is_atomic(p):
    """True when ``p`` renders without needing parentheses as a divisor."""
    terms = p.terms()
    if len(terms) != 1:
        return False
    exps, c = terms[0]
    nvars = sum(1 for e in exps if e)
    return (nvars == 0 and Fraction(int(c.numerator), int(c.denominator)).denominator == 1) \
        or (c == 1 and nvars == 1)


def render_element(a, names):
    num = render_poly(a.numer, names)
    if a.denom == 1:
        return num
    if len(a.numer.terms()) > 1:
        num = f"({num})"
    den = render_poly(a.denom, names)
    if not _is_atomic(a.denom):
        den = f"({den})"
    return f"{num}/{den}"


# -- loading -----------------------------------------------------------------------

_TABLE_LINE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)\s*=\s*(.+)$")
_KEY_LINE = re.compile(r"^([A-Za-z_]+)\s*=\s*(.*)$")


def _split_names(value, lineno):
    names = [v.strip() for v in value.split(",") if v.strip()]
    for n in names:
        base = n.split(":")[0].strip()
        if not _IDENT.match(base):
            raise ParseError(f"bad identifier {n!r} on line {lineno}")
    return names


def parse_field_block(text):
    """Parse a ``[field]`` block; returns ``(spec, order_text_or_None)``."""
    derivs, variables, gens, consts = [], [], [], []
    attach = {}
    entries = {}
    order_text = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "[field]":
            continue
        m = _TABLE_LINE.match(line)
        if m:
            d, sym, rhs = m.groups()
            if (sym, d) in entries:
                raise DuplicateName(f"{d}({sym})")
            entries[(sym, d)] = rhs.strip()
            continue
        m = _KEY_LINE.match(line)
        if not m:
            raise ParseError(f"cannot parse field line {lineno}: {line!r}")
        key, value = m.group(1), m.group(2)
        if key == "derivations":
            derivs += _split_names(value, lineno)
        elif key == "variables":
            for item in _split_names(value, lineno):
                name, _, d = item.partition(":")
                variables.append(name.strip())
                if d.strip():
                    attach[name.strip()] = d.strip()
        elif key == "generators":
            gens += _split_names(value, lineno)
        elif key == "constants":
            consts += _split_names(value, lineno)
        elif key == "order":
            order_text = value.strip()
        else:
            raise ParseError(f"unknown field key {key!r} on line {lineno}")
    return _build_spec(derivs, variables, gens, consts, attach, entries), order_text


def _build_spec(derivs, variables, gens, consts, attach, entries):
    if not derivs:
        raise ParseError("field spec declares no derivations")
    seen = set()
    for name in chain(derivs, variables, gens, consts):
        if name in seen:
            raise DuplicateName(name)
        seen.add(name)
    for v, d in attach.items():
        if d not in derivs:
            raise UnknownSymbol(d)
    generators = gens + consts
    symbols = variables + generators
    K = _make_field(tuple(symbols))
    gens_of = dict(zip(symbols, K.gens))

    def parse_rhs(text):
        tree = expr.parse(text)

        def symbol(name, pos):
            if name in gens_of:
                return gens_of[name]
            raise UnknownSymbol(name, pos)

        def divide(a, b, pos):
            if b == 0:
                raise DivisionByZero(f"division by zero at position {pos}")
            return a / b

        return expr.evaluate(tree, lambda q: K(QQ(q.numerator, q.denominator)),
                             symbol, divide)

    for sym, d in entries:
        if sym not in gens_of:
            raise UnknownSymbol(sym)
        if d not in derivs:
            raise UnknownSymbol(d)
        if sym in consts:
            raise ParseError(f"constant {sym!r} cannot have a derivation entry")

    table = []
    for d in derivs:
        row = []
        for sym in symbols:
            if (sym, d) in entries:
                row.append(parse_rhs(entries[(sym, d)]))
            elif sym in consts:
                row.append(K.zero)
            elif sym in variables:
                attached = attach.get(sym)
                if attached is None and "d" + sym in derivs:
                    attached = "d" + sym
                row.append(K.one if attached == d else K.zero)
            else:
                raise ClosureError(sym, d)
        table.append(row)
    return FieldSpec(derivs, variables, generators, table)


def load_spec(text):
    """Build a validated FieldSpec from the text of a ``[field]`` block.

    Base variables attach to the derivation named ``d<var>`` unless written
    ``var:deriv``; explicit ``deriv(symbol) = expr`` lines override this.
    Every generator needs an entry for every derivation; ``constants`` are
    generators whose derivatives all vanish.
    """
    return parse_field_block(text)[0]
