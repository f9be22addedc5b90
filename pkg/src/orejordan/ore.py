"""The operator ring D = K[d_1, ..., d_m] with d_i a = a d_i + d_i(a).

Operators are finite maps from exponent tuples to nonzero field elements.
Products expand with the generalized Leibniz rule

    d^alpha a = sum_{kappa <= alpha} C(alpha, kappa) d^kappa(a) d^(alpha - kappa)

which is exact and never produces terms above the naive product, so
leading indices are additive under any degree-compatible order.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import comb

from sympy.polys.fields import FracElement

from . import expr
from .coeffield import poly_terms, render_element, render_monomial
from .errors import (DivisionByZero, EmptyFactorList, ParseError, SpecMismatch,
                     UnknownSymbol, ZeroOperator)

MultiIndex = tuple


def divides(mu, nu):
    return all(a <= b for a, b in zip(mu, nu))


def lcm_index(mu, nu):
    return tuple(max(a, b) for a, b in zip(mu, nu))


def sub_index(mu, nu):
    return tuple(a - b for a, b in zip(mu, nu))


def add_index(mu, nu):
    return tuple(a + b for a, b in zip(mu, nu))


@dataclass(frozen=True)
class TermOrder:
    """Graded lex over a derivation precedence, optionally with a tag block.

    ``precedence`` lists derivation indices from highest to lowest.  When
    ``tag`` is set, the degree in that (central) variable is compared before
    everything else, which makes the order eliminate it.
    """

    precedence: tuple
    tag: int = None

    @classmethod
    def grlex(cls, spec, text=None):
        """Order from text such as ``"dx > dy"``; default is declaration order."""
        names = spec.derivation_names
        if text is None:
            return cls(tuple(range(spec.m)))
        parts = [p.strip() for p in text.split(">")]
        for p in parts:
            if p not in names:
                raise UnknownSymbol(p)
        if len(set(parts)) != len(parts):
            raise ParseError(f"repeated derivation in order {text!r}")
        rest = [i for i, n in enumerate(names) if n not in parts]
        return cls(tuple(names.index(p) for p in parts) + tuple(rest))

    @property
    def kind(self):
        return "GradedLex" if self.tag is None else "BlockElimination"

    def key(self, mi):
        lex = tuple(mi[p] for p in self.precedence)
        if self.tag is None:
            return (sum(lex),) + lex
        return (mi[self.tag], sum(lex)) + lex

    def with_tag(self, tag):
        return TermOrder(self.precedence, tag)

    def describe(self, spec):
        text = " > ".join(spec.derivation_names[p] for p in self.precedence)
        if self.tag is not None:
            text = f"{spec.derivation_names[self.tag]} >> ({text})"
        return text


class OreOperator:
    """An element of K[d_1..d_m]: ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("spec", "terms", "_hash")

    def __init__(self, spec, terms=None):
        self.spec = spec
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, spec):
        return cls(spec)

    @classmethod
    def scalar(cls, spec, c):
        c = spec.element(c)
        return cls(spec, {(0,) * spec.m: c})

    @classmethod
    def monomial(cls, spec, mi, c=1):
        return cls(spec, {tuple(mi): spec.element(c)})

    @classmethod
    def derivation(cls, spec, name):
        i = spec.derivation_names.index(name)
        return cls.monomial(spec, tuple(int(j == i) for j in range(spec.m)))

    # -- basic queries ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def order(self):
        """Total order; the zero operator has order -1."""
        return max((sum(k) for k in self.terms), default=-1)

    def is_scalar(self):
        return all(not any(k) for k in self.terms)

    def scalar_value(self):
        return self.terms.get((0,) * self.spec.m, self.spec.zero)

    def __eq__(self, other):
        if not isinstance(other, OreOperator):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, OreOperator):
            if other.spec != self.spec:
                raise SpecMismatch("operators belong to different field specs")
            return other
        if isinstance(other, (int, Fraction, FracElement)):
            return OreOperator.scalar(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return op_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return OreOperator(self.spec, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return op_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return op_add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return op_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return op_mul(other, self)

    def __pow__(self, n):
        out = OreOperator.scalar(self.spec, 1)
        for _ in range(n):
            out = op_mul(out, self)
        return out

    def __truediv__(self, other):
        """Right multiplication by the inverse of a nonzero scalar."""
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.is_scalar():
            raise ValueError("can only divide by a coefficient, not an operator")
        c = other.scalar_value()
        if c == 0:
            raise DivisionByZero("division by the zero coefficient")
        return op_mul(self, OreOperator.scalar(self.spec, 1 / c))

    def left_scale(self, c):
        """``c * self`` for a coefficient ``c`` (no derivatives involved)."""
        return OreOperator(self.spec, {k: c * v for k, v in self.terms.items()})

    def monic(self, order):
        _, lc = leading_term(self, order)
        return self.left_scale(1 / lc)

    # -- text ---------------------------------------------------------------

    def render(self, order=None):
        return render(self, order)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"OreOperator({render(self)!r})"


# -- ring operations ---------------------------------------------------------------

def _check(f, g):
    if f.spec != g.spec:
        raise SpecMismatch("operators belong to different field specs")


def op_add(f, g):
    _check(f, g)
    out = dict(f.terms)
    for k, v in g.terms.items():
        if k in out:
            s = out[k] + v
            if s == 0:
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = v
    return OreOperator(f.spec, out)


def _sub_indices(alpha, spec):
    ranges = [range(a + 1) if (a and not spec.trivial[i]) else range(1)
              for i, a in enumerate(alpha)]
    return cartesian(*ranges)


def _monomial_times(spec, alpha, g, acc, scale=None):
    """Accumulate ``scale * d^alpha * g`` into the dict ``acc``."""
    for beta, e in g.terms.items():
        for kappa in _sub_indices(alpha, spec):
            dk = spec.derive_multi(e, kappa) if any(kappa) else e
            if dk == 0:
                continue
            b = 1
            for a, k in zip(alpha, kappa):
                if k:
                    b *= comb(a, k)
            coef = dk * b if b != 1 else dk
            if scale is not None:
                coef = scale * coef
            idx = tuple(a - k + bb for a, k, bb in zip(alpha, kappa, beta))
            prev = acc.get(idx)
            acc[idx] = coef if prev is None else prev + coef


def op_mul(f, g):
    """Product ``f * g`` in D (``f`` applied after ``g``)."""
    _check(f, g)
    acc = {}
    for alpha, c in f.terms.items():
        _monomial_times(f.spec, alpha, g, acc, scale=c)
    return OreOperator(f.spec, acc)


def mul_monomial(alpha, c, g):
    """``c * d^alpha * g`` without building the left factor."""
    acc = {}
    _monomial_times(g.spec, alpha, g, acc, scale=c)
    return OreOperator(g.spec, acc)


def leading_term(f, order):
    """``(index, coefficient)`` of the order-maximal term."""
    if not f.terms:
        raise ZeroOperator("the zero operator has no leading term")
    k = max(f.terms, key=order.key)
    return k, f.terms[k]


def leading_index(f, order):
    return max(f.terms, key=order.key)


def right_reduce(f, G, order):
    """Divide ``f`` on the right by the operators in ``G``.

    Returns ``(remainder, cofactors)`` with ``f = sum(q_i * g_i) + remainder``
    and no term of the remainder divisible by a leading index of ``G``.
    The first ``g`` (in sequence order) whose leading index divides a term is
    used.  A nonzero scalar in ``G`` reduces everything to zero at once.
    """
    spec = f.spec
    G = list(G)
    for g in G:
        _check(f, g)
        if g.is_zero():
            raise ZeroOperator("cannot reduce by the zero operator")
    cofactors = [dict() for _ in G]
    for i, g in enumerate(G):
        if g.is_scalar():
            inv = OreOperator.scalar(spec, 1 / g.scalar_value())
            cofs = [OreOperator.zero(spec) for _ in G]
            cofs[i] = op_mul(f, inv)
            return OreOperator.zero(spec), cofs
    heads = [leading_term(g, order) for g in G]
    p = dict(f.terms)
    rem = {}
    while p:
        nu = max(p, key=order.key)
        c = p[nu]
        for i, (beta, lc) in enumerate(heads):
            if divides(beta, nu):
                gamma = sub_index(nu, beta)
                q = c / lc
                cofactors[i][gamma] = cofactors[i].get(gamma, spec.zero) + q
                sub = {}
                _monomial_times(spec, gamma, G[i], sub, scale=q)
                for k, v in sub.items():
                    w = p.get(k)
                    if w is None:
                        p[k] = -v
                    else:
                        w = w - v
                        if w == 0:
                            del p[k]
                        else:
                            p[k] = w
                break
        else:
            rem[nu] = c
            del p[nu]
    return OreOperator(spec, rem), [OreOperator(spec, q) for q in cofactors]


def verify_factorization(L, factors):
    """True iff the left-to-right product of ``factors`` equals ``L``."""
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("factor list must be nonempty")
    prod = factors[0]
    for F in factors[1:]:
        prod = op_mul(prod, F)
    return prod == L


def verify_intertwine(A, P, B, order):
    """True iff ``A * P`` lies in the left ideal ``D * B``.

    Then ``u -> P(u)`` maps solutions of ``B`` into solutions of ``A``.
    """
    if B.is_zero():
        raise ZeroOperator("B must be nonzero")
    rem, _ = right_reduce(op_mul(A, P), [B], order)
    return rem.is_zero()


# -- text ---------------------------------------------------------------------------

def render(f, order=None):
    """Canonical text: terms by descending ``order``, polynomial coefficients
    split into their monomials."""
    spec = f.spec
    if order is None:
        order = TermOrder.grlex(spec)
    names = spec.derivation_names
    pieces = []
    for k in sorted(f.terms, key=order.key, reverse=True):
        c = f.terms[k]
        mono = render_monomial(k, names)
        if c.denom == 1:
            for neg, body in poly_terms(c.numer, spec.symbols):
                if mono:
                    body = mono if body == "1" else f"{body}*{mono}"
                pieces.append((neg, body))
        else:
            neg = c.numer.LC < 0
            text = render_element(-c if neg else c, spec.symbols)
            pieces.append((neg, f"{text}*{mono}" if mono else text))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def parse_operator(text, spec, bindings=None):
    """Parse an operator expression over ``spec``.

    ``bindings`` maps extra names to already-built operators.  ``*`` is
    composition folded left to right; ``/`` divides on the right by a
    coefficient.
    """
    tree = expr.parse(text)
    bindings = bindings or {}
    names = spec.derivation_names

    def number(q):
        return OreOperator.scalar(spec, q)

    def symbol(name, pos):
        if name in names:
            return OreOperator.derivation(spec, name)
        if name in spec.symbols:
            return OreOperator.scalar(spec, spec.gen(name))
        if name in bindings:
            return bindings[name]
        raise UnknownSymbol(name, pos)

    def divide(a, b, pos):
        if not b.is_scalar():
            raise ParseError("divisor is not a coefficient", pos)
        if b.is_zero():
            raise DivisionByZero(f"division by zero at position {pos}")
        return a / b

    return expr.evaluate(tree, number, symbol, divide)
