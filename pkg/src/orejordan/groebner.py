"""Left Groebner bases in D and the left-ideal operations built on them.

Completion is Buchberger's algorithm with the normal selection strategy
(smallest lcm of leading indices first) and Buchberger's chain criterion.
The coprime criterion is not used: it fails once coefficients are not
constants (``dx`` and ``dy + x`` have coprime heads but generate D).  S-polynomials of monic ``f, g``
with leading indices ``a, b`` are ``d^(l-a) f - d^(l-b) g`` with
``l = lcm(a, b)``; left multiplication by a monomial keeps the leading
coefficient, so the leading terms cancel exactly.
"""

import heapq
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field

from .errors import ResourceExceeded, SpecMismatch, ZeroOperator
from .ore import (OreOperator, TermOrder, divides, lcm_index, leading_index,
                  leading_term, mul_monomial, op_add, right_reduce, sub_index)

DEFAULT_PAIR_BUDGET = 100_000
_pair_budget = ContextVar("pair_budget", default=DEFAULT_PAIR_BUDGET)


@contextmanager
def budget_limit(n):
    """Cap the number of S-pairs any completion may process inside the block."""
    token = _pair_budget.set(int(n))
    try:
        yield
    finally:
        _pair_budget.reset(token)


@dataclass(frozen=True)
class LeftIdeal:
    """Left ideal ``D f_1 + ... + D f_r``; the zero ideal is ``(0,)``."""

    generators: tuple
    spec: object = field(compare=False)

    def __init__(self, generators, spec=None):
        generators = tuple(generators)
        if not generators:
            raise ValueError("a left ideal needs at least one generator")
        spec = spec or generators[0].spec
        for g in generators:
            if g.spec != spec:
                raise SpecMismatch("generators belong to different field specs")
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "spec", spec)

    @classmethod
    def unit(cls, spec):
        return cls([OreOperator.scalar(spec, 1)])

    @classmethod
    def zero(cls, spec):
        return cls([OreOperator.zero(spec)])


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic left Groebner basis, sorted by increasing leading index."""

    elements: tuple
    order: TermOrder
    spec: object = field(compare=False)
    reduced: bool = True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_unit(self):
        return len(self.elements) == 1 and self.elements[0].is_scalar()

    def is_zero(self):
        return not self.elements

    def leading_indices(self):
        return [leading_index(g, self.order) for g in self.elements]

    def ideal(self):
        if not self.elements:
            return LeftIdeal.zero(self.spec)
        return LeftIdeal(self.elements, self.spec)


def generators_of(obj):
    """Generators of a LeftIdeal, GroebnerBasis, operator or sequence."""
    if isinstance(obj, LeftIdeal):
        return list(obj.generators)
    if isinstance(obj, GroebnerBasis):
        return list(obj.elements)
    if isinstance(obj, OreOperator):
        return [obj]
    return list(obj)


def _spec_of(obj, fallback=None):
    if isinstance(obj, (LeftIdeal, GroebnerBasis)):
        return obj.spec
    gens = generators_of(obj)
    return gens[0].spec if gens else fallback


def s_polynomial(f, g, order):
    """S-polynomial of two operators (made monic first)."""
    a, ca = leading_term(f, order)
    b, cb = leading_term(g, order)
    lcm = lcm_index(a, b)
    left = mul_monomial(sub_index(lcm, a), 1 / ca, f)
    right = mul_monomial(sub_index(lcm, b), 1 / cb, g)
    return op_add(left, -right)


class _Unit(Exception):
    pass


def buchberger(ideal, order, pair_budget=None):
    """Reduced monic left Groebner basis of ``ideal`` under ``order``.

    Raises ResourceExceeded once more than ``pair_budget`` S-pairs have been
    processed (default: the innermost ``budget_limit``, else 100000).
    """
    if pair_budget is None:
        pair_budget = _pair_budget.get()
    spec = _spec_of(ideal)
    gens = [g for g in generators_of(ideal) if not g.is_zero()]
    if not gens:
        return GroebnerBasis((), order, spec)
    for g in gens:
        if g.spec != spec:
            raise SpecMismatch("generators belong to different field specs")

    G, heads, pairs = [], [], []
    pending = set()
    counter = 0

    def add(h):
        nonlocal counter
        h = h.monic(order)
        if h.is_scalar():
            raise _Unit
        lm = leading_index(h, order)
        k = len(G)
        G.append(h)
        heads.append(lm)
        for i in range(k):
            lcm = lcm_index(heads[i], lm)
            heapq.heappush(pairs, (order.key(lcm), counter, i, k))
            pending.add((i, k))
            counter += 1

    def chain_skip(i, j):
        # some third head divides lcm(i, j) and both of its pairs are done
        lcm = lcm_index(heads[i], heads[j])
        for k, hk in enumerate(heads):
            if k in (i, j) or not divides(hk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    try:
        for f in gens:
            r, _ = right_reduce(f, G, order)
            if r:
                add(r)
        processed = 0
        while pairs:
            _, _, i, j = heapq.heappop(pairs)
            pending.discard((i, j))
            if chain_skip(i, j):
                continue
            processed += 1
            if processed > pair_budget:
                raise ResourceExceeded(
                    f"S-pair budget of {pair_budget} exhausted")
            r, _ = right_reduce(s_polynomial(G[i], G[j], order), G, order)
            if r:
                add(r)
    except _Unit:
        return GroebnerBasis((OreOperator.scalar(spec, 1),), order, spec)

    return GroebnerBasis(tuple(_interreduce(G, heads, order)), order, spec)


def _interreduce(G, heads, order):
    keep = []
    for i, lm in enumerate(heads):
        redundant = False
        for j, other in enumerate(heads):
            if j == i or not divides(other, lm):
                continue
            # equal leading indices: keep the first occurrence
            if other != lm or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(G[i])
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r, _ = right_reduce(g, others, order) if others else (g, None)
        out.append(r.monic(order))
    out.sort(key=lambda g: order.key(leading_index(g, order)))
    return out


def is_groebner_basis(elements, order):
    """Certificate check: every S-polynomial reduces to zero."""
    elements = list(elements)
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            r, _ = right_reduce(s_polynomial(elements[i], elements[j], order),
                                elements, order)
            if r:
                return False
    return True


def member(f, basis):
    """Ideal membership by reduction against a Groebner basis."""
    if f.is_zero():
        return True
    if basis.is_zero():
        return False
    r, _ = right_reduce(f, basis.elements, basis.order)
    return r.is_zero()


def ideal_sum(I, J, order, pair_budget=None):
    gi, gj = generators_of(I), generators_of(J)
    if _spec_of(I) != _spec_of(J):
        raise SpecMismatch("ideals belong to different field specs")
    return buchberger(LeftIdeal(gi + gj), order, pair_budget)


def ideal_intersect(I, J, order, pair_budget=None):
    """Intersection by elimination of a central tag variable ``w``.

    ``w I + (1 - w) J`` is completed under an order that eliminates ``w``;
    the ``w``-free basis elements generate ``I`` intersected with ``J``.
    """
    spec = _spec_of(I)
    if spec != _spec_of(J):
        raise SpecMismatch("ideals belong to different field specs")
    gi = [g for g in generators_of(I) if g]
    gj = [g for g in generators_of(J) if g]
    if not gi or not gj:
        return GroebnerBasis((), order, spec)
    tspec = spec.with_tag()
    m = spec.m

    def lift(f, w_power):
        return OreOperator(tspec, {k + (w_power,): v for k, v in f.terms.items()})

    gens = [lift(f, 1) for f in gi]
    gens += [op_add(lift(g, 0), -lift(g, 1)) for g in gj]
    elim = buchberger(LeftIdeal(gens, tspec), order.with_tag(m), pair_budget)
    free = [OreOperator(spec, {k[:m]: v for k, v in g.terms.items()})
            for g in elim.elements
            if all(k[m] == 0 for k in g.terms)]
    if not free:
        return GroebnerBasis((), order, spec)
    return buchberger(LeftIdeal(free, spec), order, pair_budget)


def principal_generator(basis):
    """The single element of a one-element reduced basis, else ``None``."""
    if len(basis.elements) == 1:
        return basis.elements[0]
    return None


def check_right_factor(I, R, order):
    """True iff every generator of ``I`` is a left multiple of ``R``."""
    if R.is_zero():
        raise ZeroOperator("right factor must be nonzero")
    for g in generators_of(I):
        r, _ = right_reduce(g, [R], order)
        if r:
            return False
    return True
