"""Normal series of solution groups, handled through their defining ideals.

A decreasing sequence of groups G_0 > G_1 > ... > G_r = {0} is stored as
the increasing sequence of left ideals I_0 <= I_1 <= ... <= I_r = D that
define them.  The dictionary between the two languages:

    subgroup H <= G          <->  ideal(G) <= ideal(H)
    sum of subgroups H + K   <->  ideal(H) intersected with ideal(K)
    intersection H and K     <->  ideal(H) + ideal(K)

Quotient gauges follow additivity of the typical dimension: with tau the
type of G_i, a_tau(G_i / G_{i+1}) = a_tau(G_i) - a_tau(G_{i+1}), where a group
of smaller type contributes 0.  Nothing here constructs an isogeny; a
matching multiset of quotient gauges is only a necessary condition for the
pairwise isogeny that the Jordan-Hölder theorem asserts.
"""

from collections import Counter
from dataclasses import dataclass, field

from .errors import EmptyFactorList, InvalidChain, MismatchedTop
from .gauge import Gauge, analyze_ideal
from .groebner import (GroebnerBasis, buchberger, generators_of, ideal_intersect, ideal_sum,
                       member)
from .ore import OreOperator, op_mul


@dataclass(frozen=True)
class Chain:
    """Increasing ideals ``I_0 <= ... <= I_r`` (reduced bases); ``I_r`` is the unit ideal."""

    ideals: tuple
    order: object
    factors: tuple = field(default=None, compare=False)

    @property
    def spec(self):
        return self.ideals[0].spec

    def __len__(self):
        return len(self.ideals)


def _basis(obj, order, budget):
    if isinstance(obj, GroebnerBasis) and obj.order == order:
        return obj
    return buchberger(obj, order, budget)


def contains(big, small):
    """True iff the ideal with basis ``big`` contains every generator of ``small``."""
    return all(member(g, big) for g in generators_of(small))


def same_ideal(A, B):
    return contains(A, B) and contains(B, A)


def make_chain(ideals, order, pair_budget=None):
    """Chain from explicit ideals, listed from the whole group down to {0}."""
    ideals = list(ideals)
    if not ideals:
        raise InvalidChain("a chain needs at least one ideal")
    return Chain(tuple(_basis(I, order, pair_budget) for I in ideals), order)


def validate_chain(chain):
    """Raise InvalidChain unless ideals increase and end at the unit ideal."""
    if not chain.ideals:
        raise InvalidChain("empty chain")
    for k in range(len(chain.ideals) - 1):
        if not contains(chain.ideals[k + 1], chain.ideals[k]):
            raise InvalidChain(f"ideal {k} is not contained in ideal {k + 1}")
    if not chain.ideals[-1].is_unit():
        raise InvalidChain("the last ideal must be the unit ideal")


def chain_from_right_factorization(factors, order, pair_budget=None):
    """Chain of ``L = F_1 ... F_r``: ``I_i = D F_{i+1}...F_r``, then ``D``."""
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("no factors given")
    spec = factors[0].spec
    suffixes = []
    acc = OreOperator.scalar(spec, 1)
    for F in reversed(factors):
        acc = op_mul(F, acc)
        suffixes.append(acc)
    suffixes.reverse()
    ideals = [buchberger([S], order, pair_budget) for S in suffixes]
    ideals.append(buchberger([OreOperator.scalar(spec, 1)], order, pair_budget))
    chain = Chain(tuple(ideals), order, tuple(factors))
    validate_chain(chain)
    return chain


def group_sum(I, J, order, pair_budget=None):
    """Ideal of the sum of the solution groups of ``I`` and ``J``."""
    return ideal_intersect(I, J, order, pair_budget)


def group_intersect(I, J, order, pair_budget=None):
    """Ideal of the intersection of the solution groups of ``I`` and ``J``."""
    return ideal_sum(I, J, order, pair_budget)


@dataclass
class SeriesReport:
    step_gauges: list
    quotient_gauges: list
    tau: int
    strongly_tau_uniform: bool
    strictly_decreasing: bool
    omegas: list = field(default_factory=list)
    staircases: list = field(default_factory=list)
    annotations: list = field(default_factory=list)

    @property
    def consistent(self):
        """Chain meets the gauge conditions of a Jordan-Hölder series."""
        return (self.strongly_tau_uniform and self.strictly_decreasing
                and all(q.a_tau > 0 for q in self.quotient_gauges))

    def quotient_multiset(self):
        """Quotient gauges of full type ``tau`` as a Counter of pairs."""
        return Counter((q.tau, q.a_tau) for q in self.quotient_gauges if q.a_tau > 0)

    def verdict(self):
        if self.consistent:
            return "consistent with the Jordan-Hölder theorem (gauge conditions only)"
        return "does not meet the Jordan-Hölder gauge conditions"

    def to_dict(self):
        return {
            "tau": self.tau,
            "step_gauges": [list(g) for g in self.step_gauges],
            "quotient_gauges": [list(g) for g in self.quotient_gauges],
            "strongly_tau_uniform": self.strongly_tau_uniform,
            "strictly_decreasing": self.strictly_decreasing,
            "omegas": self.omegas,
            "staircases": self.staircases,
            "annotations": self.annotations,
            "verdict": self.verdict(),
        }


def _effective(g, tau):
    return g.a_tau if g.tau == tau else 0


def quotient_gauges(step_gauges):
    """Quotient gauge per step; a quotient of smaller type gets ``a_tau = 0``."""
    tau = step_gauges[0].tau
    return [Gauge(tau, _effective(a, tau) - _effective(b, tau))
            for a, b in zip(step_gauges, step_gauges[1:])]


def analyze(chain):
    """Per-step gauges, quotient gauges and the Jordan-Hölder flags."""
    validate_chain(chain)
    infos = [analyze_ideal(I, chain.order) for I in chain.ideals]
    steps = [info[3] for info in infos]
    tau = steps[0].tau
    quots = quotient_gauges(steps)
    body = steps[:-1]
    uniform = all(g.tau == tau for g in body)
    effective = [_effective(g, tau) for g in body]
    decreasing = all(a > b for a, b in zip(effective, effective[1:]))
    notes = []
    if not uniform:
        notes.append("not strongly-tau-uniform: some group in the chain has "
                      "smaller type than the first")
    if chain.spec.m == 2 and chain.factors is not None:
        # G_i / G_{i+1} is the solution group of F_{i+1}; only first-order
        # factors in two derivations get the almost-simplicity remark
        for i, (F, q) in enumerate(zip(chain.factors, quots)):
            if F.order == 1 and (q.tau, q.a_tau) == (1, 1):
                notes.append(
                    f"quotient {i} has gauge (1,1): any proper subgroup of smaller "
                    "typical dimension has type 0, so if strongly connected this "
                    "quotient is almost simple")
    return SeriesReport(
        step_gauges=steps,
        quotient_gauges=quots,
        tau=tau,
        strongly_tau_uniform=uniform,
        strictly_decreasing=decreasing,
        omegas=[info[2].expanded() for info in infos],
        staircases=[[list(e) for e in info[1].sorted()] for info in infos],
        annotations=notes,
    )


@dataclass
class Refinement:
    """Result of refining two chains against each other.

    ``full_*`` hold the refined chains with consecutive equal ideals
    collapsed; ``essential_*`` additionally merge every step whose quotient
    has smaller type into a neighbouring step of full type.  ``pairing_g[i]`` lists the
    sub-steps ``j`` of step ``i`` of the first chain whose quotient has full
    type (one entry when that step's quotient is almost simple).
    """

    full_g: Chain
    full_h: Chain
    essential_g: Chain
    essential_h: Chain
    pairing_g: list
    pairing_h: list
    subquotients_g: list
    subquotients_h: list

    @property
    def unique_pairing(self):
        return all(len(p) == 1 for p in self.pairing_g + self.pairing_h)

    def to_dict(self):
        return {
            "pairing_g": self.pairing_g,
            "pairing_h": self.pairing_h,
            "unique_pairing": self.unique_pairing,
            "subquotients_g": [[list(q) for q in row] for row in self.subquotients_g],
            "subquotients_h": [[list(q) for q in row] for row in self.subquotients_h],
        }


def _refine_side(I, J, order, budget):
    """``ideal(G_{i,j}) = I_{i+1} cap (J_j + I_i)`` for the first chain."""
    r, s = len(I) - 1, len(J) - 1
    grid = []
    for i in range(r):
        row = []
        for j in range(s):
            if j == 0:
                row.append(I[i])
            else:
                row.append(ideal_intersect(I[i + 1], ideal_sum(J[j], I[i], order, budget),
                                           order, budget))
        row.append(I[i + 1])
        grid.append(row)
    return grid


def _collapse(bases):
    out = [bases[0]]
    for B in bases[1:]:
        if not same_ideal(out[-1], B):
            out.append(B)
    return out


def _essential(bases, order, tau):
    """Keep the last ideal of each run of equal full-type dimension."""
    gauges = [analyze_ideal(B, order)[3] for B in bases]
    dims = [_effective(g, tau) for g in gauges[:-1]]
    kept = [B for k, B in enumerate(bases[:-1])
            if dims[k] > 0 and (k + 1 == len(dims) or dims[k + 1] != dims[k])]
    kept.append(bases[-1])
    return kept


def refine(chain_g, chain_h, pair_budget=None):
    """Refine two chains with the same top as in the Jordan-Hölder proof."""
    validate_chain(chain_g)
    validate_chain(chain_h)
    order = chain_g.order
    I, J = list(chain_g.ideals), list(chain_h.ideals)
    if not same_ideal(I[0], J[0]):
        raise MismatchedTop("the two chains start at different ideals")
    tau = analyze_ideal(I[0], order)[3].tau

    def side(A, B):
        grid = _refine_side(A, B, order, pair_budget)
        sub, pairing = [], []
        for row in grid:
            gs = [analyze_ideal(X, order)[3] for X in row]
            qs = quotient_gauges([Gauge(tau, _effective(g, tau)) for g in gs])
            sub.append(qs)
            pairing.append([j for j, q in enumerate(qs) if q.a_tau > 0])
        flat = [X for row in grid for X in row[:-1]] + [A[-1]]
        full = _collapse(flat)
        return full, _essential(full, order, tau), sub, pairing

    fg, eg, sg, pg = side(I, J)
    fh, eh, sh, ph = side(J, I)
    return Refinement(
        full_g=Chain(tuple(fg), order), full_h=Chain(tuple(fh), order),
        essential_g=Chain(tuple(eg), order), essential_h=Chain(tuple(eh), order),
        pairing_g=pg, pairing_h=ph, subquotients_g=sg, subquotients_h=sh)


@dataclass
class GaugeComparison:
    consistent: bool
    multiset_a: list
    multiset_b: list

    @property
    def verdict(self):
        return "CONSISTENT" if self.consistent else "INCONSISTENT"

    def to_dict(self):
        return {"verdict": self.verdict,
                "multiset_a": self.multiset_a,
                "multiset_b": self.multiset_b}


def compare_quotient_gauges(chain_a, chain_b):
    """Compare the multisets of full-type quotient gauges of two chains.

    Equal multisets are necessary, never sufficient, for the quotients to
    be isogenous in pairs.
    """
    ra = chain_a if isinstance(chain_a, SeriesReport) else analyze(chain_a)
    rb = chain_b if isinstance(chain_b, SeriesReport) else analyze(chain_b)
    ca, cb = ra.quotient_multiset(), rb.quotient_multiset()
    return GaugeComparison(ca == cb, sorted(map(list, ca.elements())),
                           sorted(map(list, cb.elements())))
