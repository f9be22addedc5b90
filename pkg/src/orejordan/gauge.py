"""Staircases, Hilbert counts, dimension polynomials and gauges.

For a left ideal with reduced Groebner basis under a graded order, the
number of derivative coordinates of order <= s left free by the system is
the number of exponent vectors of total degree <= s that are not divisible
by any leading index.  That count is eventually a polynomial, written in
the binomial basis ``omega(s) = sum_i a_i C(s + i, i)``; its degree and top
coefficient form the gauge ``(tau, a_tau)``.  Only the gauge is a
birational invariant; the full polynomial depends on the presentation.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import comb, factorial

from .errors import WrongArity
from .groebner import GroebnerBasis, buchberger
from .ore import divides


@dataclass(frozen=True)
class Staircase:
    """Antichain of minimal leading exponents in N^m."""

    leading_exponents: frozenset
    m: int

    def __init__(self, exponents, m):
        exps = {tuple(e) for e in exponents}
        for e in exps:
            if len(e) != m:
                raise ValueError(f"exponent {e} does not have length {m}")
        minimal = frozenset(e for e in exps
                            if not any(o != e and divides(o, e) for o in exps))
        object.__setattr__(self, "leading_exponents", minimal)
        object.__setattr__(self, "m", m)

    def sorted(self):
        return sorted(self.leading_exponents)

    def lcm_degree(self):
        """Total degree of the lcm of all corners (0 for the empty staircase)."""
        if not self.leading_exponents:
            return 0
        return sum(max(e[i] for e in self.leading_exponents) for i in range(self.m))

    def covers(self, alpha):
        return any(divides(e, alpha) for e in self.leading_exponents)


@dataclass(frozen=True, order=True)
class Gauge:
    """``(tau, a_tau)``, compared lexicographically."""

    tau: int
    a_tau: int

    def __iter__(self):
        return iter((self.tau, self.a_tau))

    def __str__(self):
        return f"({self.tau},{self.a_tau})"


@dataclass(frozen=True)
class NumericalPolynomial:
    """``omega(s) = sum_i a_i C(s+i, i)``, equal to the count for ``s >= valid_from``."""

    binomial_coefficients: tuple
    valid_from: int = 0

    def __call__(self, s):
        return sum(a * comb(s + i, i) for i, a in enumerate(self.binomial_coefficients))

    @property
    def degree(self):
        nz = [i for i, a in enumerate(self.binomial_coefficients) if a]
        return nz[-1] if nz else -1

    def monomial_coefficients(self):
        """Coefficients ``c_0..c_m`` of ``omega`` in powers of ``s`` (Fractions)."""
        n = len(self.binomial_coefficients)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.binomial_coefficients):
            if not a:
                continue
            # C(s+i, i) = prod_{k=1..i} (s + k) / i!
            poly = [Fraction(1)]
            for k in range(1, i + 1):
                nxt = [Fraction(0)] * (len(poly) + 1)
                for d, c in enumerate(poly):
                    nxt[d] += c * k
                    nxt[d + 1] += c
                poly = nxt
            for d, c in enumerate(poly):
                out[d] += a * c / factorial(i)
        return out

    def expanded(self):
        """Human-readable monomial form, e.g. ``"2*s + 2"``."""
        coeffs = self.monomial_coefficients()
        parts = []
        for d in range(len(coeffs) - 1, -1, -1):
            c = coeffs[d]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if d == 0 else ("s" if d == 1 else f"s^{d}")
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def binomial_form(self):
        """Text such as ``"3*C(s+1,1) - 3"``, highest binomial first."""
        parts = [(a, "" if i == 0 else f"*C(s+{i},{i})")
                 for i, a in enumerate(self.binomial_coefficients) if a]
        if not parts:
            return "0"
        parts.reverse()
        out = ""
        for k, (a, tail) in enumerate(parts):
            sign = "-" if a < 0 else "+"
            body = f"{abs(a)}{tail}"
            out += (("-" if a < 0 else "") + body) if k == 0 else f" {sign} {body}"
        return out


def staircase_of(basis):
    """Minimal leading indices of a reduced basis (empty for the zero ideal)."""
    return Staircase(basis.leading_indices(), basis.spec.m)


def hilbert_count(E, s):
    """Number of exponent vectors of total degree <= s outside the stairs."""
    if s < 0:
        return 0
    m = E.m
    corners = list(E.leading_exponents)
    count = 0
    for alpha in cartesian(range(s + 1), repeat=m):
        if sum(alpha) > s:
            continue
        if not any(all(c <= a for c, a in zip(corner, alpha)) for corner in corners):
            count += 1
    return count


def _binomial_fit(values, s0, m):
    """Integer binomial-basis coefficients of the degree <= m polynomial
    through ``values[k] = omega(s0 + k)``, ``k = 0..m``."""
    # forward differences give omega(s) = sum_k D^k(s0) C(s - s0, k)
    diffs = []
    row = list(values)
    for _ in range(m + 1):
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    # expand in powers of s
    power = [Fraction(0)] * (m + 1)
    for k, dk in enumerate(diffs):
        if not dk:
            continue
        poly = [Fraction(1)]
        for j in range(k):
            # multiply by (s - s0 - j)
            shift = -(s0 + j)
            nxt = [Fraction(0)] * (len(poly) + 1)
            for d, c in enumerate(poly):
                nxt[d] += c * shift
                nxt[d + 1] += c
            poly = nxt
        for d, c in enumerate(poly):
            power[d] += dk * c / factorial(k)
    # peel off binomial basis elements from the top degree down
    coeffs = [0] * (m + 1)
    for i in range(m, -1, -1):
        top = power[i]
        if top == 0:
            continue
        a = top * factorial(i)
        if a.denominator != 1:
            raise ArithmeticError("count is not an integer-valued polynomial")
        a = int(a)
        coeffs[i] = a
        basis = [Fraction(1)]
        for k in range(1, i + 1):
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d] += c * k
                nxt[d + 1] += c
            basis = nxt
        for d, c in enumerate(basis):
            power[d] -= a * c / factorial(i)
    return tuple(coeffs)


def _valid_from(E, omega, start):
    """Smallest s such that omega agrees with the count from s onwards,
    given agreement is already known from ``start`` on."""
    s = start
    while s > 0 and hilbert_count(E, s - 1) == omega(s - 1):
        s -= 1
    return s


def dimension_polynomial(E):
    """Eventual polynomial of ``hilbert_count(E, .)`` in the binomial basis.

    Fits a degree <= m polynomial through m+1 consecutive counts starting at
    a candidate ``s0`` and checks it on the next m+2 counts, advancing ``s0``
    on a mismatch.  Candidates start at the lcm degree of the corners, from
    which the count is known to be polynomial; ``valid_from`` is then pushed
    down to the first point of agreement.
    """
    m = E.m
    s0 = E.lcm_degree()
    while True:
        values = [hilbert_count(E, s0 + k) for k in range(m + 1)]
        coeffs = _binomial_fit(values, s0, m)
        omega = NumericalPolynomial(coeffs)
        if all(hilbert_count(E, s) == omega(s)
               for s in range(s0 + m + 1, s0 + 2 * m + 3)):
            return NumericalPolynomial(coeffs, _valid_from(E, omega, s0))
        s0 += 1


def dimension_polynomial_m2(E):
    """Closed form for two derivations: ``d s + (3d - d^2)/2 + |W|``.

    With corners sorted so that ``i_1 < ... < i_t`` and ``j_1 > ... > j_t``,
    ``d = i_1 + j_t`` and ``W`` is the set of lattice points of the quarter
    plane ``(i_1, j_t) + N^2`` lying below the stairs.
    """
    if E.m != 2:
        raise WrongArity(f"closed form needs m = 2, got m = {E.m}")
    corners = sorted(E.leading_exponents)
    if not corners:
        # zero ideal: every coordinate is free, omega = C(s+2, 2)
        return NumericalPolynomial((0, 0, 1), 0)
    i1, jt = corners[0][0], corners[-1][1]
    d = i1 + jt
    imax = corners[-1][0]
    jmax = corners[0][1]
    W = sum(1 for i in range(i1, imax + 1) for j in range(jt, jmax + 1)
            if not E.covers((i, j)))
    constant = Fraction(3 * d - d * d, 2) + W
    # d*s + constant = d*C(s+1, 1) + (constant - d)
    a0 = constant - d
    omega = NumericalPolynomial((int(a0), d, 0))
    return NumericalPolynomial(omega.binomial_coefficients,
                               _valid_from(E, omega, E.lcm_degree()))


def gauge_of(omega):
    """``(tau, a_tau)`` of a dimension polynomial; ``(-1, 0)`` for omega = 0."""
    tau = omega.degree
    if tau < 0:
        return Gauge(-1, 0)
    return Gauge(tau, omega.binomial_coefficients[tau])


def gauge_of_ideal(ideal, order, pair_budget=None):
    """Groebner basis, staircase, dimension polynomial and gauge in one go."""
    return analyze_ideal(ideal, order, pair_budget)[3]


def analyze_ideal(ideal, order, pair_budget=None):
    """``(basis, staircase, omega, gauge)`` for a left ideal."""
    if isinstance(ideal, GroebnerBasis) and ideal.order == order:
        basis = ideal
    elif pair_budget is None:
        basis = buchberger(ideal, order)
    else:
        basis = buchberger(ideal, order, pair_budget)
    E = staircase_of(basis)
    omega = dimension_polynomial(E)
    return basis, E, omega, gauge_of(omega)
