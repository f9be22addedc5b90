"""Staircases, dimension polynomials and gauges.

The leading exponents of a Groebner basis cut a staircase out of N^m.  The
lattice points under it, counted up to total degree s, grow like a
polynomial in s; its degree and leading binomial coefficient form the gauge.

Run:  python3 demos/gauges.py
"""

from orejordan import (Staircase, TermOrder, analyze_ideal, dimension_polynomial,
                       dimension_polynomial_m2, hilbert_count, load_spec, parse_operator)

spec = load_spec("derivations = dx, dy\nvariables = x, y")
order = TermOrder.grlex(spec, "dx > dy")

examples = {
    "single third-order operator": ["dx^3 + x*dx^2*dy + dy"],
    "two generators": ["x*dx^2*dy + x^2*dx*dy^2 - dx^2 - dx*dy + x^2*dy^2 - dx - dy - x*dy",
                       "dx^3 - x^2*dx*dy^2 + 3*dx^2 + 2*x*dx*dy + 3*dx*dy - x^2*dy^2"
                       " + 2*dx + 2*x*dy + 3*dy"],
    "finite-dimensional (type 0)": ["dx + 1", "dy - 1"],
    "everything": ["1"],
}
for title, gens in examples.items():
    basis, E, omega, gauge = analyze_ideal([parse_operator(g, spec) for g in gens], order)
    print(f"{title}:")
    print(f"  staircase {E.sorted()}")
    print(f"  omega(s) = {omega.expanded()} = {omega.binomial_form()}  (s >= {omega.valid_from})")
    print(f"  gauge {gauge}")

# A staircase can be given directly.  With two derivations the polynomial
# also has a closed form in terms of the outer corners and the pocket W of
# points trapped between them.
E = Staircase([(1, 3), (2, 1), (4, 0)], 2)
general, closed = dimension_polynomial(E), dimension_polynomial_m2(E)
print("\nstaircase", E.sorted())
print("  counts   ", [hilbert_count(E, s) for s in range(8)])
print("  fitted   ", [general(s) for s in range(8)], "valid from", general.valid_from)
print("  closed   ", [closed(s) for s in range(8)])

# Ordinary operators: d^n has a finite solution space of dimension n.
line = load_spec("derivations = d\nvariables = x:d")
for n in (1, 3, 5):
    *_, gauge = analyze_ideal([parse_operator(f"d^{n}", line)], TermOrder.grlex(line))
    print(f"d^{n}: gauge {gauge}")
