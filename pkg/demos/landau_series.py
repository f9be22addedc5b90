"""Landau's third-order operator: two factorizations, two normal series.

L factors as (dx+1)(dx+1)(dx+x*dy) and also as a second-order operator
times (dx+1).  The two factorizations give chains of left ideals with
different lengths.  Refining them against each other and comparing gauges
shows they agree up to gauge, which is all a gauge computation can certify.

Run:  python3 demos/landau_series.py
"""

from orejordan import (TermOrder, analyze, buchberger, chain_from_right_factorization,
                       compare_quotient_gauges, ideal_intersect, load_spec, parse_operator,
                       refine, verify_factorization)

spec = load_spec("derivations = dx, dy\nvariables = x, y")
order = TermOrder.grlex(spec, "dx > dy")


def op(text):
    return parse_operator(text, spec)


L = op("dx^3 + x*dx^2*dy + 2*dx^2 + 2*(x+1)*dx*dy + dx + (x+2)*dy")
short = [op("dx + 1"), op("dx + 1"), op("dx + x*dy")]
long_ = [op("dx^2 + x*dx*dy + dx + (x+2)*dy"), op("dx + 1")]

print("L =", L.render(order))
print("three first-order factors:", verify_factorization(L, short))
print("second order times first order:", verify_factorization(L, long_))

# The series from the three-factor product: each step drops the typical
# dimension by one.
G = chain_from_right_factorization(short, order)
report = analyze(G)
print("\nseries from the three-factor product")
for basis, gauge in zip(G.ideals, report.step_gauges):
    print(f"  {str(gauge):8}  {'; '.join(f.render(order) for f in basis.elements)}")
print("  quotient gauges:", [str(q) for q in report.quotient_gauges])
print("  ", report.verdict())

# The other factorization has only two steps.  Its middle group is the
# solution set of dx+1; intersecting with dx+x*dy produces a non-principal
# ideal that sits between.
H1 = ideal_intersect([op("dx + 1")], [op("dx + x*dy")], order)
print("\n<dx+1> meet <dx+x*dy> is generated by")
for f in H1.elements:
    print("  ", f.render(order))

H = chain_from_right_factorization(long_, order)
ref = refine(G, H)
print("\nrefined second series (essential steps)")
for basis, gauge in zip(ref.essential_h.ideals, analyze(ref.essential_h).step_gauges):
    print(f"  {str(gauge):8}  {len(basis.elements)} generator(s)")
print("same ideal as the intersection above:", ref.essential_h.ideals[1] == buchberger(H1, order))
print("\ncompare quotient gauges:", compare_quotient_gauges(G, ref.essential_h).verdict)
print("compare without refining:", compare_quotient_gauges(G, H).verdict)
