"""The heat operator and a first-order companion in (x, t).

Their solution groups add up to a group whose annihilator is a single
third-order operator with two right factorizations.  The two resulting
series have quotient gauges (1,1) and (1,2) in opposite orders, and the
refinement pairs them up one-to-one.

Run:  python3 demos/cartan_heat.py
"""

from collections import Counter

from orejordan import (TermOrder, analyze, chain_from_right_factorization,
                       compare_quotient_gauges, ideal_intersect, ideal_sum, load_spec,
                       parse_operator, principal_generator, refine)

spec = load_spec("derivations = dx, dt\nvariables = x, t")
order = TermOrder.grlex(spec, "dx > dt")


def op(text):
    return parse_operator(text, spec)


heat, companion = op("dx^2 - dt"), op("dx - x*dt")

meet = ideal_intersect([heat], [companion], order)
LC = principal_generator(meet)
print("intersection is principal:", LC is not None)
print("generator (monic):", LC.render(order))

# The sum of the two ideals is not everything: dt^2 survives.
S = ideal_sum([heat], [companion], order)
print("sum of the two ideals:", [f.render(order) for f in S.elements])

K1 = chain_from_right_factorization([op("x*dx - x^2*dt - 2"), heat], order)
K2 = chain_from_right_factorization([op("x*dx^2 - x*dt - 2*dx"), companion], order)
for name, chain in (("through the heat equation", K1), ("through the companion", K2)):
    report = analyze(chain)
    print(f"\nseries {name}")
    print("  step gauges:    ", [str(g) for g in report.step_gauges])
    print("  quotient gauges:", [str(q) for q in report.quotient_gauges])

ref = refine(K1, K2)
print("\nrefinement pairs each step with exactly one step:", ref.unique_pairing)
print("quotient multisets:",
      Counter(map(str, analyze(ref.essential_g).quotient_gauges)),
      Counter(map(str, analyze(ref.essential_h).quotient_gauges)))
print("verdict:", compare_quotient_gauges(K1, K2).verdict)
