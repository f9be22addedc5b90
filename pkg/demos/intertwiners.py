"""Operators that carry solutions of one heat-type equation to another.

For a nonzero solution lam of the backward heat equation, (1/lam)*dx maps
solutions of H_lam = dt - dx^2 + 2*(dx lam / lam)*dx onto solutions of the
heat equation.  ``verify_intertwine(A, P, B)`` checks A*P lies in D*B, that
is A*P = Q*B for some operator Q, which is printed as well.

Run:  python3 demos/intertwiners.py
"""

from orejordan import (TermOrder, load_spec, op_mul, parse_operator, right_reduce,
                       verify_intertwine)

plain = load_spec("derivations = dx, dt\nvariables = x, t")
plain_order = TermOrder.grlex(plain, "dx > dt")

# lam = x
A = parse_operator("dt - dx^2", plain)
P = parse_operator("1/x*dx", plain)
B = parse_operator("dt - dx^2 + 2/x*dx", plain)
print("lam = x:", verify_intertwine(A, P, B, plain_order))
remainder, (Q,) = right_reduce(op_mul(A, P), [B], plain_order)
print("  quotient Q =", Q.render(plain_order), "  remainder =", remainder.render(plain_order))

# lam = exp(c^2 t) cos(c x).  The field is extended by T = tan(c x) and
# E = lam itself, with their derivatives written out.
tan = load_spec("""
derivations = dx, dt
variables = x, t
generators = T, E
constants = c
dx(T) = c*(1 + T^2)
dt(T) = 0
dx(E) = -c*T*E
dt(E) = c^2*E
""")
tan_order = TermOrder.grlex(tan, "dx > dt")
A = parse_operator("dt - dx^2", tan)
P = parse_operator("1/E*dx", tan)
B = parse_operator("dt - dx^2 - 2*c*T*dx", tan)
print("lam = exp(c^2 t) cos(c x):", verify_intertwine(A, P, B, tan_order))
print("  same P against the plain heat operator:",
      verify_intertwine(A, P, parse_operator("dt - dx^2", tan), tan_order))
