"""Build the first terms of the d/dV cable rooted at X in Roberts' example.

Run with ``python demos/roberts_cable.py``.
"""

from gacable import roberts7
from gacable.exact_poly import format_poly

r = roberts7.make(2)
for label, h in zip(("H", "alpha H", "alpha^2 H"), r.orbit_H()):
    print(f"{label:10s} = {format_poly(h)}")

F1, F2, F3 = r.f_generators()
print("\nF2 =", format_poly(F2))
print(f"D(W(S, TU, STU)/X^3) = {r.f3_scale_check()} (YZ)^3 F2, hence F3 = W(S, TU, STU)/(12 X^3)")
print("E-embedding intertwines:", r.e_intertwining())

print()
for i in range(4):
    p = r.p_element(i)
    print(f"P_{i}: {len(p)} terms, weight {r.weights.bigrade(p)[0]}, top V part {format_poly(r.leading_V_term(p))}")
