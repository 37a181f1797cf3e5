"""Reduce the balanced Delta-basis and evaluate the result on the sigma cable.

Run with ``python demos/psi_reduction.py``.
"""

from gacable import dim5, omega
from gacable.exact_poly import format_poly

om = omega.OmegaContext(40)
ctx = dim5.make()

for n in (4, 10, 16):
    prefix, corrections = om.reduction(n, 4)
    print(f"n = {n}: corrections {corrections}")
    for j, p in enumerate(prefix):
        killed = ctx.phi_sigma(p).is_zero()
        print(f"  psi_{n}^({j}) = {format_poly(p)}   phi_sigma -> 0: {killed}")

# the x6*x12 coefficient of psi_16^(2) is forced by the next vertex
p3 = om.reduce_basis(16, 4)[3]
p2 = om.down(p3)
print("\ncoefficient of x6*x12 in down(psi_16^(3)):", p2.coefficient(om.xx(6, 12).monomials()[0]))

print("\nmu of the raw and reduced cables at n = 4 (bound 12):")
print("  raw    ", om.mu(om.beta_cable(4, 12), 12))
print("  reduced", om.mu(om.reduce_basis(4, 12), 12))
