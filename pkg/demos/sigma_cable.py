"""Walk through the sigma cable of the five-variable example.

Run with ``python demos/sigma_cable.py``.
"""

from math import factorial

from gacable import dim5
from gacable.exact_poly import format_poly

ctx = dim5.make()

print("D: x -> a^3, y -> x, z -> y, v -> a^2, with kernel elements")
print("F =", format_poly(ctx.F))
print("G =", format_poly(ctx.G))
print("h =", format_poly(ctx.h))
print()

for n in range(9):
    s = ctx.sigma(n)
    print(f"{n}! sigma_{n} = {format_poly(s.scale(factorial(n)))}")
print()

# each sigma_n is killed by D and differentiates to its predecessor
for n in range(1, 13):
    assert ctx.D(ctx.sigma(n)).is_zero()
    assert ctx.partial_v(ctx.sigma(n)) == ctx.sigma(n - 1)
print("sigma_1..sigma_12: D sigma_n = 0 and d/dv sigma_n = sigma_(n-1)")

print("\n n  dim A_(2n+1,n)  floor(n/6)+1")
for n in range(0, 15):
    print(f"{n:2d}  {ctx.dim_A(2 * n + 1, n):>13}  {n // 6 + 1:>12}")
