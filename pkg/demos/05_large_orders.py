"""
Large orders: the recurrence and the asymptotic bounds
======================================================
"""

from chibar import bollobas_bounds, exact_polynomial, recurrence_trajectory
from chibar.asymptotics import BASE_2, NATURAL, q_factor, recurrence_step

# start from the exact value at n = 9 and add vertices one at a time
for p in (0.3, 0.5, 0.7):
    tr = recurrence_trajectory(9, exact_polynomial(9)(p), p, 100_000)
    for n in (50, 1000, 100_000):
        b = bollobas_bounds(n, p)
        print(f"p={p} n={n:6d}: lower {b.lower:9.2f}  recurrence {tr.value_at(n):9.2f}  upper {b.upper:9.2f}")

# with n p small the keep-probability can exceed 1, and the unclamped step goes down
print("q(3, 9, 0.3) =", q_factor(3.0, 9, 0.3))
print("step:", recurrence_step(3.0, 9, 0.3), "clamped:", recurrence_step(3.0, 9, 0.3, clamp=True))

# the bare log in the correction term is a convention
print(bollobas_bounds(1024, 0.5, NATURAL))
print(bollobas_bounds(1024, 0.5, BASE_2))
