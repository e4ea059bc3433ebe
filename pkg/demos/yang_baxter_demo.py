"""Walk through the R-matrix and the Yang-Baxter identity.

Builds both kernels, prints the 4x4 weight structure, and checks the
8x8 identity exactly for the rational kernel and to machine precision
for the trigonometric one.
"""

import random

from gmpy2 import mpq

from bethekit import Kernel, build_r_matrix, kernel_f, kernel_g, yang_baxter_residual
from bethekit.sampling import distinct_complexes, distinct_rationals

print("== rational kernel weights ==")
kernel = Kernel.rational()
u = mpq(1, 2) - mpq(-3, 4)
print(f"argument difference u = {u}")
print(f"f(u) = {kernel_f(kernel, mpq(1, 2), mpq(-3, 4))}")
print(f"g(u) = {kernel_g(kernel, mpq(1, 2), mpq(-3, 4))}")
print("f = 1 + g holds:",
      kernel_f(kernel, mpq(1, 2), mpq(-3, 4))
      == 1 + kernel_g(kernel, mpq(1, 2), mpq(-3, 4)))

print()
print("== R-matrix at u = 1/2 - (-3/4) ==")
r = build_r_matrix(kernel, mpq(1, 2), mpq(-3, 4))
for row in range(4):
    print("  ", "  ".join(f"{str(r[row, col]):>5}" for col in range(4)))

print()
print("== Yang-Baxter residual, rational kernel, exact arithmetic ==")
rng = random.Random(7)
for trial in range(5):
    a, b, c = distinct_rationals(rng, 3)
    residual = yang_baxter_residual(kernel, a, b, c)
    print(f"  points ({a}, {b}, {c}): residual = {residual}")

print()
print("== Yang-Baxter residual, trigonometric kernel, floats ==")
trig = Kernel.trigonometric(0.9 + 0.1j)
for trial in range(5):
    a, b, c = distinct_complexes(rng, 3)
    residual = yang_baxter_residual(trig, a, b, c)
    print(f"  trial {trial}: residual = {float(residual):.3e}")
