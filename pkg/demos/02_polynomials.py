"""
Expected chromatic number as a polynomial in p
==============================================
"""

import numpy as np

from chibar import census_to_polynomial, exact_polynomial
from chibar.census import load_fixture

# the coefficients are exact integers
poly = census_to_polynomial(load_fixture(4))
print("n=4 coefficients, ascending powers of p:", poly.coeffs)

# shipped censuses for n = 8, 9 give the two largest polynomials
p9 = exact_polynomial(9)
print("n=9 has degree", p9.degree, "and largest coefficient", max(map(abs, p9.coeffs)))

# evaluation is exact rational Horner, so p close to 1 is safe
for p in np.linspace(0.1, 0.9, 5):
    row = [exact_polynomial(n)(p) for n in range(2, 10)]
    print(f"p={p:.1f}", " ".join(f"{v:.4f}" for v in row))
