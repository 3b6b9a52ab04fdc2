"""The cyclic matrix dictionary and its approximate multiplicativity.

Shows the exact product law of the generators, the norm identities both
matrix families satisfy, and how the multiplication defect of the
function-to-matrix map shrinks as the dimension grows.
"""

import math

import numpy as np

from lsequiv.circulant import (
    CirculantElement,
    cm,
    hom_defect,
    lambda_phase,
    mcheck_element,
    window_guard,
)
from lsequiv.rng import make_rng
from lsequiv.spectral import BasisIndex


def main():
    n = 16
    print(f"generator algebra at n = {n}")
    lhs = cm(n, 1, 2) @ cm(n, 2, 1)
    rhs = lambda_phase(n, 2 * 2) * cm(n, 3, 3)
    print(f"  product law max deviation   {np.max(np.abs(lhs - rhs)):.3e}")
    print(f"  |cm(n,1,2)|_F^2 - n         {np.linalg.norm(cm(n, 1, 2))**2 - n:.3e}")
    idx = BasisIndex("+", 1, 1)
    print(
        f"  |mcheck(+,1,1)|_F^2         {np.linalg.norm(mcheck_element(n, idx))**2:.6f}"
        f"  (n / 2 pi = {n / (2 * math.pi):.6f})"
    )

    print("\nmultiplication defect of normalized random elements")
    print(f"  {'n':>5} {'defect':>12} {'bound':>12}")
    for n in (16, 32, 64, 128, 256):
        window_guard(n, 2, 2)
        rng = make_rng(1, stream=n)
        coeffs = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        a = CirculantElement(n, 2, 2, coeffs / np.linalg.norm(coeffs))
        defect, bound = hom_defect(a, a, convention="symmetric")
        print(f"  {n:>5} {defect:>12.3e} {bound:>12.3e}")
    print("  the certified bound decays like 1/n at fixed window; the defect is faster")


if __name__ == "__main__":
    main()
