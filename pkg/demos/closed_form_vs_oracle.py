"""How tight is the sign-group closed form?

For a handful of named and random three-qubit states this prints the
closed-form P_max next to the alternating-contraction maximum and the
polished grid search.  The closed form matches on product states and
overshoots on GHZ-like states; complex product states can even beat it.
"""

import numpy as np

from groverian import StateVector, closed_form_pmax, grid_pmax, make_named, numeric_pmax


def row(label, s):
    cf = closed_form_pmax(s).p_max
    num = numeric_pmax(s).p_max
    grid = grid_pmax(s).p_max
    cplx = numeric_pmax(s, domain="complex").p_max
    print(f"{label:<12} closed {cf:.6f}  numeric {num:.6f}  grid {grid:.6f}  complex {cplx:.6f}  gap {cf - num:+.6f}")


def main():
    for name in ("uniform", "ghz", "w"):
        row(name, make_named(name, 3))

    rng = np.random.default_rng(2024)
    for i in range(5):
        a = rng.standard_normal(8)
        row(f"random {i}", StateVector(3, a / np.linalg.norm(a)))


if __name__ == "__main__":
    main()
