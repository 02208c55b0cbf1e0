"""Print the sign-group expressions behind the closed form.

Each line is one radical sqrt[A_j^2 + B_j^2]; the closed form is the squared
sum of all radicals divided by 4^(n-1).  The script also checks numerically
that the groups rebuild the product-state overlap at random angles.
"""

import itertools

import numpy as np

from groverian import ProductState, StateVector, overlap, render_groups
from groverian.measure import _group_sums


def expansion(A, B, thetas):
    n = len(thetas)
    total = 0.0
    for j, tail in enumerate(itertools.product((1, -1), repeat=n - 1)):
        phi = thetas[0] + sum(e * t for e, t in zip(tail, thetas[1:]))
        total += A[j] * np.cos(phi) + B[j] * np.sin(phi)
    return total / 2 ** (n - 1)


def main():
    for n in (1, 2, 3):
        print(f"n = {n}")
        print(render_groups(n))
    print("n = 5, first two radicals")
    print("\n".join(render_groups(5).splitlines()[:2]))

    rng = np.random.default_rng(1)
    a = rng.standard_normal(32)
    s = StateVector(5, a / np.linalg.norm(a))
    thetas = rng.uniform(-np.pi / 2, np.pi / 2, 5)
    A, B = _group_sums(s.amplitudes.real, 5)
    print(f"\noverlap {overlap(s, ProductState(tuple(thetas))).real:+.12f}")
    print(f"groups  {expansion(A, B, thetas):+.12f}")


if __name__ == "__main__":
    main()
