"""Theta pairing over three lines through the origin, Q[x,y]/(xy(x-y)).

Run with ``python3 demos/three_lines.py``.
"""
from hwtheta import modops as mo
from hwtheta.homology import resolve, tor_lengths
from hwtheta.ring import make_ring
from hwtheta.theta import theta


def main():
    R = make_ring(["x", "y"], [1, 1], ideal_gens=["x*y*(x-y)"],
                  minimal_primes=[["x"], ["y"], ["x-y"]],
                  hypersurface_split=([], "x*y*(x-y)"), dim=1, reduced=True, name="R")
    M = mo.cyclic_module(R, ["x"])
    Ny = mo.cyclic_module(R, ["y"])
    N = mo.direct_sum([M, Ny, Ny])

    res = resolve(M, 4)
    print("resolution of R/(x):", [d.to_lists() for d in res.differentials])
    print("Tor lengths (M, M):  ", tor_lengths(M, M, 6).lengths)
    print("Tor lengths (M, Ny): ", tor_lengths(M, Ny, 6).lengths)
    for name, (a, b) in {"theta(M, M)": (M, M), "theta(M, Ny)": (M, Ny),
                         "theta(N, N)": (N, N), "theta(M, N)": (M, N)}.items():
        print("%-13s = %s" % (name, theta(a, b).value))

    # theta(M, N) vanishes although neither module has a rank
    for name, X in [("M", M), ("N", N)]:
        rep = mo.class_in_reduced_grothendieck(X)
        print("class of %s: lengths %s, zero class %s" % (name, rep.lengths, rep.is_zero_class))


if __name__ == "__main__":
    main()
