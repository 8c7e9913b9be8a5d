"""Torsion in M (x) M* for torsion-free modules over one-dimensional semigroup rings.

Run with ``python3 demos/torsion_in_tensor.py``.
"""
from hwtheta import modops as mo
from hwtheta.mfact import mf_cokernel, verify_mf
from hwtheta.ring import make_ring
from hwtheta.theta import hw_verdict


def show(label, v):
    print("%-28s free=%s torsion-free=%s torsion in M(x)M*=%s" % (
        label, v.is_free, v.is_torsion_free, v.tensor_dual_torsion))


def main():
    # Q[t^4, t^5, t^6] as a hypersurface over Q[x,y,z]/(xz - y^2)
    R3 = make_ring(["x", "y", "z"], [4, 5, 6], ideal_gens=["x*z-y^2", "x^3-z^2"],
                   minimal_primes=[[]], hypersurface_split=(["x*z-y^2"], "x^3-z^2"),
                   dim=1, reduced=True, name="R3")
    F = verify_mf([["-z", "x"], ["x^2", "-z"]], [["z", "x"], ["x^2", "z"]],
                  "x^3-z^2", R3.base_ring())
    print("matrix factorization reduced:", F.reduced)
    show("coker(phi) over R3", hw_verdict(mf_cokernel(F, R3)))
    I = mo.ideal_module(R3, ["x", "z"])
    J = mo.ideal_module(R3, ["x", "y"])
    print("I (x) J torsion-free:", mo.is_torsion_free(mo.tensor(I, J)))
    print("I (x) I torsion-free:", mo.is_torsion_free(mo.tensor(I, I)))

    # Q[t^3, t^4, t^5], not Gorenstein
    R4 = make_ring(["x", "y", "z"], [3, 4, 5],
                   ideal_gens=["y^2-x*z", "x^3-y*z", "x^2*y-z^2"],
                   minimal_primes=[[]], dim=1, reduced=True, name="R4")
    N = mo.present(R4, [["-y", "x", "z"], ["x^2", "-z", "-x*y"], ["-z", "y", "x^2"]])
    show("N over R4", hw_verdict(N))
    print("N (x) N torsion-free:", mo.is_torsion_free(mo.tensor(N, N)))
    omega = mo.ideal_module(R4, ["x", "y"])
    M = mo.tr_omega_tr_omega(omega)
    print("Tr Omega Tr Omega omega: free=%s torsion-free=%s, M (x) M torsion-free=%s" % (
        mo.is_free(M), mo.is_torsion_free(M), mo.is_torsion_free(mo.tensor(M, M))))


if __name__ == "__main__":
    main()
