"""Matrix factorizations ``phi psi = psi phi = f Id`` over S = P/base."""
from dataclasses import dataclass

from .errors import LiftFailed, NotAFactorization, NotPeriodic, SizeMismatch
from .homology import (cofactor_matrix, detect_periodicity, invert_mod,
                       mat_mul_lists, resolve)
from .kernel import PolyMatrix
from .modops import PresentedModule, infer_row_degrees, is_free, minimize
from .ring import QuotientRing


@dataclass
class MatrixFactorization:
    phi: PolyMatrix
    psi: PolyMatrix
    f: object
    S: QuotientRing
    reduced: bool

    @property
    def size(self):
        return self.phi.nrows

    def to_json(self):
        return {"size": self.size, "reduced": self.reduced, "f": str(self.f),
                "phi": self.phi.to_lists(), "psi": self.psi.to_lists()}


def _as_matrix(P, m):
    if isinstance(m, PolyMatrix):
        return m
    rows = [[P(e) for e in row] for row in m]
    return PolyMatrix(P, rows, infer_row_degrees(rows))


def _check_product(S, a, b, f, label):
    n = a.nrows
    prod = mat_mul_lists([list(r) for r in a.entries], [list(r) for r in b.entries])
    for i in range(n):
        for j in range(n):
            e = prod[i][j] - (f if i == j else S.ambient.zero())
            if not S.reduce(e).is_zero():
                raise NotAFactorization("%s differs from f*Id at entry (%d,%d)" % (label, i, j),
                                        entry=(i, j))


def verify_mf(phi, psi, f, S):
    """Check both products modulo the ideal of S and build the factorization."""
    P = S.ambient
    phi = _as_matrix(P, phi)
    psi = _as_matrix(P, psi)
    f = P(f)
    if phi.nrows != phi.ncols or psi.nrows != psi.ncols:
        raise SizeMismatch("matrix factorizations need square matrices")
    if phi.nrows != psi.nrows:
        raise SizeMismatch("phi and psi have different sizes")
    _check_product(S, phi, psi, f, "phi*psi")
    _check_product(S, psi, phi, f, "psi*phi")
    reduced = all(e.is_zero() or e.constant_coeff() == 0
                  for m in (phi, psi) for row in m.entries for e in row)
    return MatrixFactorization(phi, psi, f, S, reduced)


def ring_for(mf):
    """``R = S/(f)`` with the split recorded."""
    S = mf.S
    return QuotientRing(S.ambient, tuple(S.ideal_gens) + (mf.f,),
                        split=(S.ideal_gens, mf.f))


def mf_cokernel(mf, R=None):
    """``coker(phi)`` over ``R = S/(f)``."""
    if R is None:
        R = ring_for(mf)
    sp = R.split
    if sp is None or not sp.base_gb.same_module(mf.S.ideal) or sp.f != mf.f:
        raise NotPeriodic("ring does not carry the split of this factorization")
    M = PresentedModule(R, mf.phi.map_entries(R.reduce), "mf")
    return minimize(M)


def determinant(m):
    """Laplace expansion; fine for the small sizes used here."""
    P = m.ring
    rows = [list(r) for r in m.entries]

    def det(rows):
        n = len(rows)
        if n == 0:
            return P.one()
        if n == 1:
            return rows[0][0]
        acc = P.zero()
        for j in range(n):
            e = rows[0][j]
            if e.is_zero():
                continue
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = e * det(minor)
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    return det(rows)


def det_identity_holds(mf):
    lhs = determinant(mf.phi) * determinant(mf.psi)
    return mf.S.reduce(lhs - mf.f ** mf.size).is_zero()


def mf_from_resolution(M, depth=8):
    """Factorization read off the periodic tail of the resolution of M.

    Returns None for free modules; raises NotPeriodic when no tail is found.
    """
    R = M.ring
    if R.split is None:
        raise NotPeriodic("ring has no hypersurface split")
    if is_free(M):
        return None
    res = resolve(M, depth)
    per = detect_periodicity(res)
    if per is None:
        raise NotPeriodic("no exact periodicity in the resolution window")
    start = per[0]
    phi = res.differential(start)
    psi = res.differential(start + 1)
    if phi.nrows != phi.ncols:
        raise NotPeriodic("periodic differentials are not square")
    sp = R.split
    H = cofactor_matrix(phi * psi, sp.f, sp.base_gb)
    if H is None:
        raise LiftFailed("product of the lifted differentials is not a multiple of f")
    Hinv = invert_mod(H, phi.row_degrees, sp.base_gb)
    if Hinv is None:
        raise LiftFailed("cofactor matrix is not invertible")
    S = R.base_ring()
    new_psi = mat_mul_lists([list(r) for r in psi.entries], Hinv, S.reduce)
    psi2 = PolyMatrix(R.ambient, new_psi, psi.row_degrees, None)
    try:
        return verify_mf(phi, psi2, sp.f, S)
    except NotAFactorization as exc:
        raise LiftFailed(str(exc)) from exc
