"""Finitely generated graded modules over a quotient ring, given by presentations.

Convention: ``M = coker(A)`` with ``A : R^cols -> R^rows``; rows are the
generators of M.  Entries are kept as normal forms modulo the defining ideal.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional

from .errors import (NotGraded, PrimeNotDeclared, RingMismatch,
                     StabilizationCapExceeded, TorsionInput, ZeroDual)
from .gb import (GroebnerBasis, Infinite, buchberger, hilbert_numerator,
                 ideal_times_free, kdim_quotient, kernel_vectors, saturate,
                 series_length, submodule_gb, vec_degree, vec_from_polys,
                 vec_to_polys)
from .kernel import PolyMatrix, direct_sum as matrix_direct_sum, kron, identity_matrix
from .ring import find_nonzerodivisor

LAYER_CAP = 16


class NotApplicableType:
    def __repr__(self):
        return "NotApplicable"


NotApplicable = NotApplicableType()


class PresentedModule:
    def __init__(self, ring, matrix, provenance=None):
        self.ring = ring
        self.matrix = matrix
        self.provenance = provenance
        self._gb = None

    @property
    def gen_degrees(self):
        return self.matrix.row_degrees

    @property
    def num_gens(self):
        return self.matrix.nrows

    @property
    def num_relations(self):
        return self.matrix.ncols

    def relation_vecs(self):
        vecs = (vec_from_polys(self.matrix.column(j)) for j in range(self.matrix.ncols))
        return [v for v in vecs if v]

    def relation_gb(self):
        """Groebner basis of ``im(A) + I*F`` in the ambient polynomial ring."""
        if self._gb is None:
            self._gb = submodule_gb(self.ring.ambient, self.gen_degrees,
                                    self.relation_vecs(), self.ring.ideal)
        return self._gb

    def is_zero(self):
        gb = self.relation_gb()
        one = self.ring.ambient.one_mono
        return all(any(p == i and m == one for p, m in gb.lead_terms)
                   for i in range(self.num_gens))

    def __repr__(self):
        tag = " [%s]" % self.provenance if self.provenance else ""
        return "PresentedModule(%d gens, %d relations%s)" % (
            self.num_gens, self.num_relations, tag)


# ---------------------------------------------------------------- construction

def _reduce_matrix(R, A):
    return A.map_entries(R.reduce)


def present(R, matrix, gen_degrees=None, provenance=None):
    """Module presented by ``matrix`` over R (list of lists or PolyMatrix)."""
    P = R.ambient
    if isinstance(matrix, PolyMatrix):
        A = matrix
        if gen_degrees is not None and tuple(gen_degrees) != A.row_degrees:
            A = PolyMatrix(P, A.entries, gen_degrees)
    else:
        rows = [[P(e) for e in row] for row in matrix]
        if gen_degrees is None:
            gen_degrees = infer_row_degrees(rows)
        ncols = len(rows[0]) if rows else 0
        A = PolyMatrix(P, rows, gen_degrees, None if rows else [0] * ncols)
    return PresentedModule(R, _reduce_matrix(R, A), provenance)


def infer_row_degrees(rows):
    """Row degrees (smallest one 0) making every entry homogeneous of
    degree ``col - row``.  Rows linked by no entry get degree 0."""
    n = len(rows)
    m = len(rows[0]) if rows else 0
    deg = [[None if e.is_zero() else e.weighted_degree() for e in row] for row in rows]
    for row in deg:
        for d in row:
            if d is not None and not isinstance(d, int):
                raise NotGraded("matrix entries must be homogeneous")
    rdeg = [None] * n
    cdeg = [None] * m
    for start in range(n):
        if rdeg[start] is not None:
            continue
        rdeg[start] = 0
        comp = [start]
        stack = [("r", start)]
        while stack:
            kind, i = stack.pop()
            if kind == "r":
                for j in range(m):
                    if deg[i][j] is None:
                        continue
                    c = rdeg[i] + deg[i][j]
                    if cdeg[j] is None:
                        cdeg[j] = c
                        stack.append(("c", j))
                    elif cdeg[j] != c:
                        raise NotGraded("no consistent grading for this matrix")
            else:
                for k in range(n):
                    if deg[k][i] is None:
                        continue
                    r = cdeg[i] - deg[k][i]
                    if rdeg[k] is None:
                        rdeg[k] = r
                        comp.append(k)
                        stack.append(("r", k))
                    elif rdeg[k] != r:
                        raise NotGraded("no consistent grading for this matrix")
        low = min(rdeg[k] for k in comp)
        for k in comp:
            rdeg[k] -= low
    return rdeg


def free_module(R, rank=1, degrees=None):
    degrees = list(degrees) if degrees is not None else [0] * rank
    A = PolyMatrix(R.ambient, [[] for _ in degrees], degrees, [], check=False)
    return PresentedModule(R, A, "free")


def zero_module(R):
    return PresentedModule(R, PolyMatrix(R.ambient, [], [], [], check=False), "zero")


def cyclic_module(R, gens):
    """``R/(gens)``."""
    P = R.ambient
    row = [R.reduce(P(g)) for g in gens]
    return present(R, [row], [0], provenance="cyclic")


# ---------------------------------------------------------------- generators / kernels

def minimal_generators(R, degrees, gb, modulo=()):
    """Minimal homogeneous generators of ``span(gb) / (span(modulo) + I*F)``.

    Candidates are the reduced Groebner basis elements of the span, scanned
    in increasing degree; each is kept if it is not already in the span of
    the earlier choices.
    """
    P = R.ambient
    base = buchberger(list(modulo), P, degrees, known=ideal_times_free(R.ideal, len(degrees)))
    order = base.order
    cands = [(vec_degree(P, degrees, g), order.key(order.lead(g)), g) for g in gb.elements]
    cands.sort(key=lambda t: (t[0], t[1]))
    cur = base
    kept = []
    for d, _, g in cands:
        if cur.contains(g):
            continue
        kept.append((base.reduce(g), d))
        cur = buchberger([g], P, degrees, known=cur.elements)
    return kept


def _matrix_from_vecs(R, vecs_degs, row_degrees):
    P = R.ambient
    cols = [vec_to_polys(P, v, len(row_degrees)) for v, _ in vecs_degs]
    ent = [[cols[j][i] for j in range(len(cols))] for i in range(len(row_degrees))]
    return PolyMatrix(P, ent, row_degrees, [d for _, d in vecs_degs], check=False)


def kernel_over_ring(R, A):
    """Matrix of minimal generators of ``ker(A)`` over R."""
    K = kernel_vectors(R.ambient, A.row_degrees,
                       [vec_from_polys(A.column(j)) for j in range(A.ncols)],
                       A.col_degrees, R.ideal)
    return _matrix_from_vecs(R, minimal_generators(R, A.col_degrees, K), A.col_degrees)


def relations_of(R, vecs, degrees, target_degrees, extra=()):
    """Minimal relations among ``vecs`` (given with their degrees) modulo
    ``span(extra) + I*F`` in the target free module."""
    s = len(vecs)
    extra = [e for e in extra if e]
    cols = list(vecs) + extra
    P = R.ambient
    src = list(degrees) + [vec_degree(P, target_degrees, e) for e in extra]
    K = kernel_vectors(P, target_degrees, cols, src, R.ideal)
    proj = []
    for g in K.elements:
        h = {(p, m): c for (p, m), c in g.items() if p < s}
        if h:
            proj.append(h)
    span = buchberger(proj, P, degrees, known=ideal_times_free(R.ideal, s))
    return _matrix_from_vecs(R, minimal_generators(R, degrees, span), degrees)


def present_image(R, K, provenance=None):
    """The submodule of ``R^rows`` generated by the columns of K, as a cokernel."""
    vecs = [vec_from_polys(K.column(j)) for j in range(K.ncols)]
    rel = relations_of(R, vecs, K.col_degrees, K.row_degrees)
    return PresentedModule(R, rel, provenance)


def ideal_module(R, gens):
    """An ideal of R viewed as a module, presented on minimal generators."""
    P = R.ambient
    polys = [R.reduce(P(g)) for g in gens]
    polys = [p for p in polys if not p.is_zero()]
    gb = submodule_gb(P, [0], [vec_from_polys([p]) for p in polys], R.ideal)
    mins = minimal_generators(R, [0], gb)
    K = _matrix_from_vecs(R, mins, [0])
    return present_image(R, K, provenance="ideal")


# ---------------------------------------------------------------- minimization

def minimize(M):
    """Prune unit entries and redundant relations; cokernel unchanged."""
    R = M.ring
    P = R.ambient
    A = _reduce_matrix(R, M.matrix)
    rows = [list(r) for r in A.entries]
    rdeg = list(A.row_degrees)
    cdeg = list(A.col_degrees)
    while True:
        piv = None
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                if e.terms and e.is_constant():
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        c = rows[i][j].constant_coeff()
        prow = rows[i]
        new_rows = []
        for k, row in enumerate(rows):
            if k == i:
                continue
            a = row[j]
            if a.terms:
                f = a.scale(1 / c)
                row = [R.reduce(row[l] - f * prow[l]) for l in range(len(row))]
            new_rows.append([row[l] for l in range(len(row)) if l != j])
        rows = new_rows
        del rdeg[i]
        del cdeg[j]
    if not rdeg:
        return PresentedModule(R, PolyMatrix(P, [], [], [], check=False), M.provenance)
    B = PolyMatrix(P, rows, rdeg, cdeg, check=False)
    vecs = [vec_from_polys(B.column(j)) for j in range(B.ncols)]
    vecs = [v for v in vecs if v]
    gb = submodule_gb(P, rdeg, vecs, R.ideal)
    mins = minimal_generators(R, rdeg, gb)
    return PresentedModule(R, _matrix_from_vecs(R, mins, rdeg), M.provenance)


def is_free(M):
    return minimize(M).num_relations == 0


# ---------------------------------------------------------------- constructions

def _same_ring(mods):
    R = mods[0].ring
    for m in mods[1:]:
        if m.ring is not R:
            raise RingMismatch("modules live over different rings")
    return R


def direct_sum(mods):
    mods = list(mods)
    R = _same_ring(mods)
    mats = [m.matrix for m in mods if m.num_gens]
    if not mats:
        return zero_module(R)
    return PresentedModule(R, matrix_direct_sum(mats), "dsum")


def tensor(M, N):
    """Presentation ``[A (x) Id | Id (x) B]``; generator (i, k) sits at ``i*gens(N) + k``."""
    R = _same_ring([M, N])
    A, B = M.matrix, N.matrix
    P = R.ambient
    if not M.num_gens or not N.num_gens:
        return zero_module(R)
    left = kron(A, identity_matrix(P, B.row_degrees))
    right = kron(identity_matrix(P, A.row_degrees), B)
    ent = [list(l) + list(r) for l, r in zip(left.entries, right.entries)]
    T = PolyMatrix(P, ent, left.row_degrees, list(left.col_degrees) + list(right.col_degrees),
                   check=False)
    return PresentedModule(R, _reduce_matrix(R, T), "tensor")


@dataclass
class DualResult:
    module: PresentedModule
    lifts: PolyMatrix  # rows are the generator lifts phi_j in F0*


def dual(M):
    """``Hom_R(M, R)`` with explicit lifts of its generators to ``F0*``."""
    R = M.ring
    P = R.ambient
    A = M.matrix
    if not M.num_gens:
        return DualResult(zero_module(R), PolyMatrix(P, [], [], [], check=False))
    K = kernel_over_ring(R, A.transpose())
    D = present_image(R, K, provenance="dual")
    lifts = K.transpose()
    return DualResult(D, lifts)


def transpose(M):
    """``Tr M = coker(A^T)`` for a minimal presentation A."""
    M = minimize(M)
    R = M.ring
    if not M.num_relations:
        return zero_module(R)
    return minimize(PresentedModule(R, M.matrix.transpose(), "transpose"))


def syzygy_module(M, k=1):
    from .homology import resolve

    if k < 1:
        raise ValueError("syzygy index must be positive")
    res = resolve(M, k + 1)
    d_next = res.differential(k + 1)
    return minimize(PresentedModule(M.ring, d_next, "syzygy%d" % k))


def pushforward(M):
    """``coker(Phi)`` where the rows of Phi lift the generators of ``M*``."""
    R = M.ring
    M = minimize(M)
    _, tf = torsion_submodule(M)
    if not tf:
        raise TorsionInput("pushforward needs a torsion-free module")
    d = dual(M)
    if d.module.num_gens == 0:
        raise ZeroDual("the dual module is zero")
    Phi = d.lifts
    Phi = PolyMatrix(R.ambient, Phi.entries, Phi.row_degrees, M.gen_degrees, check=False)
    return minimize(PresentedModule(R, _reduce_matrix(R, Phi), "pushforward"))


def pushforward_sequence_check(M):
    """Verify ``0 -> M -> F* -> PF(M) -> 0``: the map ``mu`` is injective on M."""
    R = M.ring
    M = minimize(M)
    Phi = dual(M).lifts
    Phi = PolyMatrix(R.ambient, Phi.entries, Phi.row_degrees, M.gen_degrees, check=False)
    ker = kernel_over_ring(R, Phi)
    gb = M.relation_gb()
    return all(gb.contains(vec_from_polys(ker.column(j))) for j in range(ker.ncols))


def tr_omega_tr_omega(omega):
    """Transpose of the syzygy of the transpose of the syzygy of omega."""
    M = minimize(omega)
    M = syzygy_module(M, 1)
    M = transpose(M)
    M = syzygy_module(M, 1)
    M = transpose(M)
    M.provenance = "trotr"
    return M


# ---------------------------------------------------------------- torsion & length

def _submodule_presentation(M, vecs_degs, provenance):
    """Submodule of M generated by the given vectors of ``F0``."""
    R = M.ring
    vecs = [v for v, _ in vecs_degs]
    degs = [d for _, d in vecs_degs]
    rel = relations_of(R, vecs, degs, M.gen_degrees, extra=M.relation_vecs())
    return PresentedModule(R, rel, provenance)


def torsion_submodule(M, t=None):
    """Torsion part as ``((U : t^inf) + U) / U`` for a non-zerodivisor t of R.

    Returns ``(T, is_torsion_free)``.
    """
    R = M.ring
    if t is None:
        t = find_nonzerodivisor(R)
    if not M.num_gens:
        return zero_module(R), True
    U = M.relation_gb()
    S = saturate(U, t)
    if U.contains_basis(S):
        return zero_module(R), True
    gens = minimal_generators(R, M.gen_degrees, S, modulo=M.relation_vecs())
    return _submodule_presentation(M, gens, "torsion"), False


def torsion_free_quotient(M, t=None):
    R = M.ring
    if t is None:
        t = find_nonzerodivisor(R)
    if not M.num_gens:
        return zero_module(R)
    S = saturate(M.relation_gb(), t)
    mins = minimal_generators(R, M.gen_degrees, S)
    rel = _matrix_from_vecs(R, mins, M.gen_degrees)
    return minimize(PresentedModule(R, rel, "torsionfree"))


def is_torsion_free(M, t=None):
    return torsion_submodule(M, t)[1]


def length(M):
    """k-dimension of M, or Infinite."""
    if not M.num_gens:
        return 0
    return kdim_quotient(M.relation_gb())


def hilbert_length(M):
    """Length computed from the Hilbert series (independent of enumeration)."""
    if not M.num_gens:
        return 0
    return series_length(hilbert_numerator(M.relation_gb()), M.ring.weights)


# ---------------------------------------------------------------- ranks at primes

def _poly_nf(gb, p):
    P = gb.ring
    if p.is_zero():
        return p
    return vec_to_polys(P, gb.reduce(vec_from_polys([p])), 1)[0]


def _generic_rank(rows, pgb):
    """Rank over the fraction field of ``P/p`` by fraction-free elimination."""
    rows = [[_poly_nf(pgb, e) for e in row] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        a = pr[c]
        for i in range(rank + 1, len(rows)):
            b = rows[i][c]
            if b.is_zero():
                continue
            rows[i] = [_poly_nf(pgb, a * rows[i][l] - b * pr[l]) for l in range(ncols)]
        rank += 1
    return rank


def _prime_power_gens(prime_gens, i, P):
    if i == 0:
        return [P.one()]
    out = []
    for combo in combinations_with_replacement(range(len(prime_gens)), i):
        g = P.one()
        for k in combo:
            g = g * prime_gens[k]
        out.append(g)
    return out


def _layer_rank(M, pr, i):
    """Generic rank over R/p of ``p^i M / p^{i+1} M``."""
    R = M.ring
    P = R.ambient
    pgens = list(pr.gens) if pr.gens else list(R.ideal_gens)
    degs = M.gen_degrees
    rel = M.relation_vecs()

    def layer_gens(k):
        out = []
        for g in _prime_power_gens(pgens, k, P):
            if g.is_zero():
                continue
            for e in range(len(degs)):
                out.append({(e, m): c for m, c in g.terms.items()})
        return out

    upper = submodule_gb(P, degs, rel + layer_gens(i + 1), R.ideal)
    cands = [v for v in layer_gens(i) if not upper.contains(v)]
    if not cands:
        return 0
    cdeg = [vec_degree(P, degs, v) for v in cands]
    Z = relations_of(R, cands, cdeg, degs, extra=rel + layer_gens(i + 1))
    return len(cands) - _generic_rank([list(r) for r in Z.entries], pr.gb)


def rank_at_prime(M, p):
    """Length of ``M_p`` over ``R_p`` for a declared minimal prime p."""
    R = M.ring
    idx = p if isinstance(p, int) else R.prime_index(p)
    if idx is None or idx >= len(R.minimal_primes):
        raise PrimeNotDeclared("prime %r is not declared for this ring" % (p,))
    pr = R.minimal_primes[idx]
    if not M.num_gens:
        return 0
    total = 0
    zeros = 0
    for i in range(LAYER_CAP):
        r = _layer_rank(M, pr, i)
        total += r
        zeros = zeros + 1 if r == 0 else 0
        if zeros >= 2 or (r == 0 and i > 0):
            return total
    raise StabilizationCapExceeded("layer series did not stabilise within %d steps" % LAYER_CAP)


@dataclass
class GrothendieckClassReport:
    lengths: list
    ring_lengths: list
    ratio: Optional[Fraction]
    is_zero_class: bool
    has_rank: object
    primes: list = field(default_factory=list)

    def to_json(self):
        return {
            "lengths": list(self.lengths),
            "ring_lengths": list(self.ring_lengths),
            "ratio": None if self.ratio is None else str(self.ratio),
            "is_zero_class": self.is_zero_class,
            "has_rank": self.has_rank if isinstance(self.has_rank, bool) else "NotApplicable",
        }


def class_in_reduced_grothendieck(M):
    """Zero-class test: localized lengths proportional to those of R."""
    R = M.ring
    if not R.minimal_primes:
        raise PrimeNotDeclared("ring has no declared minimal primes")
    free = free_module(R, 1)
    lm = [rank_at_prime(M, i) for i in range(len(R.minimal_primes))]
    lr = [rank_at_prime(free, i) for i in range(len(R.minimal_primes))]
    ratio = Fraction(lm[0], lr[0])
    zero = all(Fraction(a, b) == ratio for a, b in zip(lm, lr))
    has_rank = zero if R.reduced else NotApplicable
    return GrothendieckClassReport(lm, lr, ratio if zero else None, zero, has_rank,
                                   [repr(p) for p in R.minimal_primes])
