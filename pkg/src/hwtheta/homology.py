"""Minimal graded free resolutions over R = P/I, Tor, Ext and periodicity."""
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .errors import NotInSpan, RankCapExceeded, RingMismatch
from .gb import (Infinite, buchberger, hilbert_numerator, ideal_times_free,
                 kernel_vectors, lift, series_length, submodule_gb,
                 vec_degree, vec_from_polys, vec_to_polys, _tpoly_add)
from .kernel import PolyMatrix, identity_matrix, kron
from .modops import (PresentedModule, _matrix_from_vecs, minimal_generators,
                     minimize, relations_of)

PERIOD_START_CAP = 6
DEFAULT_RANK_CAP = 256


@dataclass
class FreeResolution:
    """``... -> F_2 -d_2-> F_1 -d_1-> F_0 -> M -> 0`` with ``d_i`` stored at index i-1."""

    ring: object
    module: PresentedModule
    differentials: list
    forced_period: Optional[tuple] = None  # (start, period) once the tail is known

    @property
    def length(self):
        return len(self.differentials)

    def differential(self, i):
        if i < 1 or i > len(self.differentials):
            raise IndexError("differential d_%d not computed" % i)
        return self.differentials[i - 1]

    def degrees(self, i):
        if i == 0:
            return self.differentials[0].row_degrees
        return self.differential(i).col_degrees

    def rank(self, i):
        return len(self.degrees(i))

    def ranks(self):
        return [self.rank(i) for i in range(self.length + 1)]

    def is_complex(self):
        R = self.ring
        for a, b in zip(self.differentials, self.differentials[1:]):
            if a.ncols and b.ncols and a.nrows:
                prod = a * b
                if any(not R.reduce(e).is_zero() for row in prod.entries for e in row):
                    return False
        return True

    def is_minimal(self):
        return all(not (e.terms and e.is_constant())
                   for d in self.differentials for row in d.entries for e in row)


@dataclass
class BettiTable:
    """Graded Betti numbers ``beta_{i,j}``: count of degree-j generators of F_i."""

    entries: dict = field(default_factory=dict)
    ranks: list = field(default_factory=list)

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def to_json(self):
        return {"ranks": list(self.ranks),
                "graded": [[i, j, c] for (i, j), c in sorted(self.entries.items())]}

    def __str__(self):
        if not self.ranks:
            return "(empty)"
        degs = sorted({j for _, j in self.entries})
        lines = ["total: " + " ".join("%4d" % r for r in self.ranks)]
        for j in degs:
            lines.append("%5d: " % j + " ".join(
                "%4s" % (self.entries.get((i, j), "") or ".") for i in range(len(self.ranks))))
        return "\n".join(lines)


@dataclass
class TorLengthWindow:
    first: int
    lengths: list

    def __getitem__(self, i):
        return self.lengths[i - self.first]

    def indices(self):
        return list(range(self.first, self.first + len(self.lengths)))

    def all_finite(self):
        return all(v is not Infinite for v in self.lengths)

    def to_json(self):
        return {str(i): (None if v is Infinite else v) for i, v in zip(self.indices(), self.lengths)}


# ---------------------------------------------------------------- resolution steps

def _empty(P, row_degrees):
    return PolyMatrix(P, [[] for _ in row_degrees], row_degrees, [], check=False)


def _uniform_shift(a, b):
    """Integer s with ``b = a + s`` elementwise, or None."""
    if len(a) != len(b):
        return None
    if not a:
        return 0
    s = b[0] - a[0]
    return s if all(y - x == s for x, y in zip(a, b)) else None


def _generates(K, cand, R, degrees):
    """True iff the columns of ``cand`` generate the kernel with basis K."""
    vecs = [vec_from_polys(cand.column(j)) for j in range(cand.ncols)]
    if not all(K.contains(v) for v in vecs):
        return False
    span = submodule_gb(R.ambient, degrees, vecs, R.ideal)
    return span.contains_basis(K)


def cofactor_matrix(prod, f, base_gb):
    """H with ``prod = f H`` modulo the base ideal, or None."""
    P = prod.ring
    fvec = [vec_from_polys([f])]
    H = []
    try:
        for row in prod.entries:
            out = []
            for e in row:
                if e.is_zero():
                    out.append(P.zero())
                else:
                    out.append(lift(vec_from_polys([e]), fvec, P, (0,), base_gb)[0])
            H.append(out)
    except NotInSpan:
        return None
    return H


def invert_mod(H, degrees, base_gb):
    """Inverse of the square matrix H modulo the base ideal, or None."""
    n = len(H)
    if not n:
        return []
    P = H[0][0].ring
    hcols = [vec_from_polys([H[i][j] for i in range(n)]) for j in range(n)]
    cols = []
    try:
        for j in range(n):
            cols.append(lift({(j, P.one_mono): P.field.one}, hcols, P, tuple(degrees), base_gb))
    except NotInSpan:
        return None
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_mul_lists(a, b, reduce=None):
    P = (a[0][0] if a and a[0] else b[0][0]).ring
    out = []
    for i in range(len(a)):
        row = []
        for k in range(len(b[0]) if b else 0):
            acc = P.zero()
            for j in range(len(b)):
                if a[i][j].terms and b[j][k].terms:
                    acc = acc + a[i][j] * b[j][k]
            row.append(reduce(acc) if reduce else acc)
        out.append(row)
    return out


def _hypersurface_candidate(R, d_prev, d_cur):
    """``H^{-1} d_prev`` where ``d_prev d_cur = f H`` modulo the base ideal."""
    sp = R.split
    if sp is None or d_prev.nrows != d_cur.ncols or d_prev.ncols != d_cur.nrows:
        return None
    if not d_prev.nrows or not d_prev.ncols:
        return None
    H = cofactor_matrix(d_prev * d_cur, sp.f, sp.base_gb)
    if H is None:
        return None
    Hinv = invert_mod(H, d_prev.row_degrees, sp.base_gb)
    if Hinv is None:
        return None
    rows = mat_mul_lists(Hinv, [list(r) for r in d_prev.entries], R.reduce)
    try:
        return PolyMatrix(R.ambient, rows, d_cur.col_degrees, None)
    except Exception:
        return None


def _periodic_candidates(R, ds):
    """Candidate next differentials built from earlier ones."""
    dk = ds[-1]
    target = dk.col_degrees
    s = _uniform_shift(dk.row_degrees, target)
    if s is not None and dk.nrows == dk.ncols:
        yield ("1", dk.shift(s))
    if len(ds) >= 2:
        dp = ds[-2]
        s = _uniform_shift(dp.row_degrees, target)
        if s is not None:
            yield ("2", dp.shift(s))
        h = _hypersurface_candidate(R, dp, dk)
        if h is not None:
            yield ("h", h)


def _next_differential(R, ds, tail_period):
    P = R.ambient
    dk = ds[-1]
    if tail_period is not None:
        prev = ds[-tail_period]
        s = _uniform_shift(prev.row_degrees, dk.col_degrees)
        return prev.shift(s), None
    if dk.ncols == 0:
        return _empty(P, []), None
    K = kernel_vectors(P, dk.row_degrees,
                       [vec_from_polys(dk.column(j)) for j in range(dk.ncols)],
                       dk.col_degrees, R.ideal)
    mins = minimal_generators(R, dk.col_degrees, K)
    count = len(mins)
    for tag, cand in _periodic_candidates(R, ds):
        if cand.ncols == count and _generates(K, cand, R, dk.col_degrees):
            return cand, tag
    return _matrix_from_vecs(R, mins, dk.col_degrees), None


def _extend(res, n, rank_cap):
    R = res.ring
    ds = res.differentials
    while len(ds) < n:
        period = res.forced_period[1] if res.forced_period else None
        nxt, tag = _next_differential(R, ds, period)
        if tag is not None and res.forced_period is None:
            if tag == "1":
                res.forced_period = (len(ds), 1)
            elif tag == "2":
                res.forced_period = (len(ds) - 1, 2)
        if nxt.ncols > rank_cap:
            raise RankCapExceeded("free module rank %d exceeds cap %d" % (nxt.ncols, rank_cap))
        ds.append(nxt)
    return res


_cache = {}
_cache_lock = threading.Lock()


def _module_key(M):
    A = M.matrix
    return (id(M.ring), A.entries, A.row_degrees, A.col_degrees)


def clear_cache():
    with _cache_lock:
        _cache.clear()


def resolve(M, n, rank_cap=DEFAULT_RANK_CAP, use_cache=True):
    """Minimal graded free resolution of M through ``d_n``."""
    key = _module_key(M)
    with _cache_lock:
        res = _cache.get(key) if use_cache else None
    if res is None:
        M0 = minimize(M)
        d1 = M0.matrix
        res = FreeResolution(M.ring, M0, [d1])
    with _cache_lock:
        if len(res.differentials) < n:
            _extend(res, n, rank_cap)
        if use_cache:
            _cache[key] = res
    out = FreeResolution(res.ring, res.module, list(res.differentials[:n]), res.forced_period)
    return out


def betti(res):
    entries = Counter()
    for i in range(res.length + 1):
        for d in res.degrees(i):
            entries[(i, d)] += 1
    return BettiTable(dict(entries), res.ranks())


# ---------------------------------------------------------------- periodicity

def _matches(a, b):
    if not _nonzero(a) and not _nonzero(b):
        return True
    if a.shape != b.shape or a.entries != b.entries:
        return False
    return (_uniform_shift(a.row_degrees, b.row_degrees) is not None
            and _uniform_shift(a.col_degrees, b.col_degrees) is not None)


def _nonzero(m):
    return any(e.terms for row in m.entries for e in row)


def detect_periodicity(res):
    """Smallest ``(start, period)`` with ``d_{i+period} = d_i`` for every
    computed ``i >= start``, start at most 6 and period 1 or 2."""
    n = res.length
    for start in range(1, min(PERIOD_START_CAP, n) + 1):
        for period in (1, 2):
            idx = list(range(start, n - period + 1))
            if len(idx) < 1:
                continue
            if all(_matches(res.differential(i), res.differential(i + period)) for i in idx):
                return (start, period)
    return None


# ---------------------------------------------------------------- homology

def _homology_parts(R, mid_deg, out_deg, a_in, a_out, rel_mid, rel_out):
    """Groebner bases ``(Z, B)`` with ``B <= Z`` in the middle free module:
    Z = kernel of ``a_out`` modulo ``rel_out``, B = image of ``a_in`` plus ``rel_mid``."""
    P = R.ambient
    m = len(mid_deg)
    rel_out = [v for v in rel_out if v]
    if out_deg:
        cols = list(a_out) + list(rel_out)
        src = list(mid_deg) + [vec_degree(P, out_deg, v) for v in rel_out]
        K = kernel_vectors(P, out_deg, cols, src, R.ideal)
        proj = []
        for g in K.elements:
            h = {(p, mm): c for (p, mm), c in g.items() if p < m}
            if h:
                proj.append(h)
        Z = buchberger(proj, P, mid_deg, known=ideal_times_free(R.ideal, m))
    else:
        Z = None
    B = submodule_gb(P, mid_deg, [v for v in list(a_in) + list(rel_mid) if v], R.ideal)
    return Z, B


def _subquotient_length(R, Z, B, mid_deg):
    num_b = hilbert_numerator(B)
    if Z is None:
        num_z = {}
    else:
        num_z = hilbert_numerator(Z)
    diff = _tpoly_add(num_b, {k: -v for k, v in num_z.items()})
    return series_length(diff, R.weights)


def _subquotient_module(R, Z, B, mid_deg, modulo, provenance):
    P = R.ambient
    if Z is None:
        Z = buchberger([{(i, P.one_mono): P.field.one} for i in range(len(mid_deg))],
                       P, mid_deg)
    gens = minimal_generators(R, mid_deg, Z, modulo=modulo)
    if not gens:
        return PresentedModule(R, PolyMatrix(P, [], [], [], check=False), provenance)
    vecs = [v for v, _ in gens]
    degs = [d for _, d in gens]
    rel = relations_of(R, vecs, degs, mid_deg, extra=modulo)
    return minimize(PresentedModule(R, rel, provenance))


def _cols(A):
    return [vec_from_polys(A.column(j)) for j in range(A.ncols)]


def _tor_complex(res, N, i):
    """Pieces of ``F_{i+1} (x) N -> F_i (x) N -> F_{i-1} (x) N``."""
    P = res.ring.ambient
    B = N.matrix
    nd = B.row_degrees
    idn = identity_matrix(P, nd)
    fi = res.degrees(i)
    mid_deg = [a + b for a in fi for b in nd]
    a_in = _cols(kron(res.differential(i + 1), idn))
    rel_mid = _cols(kron(identity_matrix(P, fi), B)) if fi else []
    if i >= 1:
        fo = res.degrees(i - 1)
        out_deg = [a + b for a in fo for b in nd]
        a_out = _cols(kron(res.differential(i), idn))
        rel_out = _cols(kron(identity_matrix(P, fo), B)) if fo else []
    else:
        out_deg, a_out, rel_out = [], [], []
    return mid_deg, out_deg, a_in, a_out, rel_mid, rel_out


def _check_same_ring(M, N):
    if M.ring is not N.ring:
        raise RingMismatch("modules live over different rings")


def tor(M, N, i, res=None):
    """``Tor_i^R(M, N)`` as a presented module."""
    _check_same_ring(M, N)
    R = M.ring
    if res is None:
        res = resolve(M, i + 1)
    if not N.num_gens or not res.degrees(i):
        return PresentedModule(R, PolyMatrix(R.ambient, [], [], [], check=False), "tor")
    mid, out, a_in, a_out, rel_mid, rel_out = _tor_complex(res, N, i)
    Z, B = _homology_parts(R, mid, out, a_in, a_out, rel_mid, rel_out)
    return _subquotient_module(R, Z, B, mid, list(a_in) + list(rel_mid), "tor%d" % i)


def tor_length(M, N, i, res=None):
    _check_same_ring(M, N)
    R = M.ring
    if res is None:
        res = resolve(M, i + 1)
    if not N.num_gens or not res.degrees(i):
        return 0
    mid, out, a_in, a_out, rel_mid, rel_out = _tor_complex(res, N, i)
    Z, B = _homology_parts(R, mid, out, a_in, a_out, rel_mid, rel_out)
    return _subquotient_length(R, Z, B, mid)


def tor_lengths(M, N, max_index, first=1, res=None):
    """Lengths of ``Tor_i(M, N)`` for ``first <= i <= max_index``.

    Indices whose pair of differentials repeats an earlier pair reuse that
    length (the homology is the same up to a degree shift).
    """
    _check_same_ring(M, N)
    if res is None:
        res = resolve(M, max_index + 1)
    seen = {}
    out = []
    for i in range(first, max_index + 1):
        key = None
        if i >= 1:
            a, b = res.differential(i), res.differential(i + 1)
            key = (a.entries, b.entries, a.shape, b.shape,
                   tuple(x - y for x, y in zip(a.col_degrees[1:], a.col_degrees)),
                   tuple(x - y for x, y in zip(a.row_degrees[1:], a.row_degrees)))
        if key is not None and key in seen:
            out.append(seen[key])
            continue
        v = tor_length(M, N, i, res)
        if key is not None:
            seen[key] = v
        out.append(v)
    return TorLengthWindow(first, out)


def ext_ring(M, i, res=None):
    """``Ext^i_R(M, R)`` from the dual complex ``F_{i-1}* -> F_i* -> F_{i+1}*``."""
    R = M.ring
    P = R.ambient
    if res is None:
        res = resolve(M, i + 1)
    fi = res.degrees(i)
    if not fi:
        return PresentedModule(R, PolyMatrix(P, [], [], [], check=False), "ext")
    mid = [-d for d in fi]
    a_in = _cols(res.differential(i).transpose()) if i >= 1 else []
    nxt = res.differential(i + 1)
    out = [-d for d in nxt.col_degrees]
    a_out = _cols(nxt.transpose()) if out else []
    Z, B = _homology_parts(R, mid, out, a_in, a_out, [], [])
    return _subquotient_module(R, Z, B, mid, a_in, "ext%d" % i)
