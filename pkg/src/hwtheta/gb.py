"""Groebner bases for graded submodules of free modules over a weighted
polynomial ring.

A free module element is a plain dict ``{(pos, mono): coeff}``.  The module
order is position-over-term (position 0 is the most significant) refined by
the ring's weighted degree-reverse-lex order.  All input must be graded;
everything is processed degree by degree.
"""
import heapq
import itertools
from collections import defaultdict
from functools import lru_cache

from .errors import NotGraded, NotInSpan, SaturationCapExceeded
from .kernel import (NonHomogeneous, Poly, PolyMatrix, mono_div, mono_divides,
                     mono_lcm, mono_mul)

SATURATION_CAP = 64


class InfiniteType:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Infinite"

    def __str__(self):
        return "infinite"


Infinite = InfiniteType()


# ---------------------------------------------------------------- vectors

def vec_from_polys(polys, offset=0):
    v = {}
    for i, p in enumerate(polys):
        for m, c in p.terms.items():
            v[(i + offset, m)] = c
    return v


def vec_to_polys(ring, v, rank, offset=0):
    comps = [dict() for _ in range(rank)]
    for (pos, m), c in v.items():
        comps[pos - offset][m] = c
    return [Poly(ring, t) for t in comps]


def vec_scale_mono(v, mono, c):
    return {(p, mono_mul(m, mono)): a * c for (p, m), a in v.items()}


def vec_add_into(acc, v, c=1):
    for t, a in v.items():
        b = acc.get(t)
        val = a * c if b is None else b + a * c
        if val == 0:
            acc.pop(t, None)
        else:
            acc[t] = val
    return acc


def vec_mul_poly(v, p):
    out = {}
    for m2, c2 in p.terms.items():
        vec_add_into(out, vec_scale_mono(v, m2, c2))
    return out


def vec_degree(ring, degrees, v):
    """Degree of a homogeneous vector; raises NotGraded otherwise."""
    degs = {degrees[p] + ring.wdeg(m) for (p, m) in v}
    if len(degs) != 1:
        raise NotGraded("vector is not homogeneous")
    return degs.pop()


def vec_is_homogeneous(ring, degrees, v):
    return len({degrees[p] + ring.wdeg(m) for (p, m) in v}) <= 1


class _Order:
    """Term order helper bound to one polynomial ring."""

    def __init__(self, ring):
        self.ring = ring
        mk = ring.mono_key

        @lru_cache(maxsize=None)
        def key(t):
            return (-t[0], mk(t[1]))

        self.key = key

    def lead(self, v):
        return max(v, key=self.key)


_orders = {}


def order_for(ring):
    o = _orders.get(ring)
    if o is None:
        o = _orders[ring] = _Order(ring)
    return o


def _monic(v, lead_term):
    c = v[lead_term]
    if c == 1:
        return v
    return {t: a / c for t, a in v.items()}


def _reduce(v, basis, by_pos, key, full=True):
    """Reduce ``v`` by the monic vectors in ``basis``; ``by_pos`` indexes leads."""
    v = dict(v)
    out = {}
    while v:
        t = max(v, key=key)
        pos, m = t
        red = None
        for lm, idx in by_pos.get(pos, ()):
            if mono_divides(lm, m):
                red = idx
                break
        if red is None:
            out[t] = v.pop(t)
            if not full:
                out.update(v)
                break
            continue
        c = v[t]
        q = mono_div(m, lm)
        for (p2, m2), c2 in basis[red].items():
            tt = (p2, mono_mul(m2, q))
            val = v.get(tt)
            if val is None:
                v[tt] = -c * c2
            else:
                val = val - c * c2
                if val == 0:
                    del v[tt]
                else:
                    v[tt] = val
    return out


# ---------------------------------------------------------------- bases

class GroebnerBasis:
    """Reduced Groebner basis of a graded submodule of ``sum_i P(-degrees[i])``."""

    def __init__(self, ring, degrees, elements):
        self.ring = ring
        self.degrees = tuple(degrees)
        self.order = order_for(ring)
        self.elements = list(elements)
        self.lead_terms = [self.order.lead(g) for g in self.elements]
        self._by_pos = defaultdict(list)
        for i, (p, m) in enumerate(self.lead_terms):
            self._by_pos[p].append((m, i))

    @property
    def rank(self):
        return len(self.degrees)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def reduce(self, v):
        return _reduce(v, self.elements, self._by_pos, self.order.key)

    def contains(self, v):
        return not self.reduce(v)

    def contains_basis(self, other):
        return all(self.contains(g) for g in other.elements)

    def same_module(self, other):
        return self.contains_basis(other) and other.contains_basis(self)

    def is_zero(self):
        return not self.elements

    def element_degrees(self):
        return [vec_degree(self.ring, self.degrees, g) for g in self.elements]

    def leads_by_pos(self):
        out = defaultdict(list)
        for p, m in self.lead_terms:
            out[p].append(m)
        return out

    def s_pairs_reduce_to_zero(self):
        """Re-check the Buchberger criterion on every S-pair."""
        for i, j in itertools.combinations(range(len(self.elements)), 2):
            (pi, mi), (pj, mj) = self.lead_terms[i], self.lead_terms[j]
            if pi != pj:
                continue
            if self.reduce(_spoly(self.elements[i], mi, self.elements[j], mj)):
                return False
        return True

    def is_autoreduced(self):
        for i, (pi, mi) in enumerate(self.lead_terms):
            for j, (pj, mj) in enumerate(self.lead_terms):
                if i != j and pi == pj and mono_divides(mj, mi):
                    return False
        return True

    def as_columns(self):
        return [vec_to_polys(self.ring, g, self.rank) for g in self.elements]

    def __repr__(self):
        return "GroebnerBasis(rank=%d, %d elements)" % (self.rank, len(self.elements))


def _spoly(f, mf, g, mg):
    l = mono_lcm(mf, mg)
    s = vec_scale_mono(f, mono_div(l, mf), 1)
    return vec_add_into(s, vec_scale_mono(g, mono_div(l, mg), 1), -1)


def buchberger(gens, ring, degrees, known=None):
    """Reduced Groebner basis of the span of ``gens``.

    ``known`` may hold a list of vectors that already form a Groebner basis
    (for instance ``I*F`` for a Groebner basis of ``I``); pairs among them are
    skipped.
    """
    degrees = tuple(degrees)
    order = order_for(ring)
    key = order.key
    basis = []
    leads = []
    by_pos = defaultdict(list)
    pending = set()
    heap = []
    counter = itertools.count()

    def add(h):
        lt = order.lead(h)
        h = _monic(h, lt)
        idx = len(basis)
        basis.append(h)
        leads.append(lt)
        pos, m = lt
        for lm, j in by_pos[pos]:
            l = mono_lcm(lm, m)
            pending.add((j, idx))
            heapq.heappush(heap, (degrees[pos] + ring.wdeg(l), next(counter), "pair", (j, idx)))
        by_pos[pos].append((m, idx))

    for g in known or ():
        lt = order.lead(g)
        g = _monic(g, lt)
        basis.append(g)
        leads.append(lt)
        by_pos[lt[0]].append((lt[1], len(basis) - 1))

    for g in gens:
        if not g:
            continue
        if not vec_is_homogeneous(ring, degrees, g):
            raise NotGraded("generator is not homogeneous")
        heapq.heappush(heap, (vec_degree(ring, degrees, g), next(counter), "gen", g))

    while heap:
        _, _, kind, payload = heapq.heappop(heap)
        if kind == "pair":
            i, j = payload
            pending.discard((i, j))
            (pos, mi), (_, mj) = leads[i], leads[j]
            l = mono_lcm(mi, mj)
            if _chain_skip(i, j, l, pos, by_pos, leads, pending):
                continue
            h = _spoly(basis[i], mi, basis[j], mj)
        else:
            h = payload
        h = _reduce(h, basis, by_pos, key)
        if h:
            add(h)

    return GroebnerBasis(ring, degrees, _interreduce(basis, leads, key))


def _chain_skip(i, j, l, pos, by_pos, leads, pending):
    for lm, k in by_pos[pos]:
        if k == i or k == j:
            continue
        if not mono_divides(lm, l):
            continue
        a, b = (i, k) if i < k else (k, i)
        c, d = (j, k) if j < k else (k, j)
        if (a, b) not in pending and (c, d) not in pending:
            return True
    return False


def _interreduce(basis, leads, key):
    keep = []
    for i, (p, m) in enumerate(leads):
        dominated = False
        for j, (q, n) in enumerate(leads):
            if j != i and p == q and mono_divides(n, m) and (n != m or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    elems = [basis[i] for i in keep]
    out = []
    for idx, g in enumerate(elems):
        others = elems[:idx] + elems[idx + 1:]
        by_pos = defaultdict(list)
        for k, o in enumerate(others):
            p, m = max(o, key=key)
            by_pos[p].append((m, k))
        lt = max(g, key=key)
        tail = dict(g)
        c = tail.pop(lt)
        red = _reduce(tail, others, by_pos, key)
        red[lt] = c
        out.append(red)
    out.sort(key=lambda g: key(max(g, key=key)))
    return out


def normal_form(v, G):
    return G.reduce(v)


# ---------------------------------------------------------------- helpers on matrices

def columns_as_vecs(A):
    return [vec_from_polys(A.column(j)) for j in range(A.ncols)]


def ideal_times_free(ideal_gb, rank):
    """Generators ``g * e_i`` of ``I * F`` (already a Groebner basis)."""
    out = []
    if ideal_gb is None:
        return out
    for i in range(rank):
        for g in ideal_gb.elements:
            out.append({(i, m): c for (_, m), c in g.items()})
    return out


def ideal_gb(ring, polys):
    return buchberger([vec_from_polys([p]) for p in polys if not p.is_zero()], ring, (0,))


def submodule_gb(ring, degrees, vecs, ideal=None):
    """Groebner basis of ``span(vecs) + I*F``."""
    return buchberger(vecs, ring, degrees, known=ideal_times_free(ideal, len(degrees)))


def kernel_vectors(ring, target_degrees, cols, source_degrees, ideal=None):
    """Groebner basis (in the source) of ``{v : sum_j v_j col_j in I*F}``.

    Uses the elimination order on ``F_target (+) F_source``: target positions
    come first, so basis elements leading in the source block have no target
    part.
    """
    r = len(target_degrees)
    c = len(source_degrees)
    # map F_source -> F_target needs the source degrees to equal the column degrees
    degrees = tuple(target_degrees) + tuple(source_degrees)
    gens = []
    for j, col in enumerate(cols):
        v = dict(col)
        v[(r + j, ring.one_mono)] = ring.field.one
        gens.append(v)
    known = ideal_times_free(ideal, r)
    G = buchberger(gens, ring, degrees, known=known)
    out = []
    for g, (p, _) in zip(G.elements, G.lead_terms):
        if p >= r:
            out.append({(q - r, m): a for (q, m), a in g.items()})
    return GroebnerBasis(ring, source_degrees, out)


def syzygies(A, ideal=None):
    """Matrix whose columns generate the kernel of ``A`` (modulo ``I`` if given)."""
    ring = A.ring
    K = kernel_vectors(ring, A.row_degrees, columns_as_vecs(A), A.col_degrees, ideal)
    cols = []
    degs = []
    for g in K.elements:
        if ideal is not None:
            g = reduce_mod_ideal(g, ideal, len(A.col_degrees))
            if not g:
                continue
        cols.append(vec_to_polys(ring, g, A.ncols))
        degs.append(vec_degree(ring, A.col_degrees, g))
    ent = [[cols[j][i] for j in range(len(cols))] for i in range(A.ncols)]
    return PolyMatrix(ring, ent, A.col_degrees, degs, check=False)


def reduce_mod_ideal(v, ideal, rank):
    if ideal is None or not ideal.elements:
        return dict(v)
    order = order_for(ideal.ring)
    basis = ideal_times_free(ideal, rank)
    by_pos = defaultdict(list)
    for k, g in enumerate(basis):
        p, m = order.lead(g)
        by_pos[p].append((m, k))
    return _reduce(v, basis, by_pos, order.key)


def lift(v, gens, ring, degrees, ideal=None):
    """Coefficients ``a`` with ``v = sum a_k gens_k`` modulo ``I*F``.

    Raises NotInSpan when ``v`` is outside the span.
    """
    r = len(degrees)
    gdeg = []
    track = []
    for k, g in enumerate(gens):
        if not g:
            gdeg.append(0)
        else:
            gdeg.append(vec_degree(ring, degrees, g))
        w = dict(g)
        w[(r + k, ring.one_mono)] = ring.field.one
        track.append(w)
    all_deg = tuple(degrees) + tuple(gdeg)
    G = buchberger([w for w, g in zip(track, gens) if g], ring, all_deg,
                   known=ideal_times_free(ideal, r))
    red = G.reduce(dict(v))
    if any(p < r for (p, _) in red):
        raise NotInSpan("vector is not in the span of the generators")
    coeffs = [dict() for _ in gens]
    for (p, m), c in red.items():
        coeffs[p - r][m] = -c
    return [Poly(ring, t) for t in coeffs]


# ---------------------------------------------------------------- quotients

def module_quotient(U, t):
    """``(U : t) = {v in F : t v in U}`` for a nonzero homogeneous polynomial t."""
    if t.is_zero():
        raise ValueError("cannot take the quotient by zero")
    dt = t.weighted_degree()
    if dt is NonHomogeneous:
        raise NotGraded("quotient element must be homogeneous")
    ring = U.ring
    r = U.rank
    # second copy is shifted so that (t e_i, e_i) is homogeneous
    degrees = tuple(U.degrees) + tuple(d + dt for d in U.degrees)
    gens = []
    for i in range(r):
        v = {(i, m): c for m, c in t.terms.items()}
        v[(r + i, ring.one_mono)] = ring.field.one
        gens.append(v)
    known = [dict(g) for g in U.elements]
    G = buchberger(gens, ring, degrees, known=known)
    out = [{(p - r, m): c for (p, m), c in g.items()}
           for g, (p, _) in zip(G.elements, G.lead_terms) if p >= r]
    return GroebnerBasis(ring, U.degrees, out)


def saturate(U, t, cap=SATURATION_CAP):
    """``(U : t^infinity)`` by iterated quotients until the basis stabilises."""
    cur = U
    for _ in range(cap):
        nxt = module_quotient(cur, t)
        if cur.contains_basis(nxt):
            return cur
        cur = nxt
    raise SaturationCapExceeded("saturation did not stabilise after %d steps" % cap)


# ---------------------------------------------------------------- counting

def _in_monomial_ideal(m, gens):
    return any(mono_divides(g, m) for g in gens)


def is_finite_quotient(G):
    leads = G.leads_by_pos()
    n = G.ring.nvars
    for p in range(G.rank):
        gens = leads.get(p, [])
        for i in range(n):
            if not any(all(e == 0 for k, e in enumerate(g) if k != i) for g in gens):
                return False
    return True


def standard_monomials(G, max_degree=None):
    """Yield ``(pos, mono)`` not divisible by any lead term.

    Without ``max_degree`` the quotient must be finite.
    """
    ring = G.ring
    n = ring.nvars
    leads = G.leads_by_pos()
    for p in range(G.rank):
        gens = leads.get(p, [])
        base = G.degrees[p]
        stack = [((0,) * n, 0)]
        while stack:
            m, start = stack.pop()
            if _in_monomial_ideal(m, gens):
                continue
            if max_degree is not None and base + ring.wdeg(m) > max_degree:
                continue
            yield (p, m)
            for i in range(start, n):
                mm = list(m)
                mm[i] += 1
                stack.append((tuple(mm), i))


def kdim_quotient(G):
    """Vector-space dimension of ``F / U`` (``U`` given by its Groebner basis)."""
    if G.ring.nvars == 0:
        return G.rank - len(G.elements)
    if not is_finite_quotient(G):
        return Infinite
    return sum(1 for _ in standard_monomials(G))


def hilbert_function(G, degree):
    ring = G.ring
    return sum(1 for p, m in standard_monomials(G, degree)
               if G.degrees[p] + ring.wdeg(m) == degree)


def _monomial_numerator(gens, weights):
    """Numerator ``N(t)`` of the Hilbert series of ``P/(gens)`` over ``prod(1 - t^w)``."""
    gens = _minimalize(gens)
    if not gens:
        return {0: 1}
    if len(gens) == 1:
        d = sum(e * w for e, w in zip(gens[0], weights))
        return _tpoly_add({0: 1}, {d: -1})
    # split on the last generator: N(L) = N(L') - t^deg(m) N(L' : m)
    m = gens[-1]
    rest = gens[:-1]
    colon = [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest]
    d = sum(e * w for e, w in zip(m, weights))
    a = _monomial_numerator(rest, weights)
    b = _monomial_numerator(colon, weights)
    return _tpoly_add(a, {k + d: -v for k, v in b.items()})


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


def _tpoly_add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
        if out[k] == 0:
            del out[k]
    return out


def hilbert_numerator(G):
    """Numerator of the Hilbert series of ``F/U`` over ``prod_i (1 - t^{w_i})``."""
    leads = G.leads_by_pos()
    total = {}
    for p in range(G.rank):
        num = _monomial_numerator(leads.get(p, []), G.ring.weights)
        total = _tpoly_add(total, {k + G.degrees[p]: v for k, v in num.items()})
    return total


def series_length(numerator, weights):
    """Length of a module whose Hilbert series is ``numerator / prod(1 - t^w)``.

    Returns Infinite when the series is not a Laurent polynomial.
    """
    num = dict(numerator)
    for w in weights:
        num = _divide_by_one_minus(num, w)
        if num is None:
            return Infinite
    return sum(num.values())


def _divide_by_one_minus(num, w):
    if not num:
        return {}
    # num = (1 - t^w) q  <=>  q_k = num_k + q_{k-w}
    lo, hi = min(num), max(num)
    q = {}
    for k in range(lo, hi - w + 1):
        v = num.get(k, 0) + q.get(k - w, 0)
        if v:
            q[k] = v
    for k in range(hi - w + 1, hi + 1):
        if num.get(k, 0) + q.get(k - w, 0) != 0:
            return None
    return q
