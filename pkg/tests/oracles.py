"""Independent reference computations built on sympy.

Nothing here calls into hwtheta: graded pieces are computed degree by degree
from a sympy Groebner basis and ranks of explicit rational matrices.
"""
from itertools import product

import sympy as sp


class GradedQuotient:
    """Degree-wise linear algebra in ``Q[vars]/I`` for a weighted homogeneous I."""

    def __init__(self, names, weights, ideal):
        self.syms = sp.symbols(names)
        self.weights = tuple(weights)
        polys = [sp.sympify(g, locals=dict(zip(names, self.syms))) for g in ideal]
        self.G = sp.groebner(polys, *self.syms, order="grevlex") if polys else None
        self.leads = []
        if self.G is not None:
            for g in self.G.exprs:
                lt = sp.Poly(g, *self.syms).monoms(order="grevlex")[0]
                self.leads.append(lt)
        self._cache = {}

    def expr(self, text):
        return sp.sympify(text, locals={str(s): s for s in self.syms})

    def monomials(self, d):
        """All exponent vectors of weighted degree d."""
        if d < 0:
            return []
        out = []

        def rec(i, left, cur):
            if i == len(self.weights):
                if left == 0:
                    out.append(tuple(cur))
                return
            w = self.weights[i]
            for e in range(left // w + 1):
                rec(i + 1, left - e * w, cur + [e])

        rec(0, d, [])
        return out

    def basis(self, d):
        if d not in self._cache:
            self._cache[d] = [m for m in self.monomials(d)
                              if not any(all(a >= b for a, b in zip(m, l)) for l in self.leads)]
        return self._cache[d]

    def reduce(self, e):
        e = sp.expand(e)
        if e == 0 or self.G is None:
            return e
        return self.G.reduce(e)[1]

    def coords(self, e, d):
        """Coordinates of a degree-d element in the standard monomial basis."""
        e = self.reduce(e)
        if e == 0:
            return [0] * len(self.basis(d))
        p = sp.Poly(e, *self.syms)
        terms = dict(zip(p.monoms(), p.coeffs()))
        return [terms.get(m, 0) for m in self.basis(d)]

    def mono(self, m):
        out = sp.Integer(1)
        for s, e in zip(self.syms, m):
            out *= s ** e
        return out

    def wdeg(self, e):
        e = sp.expand(e)
        if e == 0:
            return None
        p = sp.Poly(e, *self.syms)
        return sum(a * w for a, w in zip(p.monoms()[0], self.weights))


def _rank(rows):
    if not rows:
        return 0
    return sp.Matrix(rows).rank()


class FreeSpace:
    """Degree-d piece of ``sum_k R(-degs[k])``."""

    def __init__(self, Q, degs):
        self.Q = Q
        self.degs = list(degs)

    def basis(self, d):
        return [(k, m) for k, g in enumerate(self.degs) for m in self.Q.basis(d - g)]

    def coords(self, vec, d):
        out = []
        for k, g in enumerate(self.degs):
            out.extend(self.Q.coords(vec[k], d - g) if d - g >= 0 else [])
        return out


def span_in_degree(Q, target_degs, cols, col_degs, d):
    """Coordinate rows spanning the degree-d part of the column span."""
    F = FreeSpace(Q, target_degs)
    rows = []
    for c, cd in zip(cols, col_degs):
        for m in Q.basis(d - cd) if d - cd >= 0 else []:
            rows.append(F.coords([Q.mono(m) * e for e in c], d))
    return rows


def coker_dim(Q, gen_degs, cols, col_degs, d):
    F = FreeSpace(Q, gen_degs)
    return len(F.basis(d)) - _rank(span_in_degree(Q, gen_degs, cols, col_degs, d))


def coker_length(Q, matrix, gen_degs, max_degree):
    """Sum of graded dimensions of ``coker(matrix)`` up to ``max_degree``."""
    cols, cdeg = _columns(Q, matrix, gen_degs)
    return sum(coker_dim(Q, gen_degs, cols, cdeg, d) for d in range(min(gen_degs), max_degree + 1))


def _columns(Q, matrix, row_degs):
    rows = [[Q.expr(e) for e in r] for r in matrix]
    ncols = len(rows[0]) if rows else 0
    cols, degs = [], []
    for j in range(ncols):
        col = [rows[i][j] for i in range(len(rows))]
        i0 = next((i for i in range(len(rows)) if sp.expand(col[i]) != 0), None)
        if i0 is None:
            continue
        cols.append(col)
        degs.append(row_degs[i0] + Q.wdeg(col[i0]))
    return cols, degs


def tor_length(Q, resolution, res_degs, N_matrix, N_degs, i, max_degree):
    """Length of ``Tor_i(M, N)`` from a given resolution of M.

    ``resolution[j]`` is d_{j+1} as a list of rows of strings and
    ``res_degs[j]`` the degrees of F_j.  Homology of ``F (x) N`` is computed
    degree by degree as ``dim Z - dim B`` inside ``F_i (x) G``.
    """
    ncols = len(N_matrix[0]) if N_matrix else 0
    Ncols, Ndeg = _columns(Q, N_matrix, N_degs) if ncols else ([], [])
    G = list(N_degs)

    def tensor_degs(fdegs):
        return [a + b for a in fdegs for b in G]

    def rel_cols(fdegs):
        cols, degs = [], []
        for k, a in enumerate(fdegs):
            for c, cd in zip(Ncols, Ndeg):
                v = [0] * (len(fdegs) * len(G))
                for l in range(len(G)):
                    v[k * len(G) + l] = c[l]
                cols.append(v)
                degs.append(a + cd)
        return cols, degs

    def map_cols(dmat, src_degs, tgt_degs):
        rows = [[Q.expr(e) for e in r] for r in dmat]
        cols, degs = [], []
        for k, a in enumerate(src_degs):
            for l, b in enumerate(G):
                v = [0] * (len(tgt_degs) * len(G))
                for j in range(len(tgt_degs)):
                    v[j * len(G) + l] = rows[j][k]
                cols.append(v)
                degs.append(a + b)
        return cols, degs

    fi = res_degs[i]
    mid = tensor_degs(fi)
    W = FreeSpace(Q, mid)
    total = 0
    rel_i, rel_i_deg = rel_cols(fi)
    din, din_deg = map_cols(resolution[i], res_degs[i + 1], fi)
    if i >= 1:
        fo = res_degs[i - 1]
        out = tensor_degs(fo)
        rel_o, rel_o_deg = rel_cols(fo)
        dmap = [[Q.expr(e) for e in r] for r in resolution[i - 1]]
    for d in range(min(mid) if mid else 0, max_degree + 1):
        basis = W.basis(d)
        if not basis:
            continue
        b_rows = span_in_degree(Q, mid, din + rel_i, din_deg + rel_i_deg, d)
        dim_b = _rank(b_rows)
        if i == 0:
            dim_z = len(basis)
        else:
            Fo = FreeSpace(Q, out)
            images = []
            for (k, m) in basis:
                kk, l = divmod(k, len(G))
                v = [0] * (len(fo) * len(G))
                for j in range(len(fo)):
                    v[j * len(G) + l] = Q.mono(m) * dmap[j][kk]
                images.append(Fo.coords(v, d))
            rel_rows = span_in_degree(Q, out, rel_o, rel_o_deg, d)
            r_rel = _rank(rel_rows)
            r_all = _rank(images + rel_rows)
            dim_z = len(basis) - (r_all - r_rel)
        total += dim_z - dim_b
    return total


def periodic_resolution(first, second, degs0, length):
    """Alternating resolution ``first, second, first, ...`` of a cyclic module
    over a hypersurface, as matrices plus free-module degrees."""
    mats, degs = [], [list(degs0)]
    for j in range(length):
        m, dm = (first if j % 2 == 0 else second)
        mats.append(m)
        degs.append([degs[-1][0] + dm])
    return mats, degs
