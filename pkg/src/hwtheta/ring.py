"""Graded quotient rings R = P/I with declared minimal primes and an
optional hypersurface split R = S/(f)."""
from itertools import combinations_with_replacement, product

from .errors import (DeclaredPrimeInvalid, NotGraded, NotNonZeroDivisor,
                     SearchExhausted)
from .gb import ideal_gb, module_quotient, vec_from_polys, vec_to_polys
from .kernel import NonHomogeneous, Poly, PolyRing, QQ

SEARCH_COEFF_BOUND = 5


class QuotientRing:
    """Immutable graded quotient of a weighted polynomial ring.

    ``ideal`` holds the reduced Groebner basis of the defining ideal.
    Minimal primes are trusted user input; only containment of the
    defining ideal and a colon-stability sanity check are verified.
    """

    def __init__(self, ambient, ideal_gens, minimal_primes=None, split=None,
                 dim=None, reduced=None, name=None):
        self.ambient = ambient
        self.name = name
        gens = [ambient(g) for g in ideal_gens]
        for g in gens:
            if not g.is_homogeneous():
                raise NotGraded("defining ideal generator %s is not homogeneous" % g)
        self.ideal_gens = tuple(g for g in gens if not g.is_zero())
        self.ideal = ideal_gb(ambient, self.ideal_gens)
        self.dim = dim
        self.reduced = reduced
        self.minimal_primes = []
        for gens_p in minimal_primes or []:
            self.minimal_primes.append(self._check_prime(gens_p))
        self._check_primes_plausible()
        self.split = None
        self._base = None
        if split is not None:
            self.split = self._check_split(*split)

    # -- validation
    def _check_prime(self, gens_p):
        # no generators (or only zeros) means the zero ideal of R, i.e. I itself
        ps = [self.ambient(g) for g in gens_p]
        ps = [g for g in ps if not g.is_zero()] or list(self.ideal_gens)
        for g in ps:
            if not g.is_homogeneous():
                raise NotGraded("prime generator %s is not homogeneous" % g)
        pgb = ideal_gb(self.ambient, ps)
        for g in self.ideal.elements:
            if not pgb.contains(g):
                raise DeclaredPrimeInvalid(
                    "declared prime (%s) does not contain the defining ideal"
                    % ", ".join(map(str, ps)))
        if any(1 for g in pgb.elements if all(m == self.ambient.one_mono for (_, m) in g)):
            raise DeclaredPrimeInvalid("declared prime is the unit ideal")
        return DeclaredPrime(tuple(ps), pgb)

    def _check_primes_plausible(self):
        # (p : g) = p for generators g of the other declared primes outside p
        for i, p in enumerate(self.minimal_primes):
            for j, q in enumerate(self.minimal_primes):
                if i == j:
                    continue
                if q.gb.contains_basis(p.gb) and not p.gb.contains_basis(q.gb):
                    raise DeclaredPrimeInvalid("%r strictly contains %r, so it is not minimal"
                                               % (q, p))
                for g in q.gens:
                    if p.gb.contains(vec_from_polys([g])):
                        continue
                    if not _is_nzd(p.gb, g):
                        raise DeclaredPrimeInvalid("(%r : %s) is larger than %r" % (p, g, p))

    def _check_split(self, base_gens, f):
        base = tuple(self.ambient(g) for g in base_gens)
        f = self.ambient(f)
        if not f.is_homogeneous() or any(not g.is_homogeneous() for g in base):
            raise NotGraded("hypersurface split must be graded")
        base_gb = ideal_gb(self.ambient, base)
        whole = ideal_gb(self.ambient, base + (f,))
        if not whole.same_module(self.ideal):
            raise NotNonZeroDivisor("split ideals do not generate the defining ideal")
        if f.is_zero() or not _is_nzd(base_gb, f):
            raise NotNonZeroDivisor("%s is a zero-divisor modulo the base ideal" % f)
        return HypersurfaceSplit(base, base_gb, f)

    # -- element helpers
    def __call__(self, x):
        return self.reduce(self.ambient(x))

    def reduce(self, p):
        if p.is_zero() or not self.ideal.elements:
            return p
        return vec_to_polys(self.ambient, self.ideal.reduce(vec_from_polys([p])), 1)[0]

    def is_zero(self, p):
        return self.reduce(p).is_zero()

    def gens(self):
        return self.ambient.gens()

    @property
    def weights(self):
        return self.ambient.weights

    @property
    def field(self):
        return self.ambient.field

    def base_ring(self):
        """``S = P / base`` for the declared hypersurface split."""
        if self.split is None:
            raise NotNonZeroDivisor("ring has no hypersurface split")
        if self._base is None:
            self._base = QuotientRing(self.ambient, self.split.base_gens,
                                      name=(self.name + "_S") if self.name else None)
        return self._base

    def is_hypersurface(self):
        return self.split is not None

    def prime_index(self, p):
        if isinstance(p, DeclaredPrime):
            p = p.gens
        gens = tuple(self.ambient(g) for g in p)
        for i, q in enumerate(self.minimal_primes):
            if q.gens == gens:
                return i
        # same ideal, different generators
        pgb = ideal_gb(self.ambient, [g for g in gens if not g.is_zero()] or list(self.ideal_gens))
        for i, q in enumerate(self.minimal_primes):
            if q.gb.same_module(pgb):
                return i
        return None

    def __repr__(self):
        if self.name:
            return "QuotientRing(%s)" % self.name
        return "QuotientRing(%r / (%s))" % (self.ambient, ", ".join(map(str, self.ideal_gens)))


class DeclaredPrime:
    def __init__(self, gens, gb):
        self.gens = gens
        self.gb = gb

    def __repr__(self):
        return "(" + ", ".join(map(str, self.gens)) + ")"


class HypersurfaceSplit:
    def __init__(self, base_gens, base_gb, f):
        self.base_gens = base_gens
        self.base_gb = base_gb
        self.f = f


def _is_nzd(gb, r):
    Q = module_quotient(gb, r)
    return gb.contains_basis(Q)


def make_ring(vars, weights=None, field=QQ, ideal_gens=(), minimal_primes=None,
              hypersurface_split=None, dim=None, reduced=None, name=None):
    """Build and certify a graded quotient ring.

    ``hypersurface_split`` is ``(base_ideal_gens, f)`` with
    ``I = base_ideal + (f)`` and ``f`` a non-zerodivisor modulo the base.
    """
    P = vars if isinstance(vars, PolyRing) else PolyRing(vars, weights, field)
    return QuotientRing(P, ideal_gens, minimal_primes, hypersurface_split,
                        dim=dim, reduced=reduced, name=name)


def is_nonzerodivisor(r, R):
    """True iff ``(I : r) = I``."""
    r = R.reduce(R.ambient(r))
    if r.is_zero():
        return False
    if not r.is_homogeneous():
        raise NotGraded("element must be homogeneous")
    return _is_nzd(R.ideal, r)


def _candidates(R):
    P = R.ambient
    xs = P.gens()
    w = P.weights
    yield from xs
    by_weight = {}
    for i, wi in enumerate(w):
        by_weight.setdefault(wi, []).append(i)
    coeffs = [c for k in range(1, SEARCH_COEFF_BOUND + 1) for c in (k, -k)]
    for wi in sorted(by_weight):
        idx = by_weight[wi]
        if len(idx) < 2:
            continue
        # x_a + c x_b for a < b, then full combinations with leading coefficient 1
        for a in idx:
            for b in idx:
                if b <= a:
                    continue
                for c in coeffs:
                    yield xs[a] + xs[b].scale(c)
        if len(idx) > 2:
            for cs in product(coeffs, repeat=len(idx) - 1):
                yield xs[idx[0]] + sum((xs[j].scale(c) for j, c in zip(idx[1:], cs)), P.zero())
    maxdeg = 2 * max(w)
    for k in range(2, maxdeg + 1):
        for combo in combinations_with_replacement(range(len(xs)), k):
            m = P.one()
            for i in combo:
                m = m * xs[i]
            if m.weighted_degree() <= maxdeg:
                yield m


def find_nonzerodivisor(R):
    """First homogeneous positive-degree non-zerodivisor in a fixed search order.

    Order: single variables; ``x_a + c*x_b`` over same-weight variables with
    ``c`` in 1, -1, 2, -2, ..., 5, -5; wider same-weight combinations; then
    monomial products of degree at most twice the largest weight.
    """
    seen = set()
    for cand in _candidates(R):
        cand = R.reduce(cand)
        if cand.is_zero():
            continue
        k = frozenset(cand.terms.items())
        if k in seen:
            continue
        seen.add(k)
        if is_nonzerodivisor(cand, R):
            return cand
    raise SearchExhausted("no non-zerodivisor found within the search bound")
