"""Exact coefficient fields, weighted polynomials and graded polynomial matrices.

Everything here is immutable once built.  Rational coefficients are
``gmpy2.mpq`` values (always in lowest terms, positive denominator); prime
field coefficients are :class:`ModP` residues in ``[0, p)``.
"""
import ast
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

from gmpy2 import mpq

from .errors import NotGraded, RingMismatch, ShapeMismatch


# ---------------------------------------------------------------- fields

class RationalField:
    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, str):
            return mpq(Fraction(x))
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    @property
    def zero(self):
        return mpq(0)

    @property
    def one(self):
        return mpq(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class ModP:
    """Residue class modulo a prime, stored as its representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        return int(other) % self.p

    def __add__(self, other):
        return ModP(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return ModP(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return ModP(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, other):
        d = self._coerce(other)
        if d == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(self.v * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModP(self._coerce(other), self.p) / self

    def __pow__(self, e):
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.v == other.v and self.p == other.p
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class PrimeField:
    def __init__(self, p):
        p = int(p)
        if p <= 3 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError("prime field needs a prime p > 3, got %d" % p)
        self.p = p
        self.name = "GF(%d)" % p
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, ModP):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (Fraction, type(mpq(0)))):
            return ModP(int(x.numerator), self.p) / int(x.denominator)
        return ModP(int(x), self.p)

    @property
    def zero(self):
        return ModP(0, self.p)

    @property
    def one(self):
        return ModP(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def field_from_name(name, p=None):
    if name in ("Q", "QQ"):
        return QQ
    if name in ("Fp", "GF"):
        return PrimeField(p)
    raise ValueError("unknown field %r" % name)


# ---------------------------------------------------------------- rings

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class NonHomogeneousType:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NonHomogeneous"


NonHomogeneous = NonHomogeneousType()


class PolyRing:
    """Polynomial ring k[x_1..x_n] with positive integer weights.

    Monomials are compared by weighted degree first, ties broken by
    reverse-lex on the exponent vectors.
    """

    def __init__(self, names, weights=None, field=QQ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names):
            raise ValueError("one weight per variable required")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive")
        self.names = names
        self.weights = weights
        self.field = field
        self.nvars = len(names)
        self._key = lru_cache(maxsize=None)(self._mono_key)

    def _mono_key(self, m):
        return (self.wdeg(m), tuple(-e for e in reversed(m)))

    def mono_key(self, m):
        return self._key(m)

    def wdeg(self, m):
        return sum(e * w for e, w in zip(m, self.weights))

    @property
    def one_mono(self):
        return (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.weights == other.weights and self.field == other.field)

    def __hash__(self):
        return hash((self.names, self.weights, self.field))

    def __repr__(self):
        vs = ", ".join("%s:%d" % nw for nw in zip(self.names, self.weights))
        return "PolyRing(%s over %r)" % (vs, self.field)

    # construction helpers
    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {self.one_mono: self.field.one})

    def const(self, c):
        c = self.field(c)
        return Poly(self, {self.one_mono: c} if c != 0 else {})

    def gens(self):
        out = []
        for i in range(self.nvars):
            m = [0] * self.nvars
            m[i] = 1
            out.append(Poly(self, {tuple(m): self.field.one}))
        return out

    def var(self, name):
        return self.gens()[self.names.index(name)]

    def monomial(self, exps, coeff=1):
        c = self.field(coeff)
        return Poly(self, {tuple(exps): c} if c != 0 else {})

    def __call__(self, x):
        if isinstance(x, Poly):
            if x.ring != self:
                raise RingMismatch("polynomial from %r, expected %r" % (x.ring, self))
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    def parse(self, text):
        try:
            # caret binds like ** (Python would give it the lowest precedence)
            tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ValueError("cannot parse polynomial %r" % text) from exc
        return self._eval(tree.body, text)

    def _eval(self, node, text):
        if isinstance(node, ast.BinOp):
            a = self._eval(node.left, text)
            if isinstance(node.op, ast.Pow):
                e = node.right
                if isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0:
                    return a ** e.value
                raise ValueError("exponent must be a non-negative integer in %r" % text)
            b = self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant() or b.is_zero():
                    raise ValueError("can only divide by nonzero constants in %r" % text)
                return a * self.const(1 / b.constant_coeff())
            raise ValueError("unsupported operator in %r" % text)
        if isinstance(node, ast.UnaryOp):
            a = self._eval(node.operand, text)
            if isinstance(node.op, ast.USub):
                return -a
            if isinstance(node.op, ast.UAdd):
                return a
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return self.const(node.value)
        if isinstance(node, ast.Name) and node.id in self.names:
            return self.var(node.id)
        raise ValueError("unexpected token in %r" % text)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- queries
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring.one_mono in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.one_mono, self.ring.field.zero)

    def sorted_terms(self):
        key = self.ring.mono_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead_monomial(self):
        return max(self.terms, key=self.ring.mono_key)

    def lead_coeff(self):
        return self.terms[self.lead_monomial()]

    def weighted_degree(self):
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        degs = {self.ring.wdeg(m) for m in self.terms}
        if len(degs) > 1:
            return NonHomogeneous
        return degs.pop()

    def is_homogeneous(self):
        return not self.terms or self.weighted_degree() is not NonHomogeneous

    def monic(self):
        if not self.terms:
            return self
        c = self.lead_coeff()
        return Poly(self.ring, {m: v / c for m, v in self.terms.items()})

    # -- arithmetic
    def _check(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch("operands live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v == 0:
                    del out[m]
                else:
                    out[m] = v
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.ring, {m: c for m, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c):
        c = self.ring.field(c)
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, mono, c=None):
        if c is None:
            return Poly(self.ring, {mono_mul(m, mono): v for m, v in self.terms.items()})
        return Poly(self.ring, {mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return str(self)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mon = "*".join(
                n if e == 1 else "%s^%d" % (n, e)
                for n, e in zip(self.ring.names, m) if e)
            sign = "-" if _is_negative(c) else "+"
            a = -c if sign == "-" else c
            if not mon:
                body = str(a)
            elif a == 1:
                body = mon
            else:
                body = "%s*%s" % (a, mon)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += " %s %s" % (sign, body)
        return text


def _is_negative(c):
    if isinstance(c, ModP):
        return False
    return c < 0


def weighted_degree(p):
    """Common weighted degree of all terms, or ``NonHomogeneous``."""
    return p.weighted_degree()


def poly_arith(a, b, op):
    if a.ring != b.ring:
        raise RingMismatch("operands live in different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % op)


# ---------------------------------------------------------------- matrices

class PolyMatrix:
    """Graded matrix over a polynomial ring.

    Entry (i, j) is zero or homogeneous of degree
    ``col_degrees[j] - row_degrees[i]``.  Column j is the image of the j-th
    basis vector of the source.
    """

    __slots__ = ("ring", "entries", "row_degrees", "col_degrees")

    def __init__(self, ring, entries, row_degrees=None, col_degrees=None, check=True):
        rows = tuple(tuple(ring(e) for e in row) for row in entries)
        nrows = len(rows)
        ncols = len(rows[0]) if rows else (len(col_degrees) if col_degrees is not None else 0)
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged matrix")
        if row_degrees is None:
            row_degrees = [0] * nrows
        row_degrees = tuple(int(d) for d in row_degrees)
        if len(row_degrees) != nrows:
            raise ShapeMismatch("need one row degree per row")
        if col_degrees is None:
            cd = []
            for j in range(ncols):
                d = None
                for i in range(nrows):
                    e = rows[i][j]
                    if not e.is_zero():
                        w = e.weighted_degree()
                        if w is NonHomogeneous:
                            raise NotGraded("entry (%d,%d) = %s is not homogeneous" % (i, j, e))
                        d = row_degrees[i] + w
                        break
                cd.append(0 if d is None else d)
            col_degrees = cd
        col_degrees = tuple(int(d) for d in col_degrees)
        if len(col_degrees) != ncols:
            raise ShapeMismatch("need one column degree per column")
        self.ring = ring
        self.entries = rows
        self.row_degrees = row_degrees
        self.col_degrees = col_degrees
        if check:
            self.check_graded()

    def check_graded(self):
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.is_zero():
                    continue
                w = e.weighted_degree()
                if w is NonHomogeneous or w != self.col_degrees[j] - self.row_degrees[i]:
                    raise NotGraded("entry (%d,%d) = %s has wrong degree" % (i, j, e))

    @property
    def nrows(self):
        return len(self.row_degrees)

    @property
    def ncols(self):
        return len(self.col_degrees)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return [row[j] for row in self.entries]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.ring == other.ring
                and self.entries == other.entries
                and self.row_degrees == other.row_degrees
                and self.col_degrees == other.col_degrees)

    def __hash__(self):
        return hash((self.entries, self.row_degrees, self.col_degrees))

    def same_entries(self, other):
        return self.shape == other.shape and self.entries == other.entries

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            c = self.ring(other)
            return PolyMatrix(self.ring, [[e * c for e in row] for row in self.entries],
                              self.row_degrees, None if self.nrows else self.col_degrees)
        if self.ring != other.ring:
            raise RingMismatch("matrices over different rings")
        if self.ncols != other.nrows:
            raise ShapeMismatch("cannot multiply %s by %s" % (self.shape, other.shape))
        zero = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if a.terms:
                        b = other.entries[k][j]
                        if b.terms:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        # inner degrees may differ by a uniform shift
        diffs = {a - b for a, b in zip(self.col_degrees, other.row_degrees)}
        if len(diffs) <= 1:
            s = diffs.pop() if diffs else 0
            cols = [d + s for d in other.col_degrees]
        else:
            cols = None
        return PolyMatrix(self.ring, out, self.row_degrees, cols, check=cols is None)

    def transpose(self):
        """Dual map: rows and columns swap, degrees negate."""
        ent = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return PolyMatrix(self.ring, ent, [-d for d in self.col_degrees],
                          [-d for d in self.row_degrees], check=False)

    def shift(self, d):
        return PolyMatrix(self.ring, self.entries, [x + d for x in self.row_degrees],
                          [x + d for x in self.col_degrees], check=False)

    def map_entries(self, fn):
        return PolyMatrix(self.ring, [[fn(e) for e in row] for row in self.entries],
                          self.row_degrees, self.col_degrees, check=False)

    def submatrix(self, rows, cols):
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows],
                          [self.row_degrees[i] for i in rows],
                          [self.col_degrees[j] for j in cols], check=False)

    def __str__(self):
        if not self.nrows:
            return "[] (0x%d)" % self.ncols
        return "[" + "; ".join("[" + ", ".join(str(e) for e in row) + "]"
                               for row in self.entries) + "]"

    __repr__ = __str__

    def to_lists(self):
        return [[str(e) for e in row] for row in self.entries]


def zero_matrix(ring, row_degrees, col_degrees):
    z = ring.zero()
    return PolyMatrix(ring, [[z] * len(col_degrees) for _ in row_degrees],
                      row_degrees, col_degrees, check=False)


def identity_matrix(ring, degrees):
    n = len(degrees)
    z, o = ring.zero(), ring.one()
    return PolyMatrix(ring, [[o if i == j else z for j in range(n)] for i in range(n)],
                      degrees, degrees, check=False)


def hconcat(mats, ring=None, row_degrees=None):
    """Join matrices with a common target side by side."""
    mats = list(mats)
    if not mats:
        return PolyMatrix(ring, [[] for _ in row_degrees], row_degrees, [], check=False)
    r = mats[0].nrows
    if any(m.nrows != r for m in mats):
        raise ShapeMismatch("row counts differ")
    ent = [sum((list(m.entries[i]) for m in mats), []) for i in range(r)]
    cols = sum((list(m.col_degrees) for m in mats), [])
    return PolyMatrix(mats[0].ring, ent, mats[0].row_degrees, cols, check=False)


def direct_sum(mats):
    mats = list(mats)
    ring = mats[0].ring
    z = ring.zero()
    rows = []
    ncols = sum(m.ncols for m in mats)
    off = 0
    for m in mats:
        for row in m.entries:
            rows.append([z] * off + list(row) + [z] * (ncols - off - m.ncols))
        off += m.ncols
    return PolyMatrix(ring, rows, sum((list(m.row_degrees) for m in mats), []),
                      sum((list(m.col_degrees) for m in mats), []), check=False)


def kron(a, b):
    """Kronecker product; generator (i, k) of the result sits at i*b.nrows + k."""
    ring = a.ring
    rows = []
    for i, k in cartesian(range(a.nrows), range(b.nrows)):
        rows.append([a.entries[i][j] * b.entries[k][l]
                     for j, l in cartesian(range(a.ncols), range(b.ncols))])
    rd = [a.row_degrees[i] + b.row_degrees[k] for i, k in cartesian(range(a.nrows), range(b.nrows))]
    cd = [a.col_degrees[j] + b.col_degrees[l] for j, l in cartesian(range(a.ncols), range(b.ncols))]
    return PolyMatrix(ring, rows, rd, cd, check=False)


def tensor_with_identity(a, degrees, side="right"):
    """``a (x) Id`` (side='right') or ``Id (x) a`` (side='left') for the given degrees."""
    ident = identity_matrix(a.ring, degrees)
    return kron(a, ident) if side == "right" else kron(ident, a)


def matrix_arith(a, b=None, op="mul"):
    if op == "mul":
        return a * b
    if op == "transpose":
        return a.transpose()
    if op == "direct_sum":
        return direct_sum([a, b])
    if op == "tensor_with_identity":
        return tensor_with_identity(a, b)
    raise ValueError("unknown op %r" % op)
