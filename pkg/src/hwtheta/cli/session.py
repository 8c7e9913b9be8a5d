"""Line-oriented session language: parsing and printing.

Polynomials are kept as text (whitespace removed) and only interpreted when
a session runs, so a parse failure never depends on the field.
"""
import re
from dataclasses import dataclass, field
from typing import Optional

MODULE_OPS = ("coker", "ideal", "dsum", "tensor", "dual", "transpose", "syzygy",
              "pushforward", "trotr")
COMMANDS = {
    # name: argument kinds ("m" module, "f" factorization, "i" integer)
    "resolve": "mi", "betti": "mi", "tor": "mmi", "torwindow": "mmii", "theta": "mm",
    "torsion": "m", "length": "m", "class": "m", "hw": "m", "thm32": "mm",
    "extring": "mi", "verify": "f", "mfres": "m",
}
KEYWORDS = {"field", "ring", "module", "mf"}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_INT = re.compile(r"-?\d+")


class SessionSyntaxError(SyntaxError):
    def __init__(self, message, line, col):
        super().__init__("line %d, column %d: %s" % (line, col, message))
        self.line = line
        self.col = col
        self.reason = message


class UnknownSymbol(SessionSyntaxError):
    pass


@dataclass(frozen=True)
class FieldDecl:
    kind: str
    p: Optional[int] = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RingDecl:
    name: str
    variables: tuple  # ((name, weight), ...)
    ideal: tuple
    primes: Optional[tuple] = None
    split: Optional[tuple] = None  # (base polys, f)
    dim: Optional[int] = None
    reduced: bool = False
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    op: str
    ring: Optional[str]
    args: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MfDecl:
    name: str
    ring: str
    phi: tuple
    psi: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    line: int = field(default=0, compare=False)


@dataclass
class Session:
    statements: list
    symbols: dict

    @property
    def commands(self):
        return [s for s in self.statements if isinstance(s, Command)]

    @property
    def declarations(self):
        return [s for s in self.statements if not isinstance(s, Command)]

    def ast(self):
        return tuple(self.statements)


class _Cursor:
    def __init__(self, text, lineno):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def error(self, msg, cls=SessionSyntaxError, pos=None):
        return cls(msg, self.lineno, (self.pos if pos is None else pos) + 1)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self):
        self.ws()
        return self.pos >= len(self.text)

    def peek(self):
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s):
        self.ws()
        if not self.text.startswith(s, self.pos):
            raise self.error("expected %r" % s)
        self.pos += len(s)

    def accept(self, s):
        self.ws()
        if self.text.startswith(s, self.pos):
            end = self.pos + len(s)
            if s[-1].isalnum() and end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
                return False
            self.pos = end
            return True
        return False

    def ident(self, what="name"):
        self.ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise self.error("expected %s" % what)
        self.pos = m.end()
        return m.group(0)

    def integer(self, what="integer"):
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected %s" % what)
        self.pos = m.end()
        return int(m.group(0))

    def balanced(self, open_, close):
        """Inner text of the bracket group starting here."""
        self.ws()
        if self.peek() != open_:
            raise self.error("expected %r" % open_)
        start = self.pos
        depth = 0
        for k in range(self.pos, len(self.text)):
            c = self.text[k]
            if c in "([":
                depth += 1
            elif c in ")]":
                depth -= 1
                if depth == 0:
                    if c != close:
                        raise self.error("mismatched %r" % c, pos=k)
                    self.pos = k + 1
                    return self.text[start + 1:k], start + 1
        raise self.error("unclosed %r" % open_, pos=start)

    def token(self):
        """Text up to the next whitespace outside brackets."""
        self.ws()
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in "([":
                depth += 1
            elif c in ")]":
                depth -= 1
            elif c.isspace() and depth == 0:
                break
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an expression")
        return self.text[start:self.pos]


def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for c in text:
        if c in "([":
            depth += 1
        elif c in ")]":
            depth -= 1
        if c == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(c)
    parts.append("".join(cur))
    return parts


def _poly_text(s, cur, pos):
    t = "".join(s.split())
    if not t:
        raise cur.error("empty polynomial", pos=pos)
    return t


def _poly_list(cur):
    inner, pos = cur.balanced("(", ")")
    if not inner.strip():
        return ()
    return tuple(_poly_text(p, cur, pos) for p in _split_top(inner, ","))


def _matrix(cur):
    inner, pos = cur.balanced("[", "]")
    rows = []
    for part in _split_top(inner, ";"):
        part = part.strip()
        if not (part.startswith("[") and part.endswith("]")):
            raise cur.error("matrix rows must look like [a, b, ...]", pos=pos)
        body = part[1:-1]
        rows.append(tuple(_poly_text(p, cur, pos) for p in _split_top(body, ",")) if body.strip() else ())
    if len({len(r) for r in rows}) > 1:
        raise cur.error("matrix rows have different lengths", pos=pos)
    return tuple(rows)


def _parse_ring(cur, lineno):
    name = cur.ident("ring name")
    cur.expect("=")
    cur.expect("poly")
    inner, pos = cur.balanced("(", ")")
    variables = []
    for part in _split_top(inner, ","):
        m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?::\s*(\d+))?\s*", part)
        if not m:
            raise cur.error("bad variable %r" % part.strip(), pos=pos)
        variables.append((m.group(1), int(m.group(2) or 1)))
    cur.expect("/")
    ideal = _poly_list(cur)
    primes = split = dim = None
    reduced = False
    while not cur.at_end():
        if cur.accept("primes"):
            ps = [_poly_list(cur)]
            while cur.accept(";"):
                ps.append(_poly_list(cur))
            primes = tuple(ps)
        elif cur.accept("split"):
            cur.expect("base")
            cur.expect("=")
            base = _poly_list(cur)
            cur.expect("f")
            cur.expect("=")
            pos = cur.pos
            f = _poly_text(cur.token(), cur, pos)
            split = (base, f)
        elif cur.accept("dim"):
            dim = cur.integer("dimension")
        elif cur.accept("reduced"):
            reduced = True
        else:
            raise cur.error("unexpected text in ring declaration")
    return RingDecl(name, tuple(variables), ideal, primes, split, dim, reduced, lineno)


def _parse_module(cur, lineno, symbols):
    name = cur.ident("module name")
    cur.expect("=")
    op_pos = cur.pos
    op = cur.ident("module constructor")
    if op not in MODULE_OPS:
        raise cur.error("unknown module constructor %r" % op, pos=op_pos)

    def ref(kind):
        p = cur.pos
        cur.ws()
        p = cur.pos
        n = cur.ident()
        if symbols.get(n) != kind:
            raise cur.error("unknown %s %r" % (kind, n), UnknownSymbol, pos=p)
        return n

    if op == "coker":
        ring = ref("ring")
        return ModuleDecl(name, op, ring, (_matrix(cur),), lineno)
    if op == "ideal":
        ring = ref("ring")
        return ModuleDecl(name, op, ring, (_poly_list(cur),), lineno)
    if op == "dsum":
        mods = [ref("module")]
        while not cur.at_end():
            mods.append(ref("module"))
        return ModuleDecl(name, op, None, tuple(mods), lineno)
    if op == "tensor":
        return ModuleDecl(name, op, None, (ref("module"), ref("module")), lineno)
    if op == "syzygy":
        m = ref("module")
        return ModuleDecl(name, op, None, (m, cur.integer("syzygy index")), lineno)
    return ModuleDecl(name, op, None, (ref("module"),), lineno)


def _parse_mf(cur, lineno, symbols):
    name = cur.ident("factorization name")
    cur.expect("=")
    cur.expect("verify")
    cur.ws()
    p = cur.pos
    ring = cur.ident("ring name")
    if symbols.get(ring) != "ring":
        raise cur.error("unknown ring %r" % ring, UnknownSymbol, pos=p)
    return MfDecl(name, ring, _matrix(cur), _matrix(cur), lineno)


def _parse_command(cur, lineno, word, symbols):
    kinds = COMMANDS[word]
    args = []
    for k in kinds:
        cur.ws()
        p = cur.pos
        if k == "i":
            args.append(cur.integer())
            continue
        n = cur.ident("module name" if k == "m" else "factorization name")
        want = "module" if k == "m" else "mf"
        if symbols.get(n) != want:
            raise cur.error("unknown %s %r" % (want, n), UnknownSymbol, pos=p)
        args.append(n)
    return Command(word, tuple(args), lineno)


def parse_session(text):
    """Parse a session; raises SessionSyntaxError or UnknownSymbol with location."""
    statements = []
    symbols = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        cur = _Cursor(line, lineno)
        cur.ws()
        start = cur.pos
        word = cur.ident("keyword or command")
        if word == "field":
            kind = cur.ident("field name")
            if kind == "Q":
                stmt = FieldDecl("Q", None, lineno)
            elif kind == "Fp":
                stmt = FieldDecl("Fp", cur.integer("prime"), lineno)
            else:
                raise cur.error("unknown field %r" % kind, pos=start)
            if any(isinstance(s, FieldDecl) for s in statements):
                raise cur.error("field declared twice", pos=start)
            if any(isinstance(s, RingDecl) for s in statements):
                raise cur.error("field must come before rings", pos=start)
        elif word == "ring":
            stmt = _parse_ring(cur, lineno)
        elif word == "module":
            stmt = _parse_module(cur, lineno, symbols)
        elif word == "mf":
            stmt = _parse_mf(cur, lineno, symbols)
        elif word in COMMANDS:
            stmt = _parse_command(cur, lineno, word, symbols)
        else:
            raise cur.error("unknown statement %r" % word, pos=start)
        if not cur.at_end():
            raise cur.error("unexpected trailing text")
        if isinstance(stmt, (RingDecl, ModuleDecl, MfDecl)):
            if stmt.name in symbols:
                raise SessionSyntaxError("duplicate name %r" % stmt.name, lineno, start + 1)
            symbols[stmt.name] = {RingDecl: "ring", ModuleDecl: "module", MfDecl: "mf"}[type(stmt)]
        statements.append(stmt)
    return Session(statements, symbols)


def _fmt_list(xs):
    return "(" + ", ".join(xs) + ")"


def _fmt_matrix(rows):
    return "[" + ";".join("[" + ", ".join(r) + "]" for r in rows) + "]"


def print_statement(s):
    if isinstance(s, FieldDecl):
        return "field Q" if s.kind == "Q" else "field Fp %d" % s.p
    if isinstance(s, RingDecl):
        out = "ring %s = poly(%s) / %s" % (
            s.name, ", ".join("%s:%d" % v for v in s.variables), _fmt_list(s.ideal))
        if s.primes is not None:
            out += " primes " + ";".join(_fmt_list(p) for p in s.primes)
        if s.split is not None:
            out += " split base=%s f=%s" % (_fmt_list(s.split[0]), s.split[1])
        if s.dim is not None:
            out += " dim %d" % s.dim
        if s.reduced:
            out += " reduced"
        return out
    if isinstance(s, ModuleDecl):
        if s.op == "coker":
            return "module %s = coker %s %s" % (s.name, s.ring, _fmt_matrix(s.args[0]))
        if s.op == "ideal":
            return "module %s = ideal %s %s" % (s.name, s.ring, _fmt_list(s.args[0]))
        return "module %s = %s %s" % (s.name, s.op, " ".join(str(a) for a in s.args))
    if isinstance(s, MfDecl):
        return "mf %s = verify %s %s %s" % (s.name, s.ring, _fmt_matrix(s.phi), _fmt_matrix(s.psi))
    return " ".join([s.name] + [str(a) for a in s.args])


def print_session(session):
    return "\n".join(print_statement(s) for s in session.statements) + "\n"
