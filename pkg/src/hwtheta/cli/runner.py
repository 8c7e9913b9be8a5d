"""Execute a parsed session and collect a JSON-ready report."""
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .. import __version__
from ..errors import AlgebraError
from ..gb import Infinite
from ..homology import betti, detect_periodicity, ext_ring, resolve, tor, tor_lengths
from ..kernel import PolyRing, PrimeField, QQ
from ..mfact import det_identity_holds, mf_from_resolution, verify_mf
from .. import modops
from ..ring import make_ring
from ..theta import hw_verdict, theorem32_check, theta
from .session import Command, FieldDecl, MfDecl, ModuleDecl, RingDecl

SCHEMA_VERSION = 1


@dataclass
class Report:
    results: list
    max_index: int
    field: str
    timing: dict = field(default_factory=dict)
    declarations: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r["ok"] for r in self.results) and all(d["ok"] for d in self.declarations)

    def to_json(self):
        out = {
            "schema_version": SCHEMA_VERSION,
            "engine": {"name": "hwtheta", "version": __version__,
                       "max_index": self.max_index, "field": self.field},
            "declarations": self.declarations,
            "results": self.results,
        }
        if self.timing:
            out["timing"] = self.timing
        return out


class DependencyFailed(AlgebraError):
    pass


def _len(v):
    return "infinite" if v is Infinite else v


def _field(decl, override):
    spec = override
    if spec is None and decl is not None:
        spec = "Q" if decl.kind == "Q" else "Fp:%d" % decl.p
    if spec is None or spec == "Q":
        return QQ, "Q"
    if spec.startswith("Fp"):
        p = int(spec.split(":", 1)[1] if ":" in spec else spec[2:])
        return PrimeField(p), "Fp:%d" % p
    raise ValueError("unknown field %r" % spec)


class _Env:
    def __init__(self, fld, max_index):
        self.field = fld
        self.max_index = max_index
        self.values = {}
        self.failed = {}

    def get(self, name):
        if name in self.failed:
            raise DependencyFailed("%s could not be built: %s" % (name, self.failed[name]))
        return self.values[name]


def _build_ring(env, d):
    names = [v for v, _ in d.variables]
    P = PolyRing(names, [w for _, w in d.variables], env.field)
    return make_ring(P, ideal_gens=list(d.ideal), minimal_primes=d.primes,
                     hypersurface_split=d.split, dim=d.dim, reduced=d.reduced, name=d.name)


def _build_module(env, d):
    if d.op == "coker":
        return modops.present(env.get(d.ring), [list(r) for r in d.args[0]], provenance=d.name)
    if d.op == "ideal":
        M = modops.ideal_module(env.get(d.ring), list(d.args[0]))
    elif d.op == "dsum":
        M = modops.direct_sum([env.get(a) for a in d.args])
    elif d.op == "tensor":
        M = modops.tensor(env.get(d.args[0]), env.get(d.args[1]))
    elif d.op == "dual":
        M = modops.dual(env.get(d.args[0])).module
    elif d.op == "transpose":
        M = modops.transpose(env.get(d.args[0]))
    elif d.op == "syzygy":
        M = modops.syzygy_module(env.get(d.args[0]), d.args[1])
    elif d.op == "pushforward":
        M = modops.pushforward(env.get(d.args[0]))
    elif d.op == "trotr":
        M = modops.tr_omega_tr_omega(env.get(d.args[0]))
    else:
        raise ValueError(d.op)
    M.provenance = d.name
    return M


def _build_mf(env, d):
    R = env.get(d.ring)
    S = R.base_ring()
    F = verify_mf([list(r) for r in d.phi], [list(r) for r in d.psi], R.split.f, S)
    F.ring = R
    return F


def _declare(env, d):
    try:
        if isinstance(d, RingDecl):
            env.values[d.name] = _build_ring(env, d)
        elif isinstance(d, ModuleDecl):
            env.values[d.name] = _build_module(env, d)
        else:
            env.values[d.name] = _build_mf(env, d)
        return {"name": d.name, "line": d.line, "ok": True}
    except (AlgebraError, ValueError) as exc:
        env.failed[d.name] = str(exc)
        return {"name": d.name, "line": d.line, "ok": False,
                "error": type(exc).__name__, "message": str(exc)}


def _execute(env, c):
    a = c.args
    if c.name == "resolve":
        res = resolve(env.get(a[0]), a[1])
        per = detect_periodicity(res)
        return {"ranks": res.ranks(), "differentials": [d.to_lists() for d in res.differentials],
                "periodicity": list(per) if per else None}
    if c.name == "betti":
        return betti(resolve(env.get(a[0]), a[1])).to_json()
    if c.name == "tor":
        T = tor(env.get(a[0]), env.get(a[1]), a[2])
        return {"length": _len(modops.length(T)), "generators": T.num_gens}
    if c.name == "torwindow":
        M, N = env.get(a[0]), env.get(a[1])
        w = tor_lengths(M, N, a[3], first=a[2])
        return {"lengths": [_len(v) for v in w.lengths], "first": a[2]}
    if c.name == "theta":
        return theta(env.get(a[0]), env.get(a[1]), env.max_index).to_json()
    if c.name == "torsion":
        T, tf = modops.torsion_submodule(env.get(a[0]))
        return {"torsion_free": tf, "torsion_generators": T.num_gens,
                "torsion_length": _len(modops.length(T))}
    if c.name == "length":
        return {"length": _len(modops.length(env.get(a[0])))}
    if c.name == "class":
        return modops.class_in_reduced_grothendieck(env.get(a[0])).to_json()
    if c.name == "hw":
        return hw_verdict(env.get(a[0]), module_id=a[0], max_index=env.max_index).to_json()
    if c.name == "thm32":
        return theorem32_check(env.get(a[0]), env.get(a[1]), env.max_index).to_json()
    if c.name == "extring":
        E = ext_ring(env.get(a[0]), a[1])
        return {"zero": E.is_zero(), "generators": E.num_gens, "length": _len(modops.length(E))}
    if c.name == "verify":
        F = env.get(a[0])
        return {"valid": True, "reduced": F.reduced, "size": F.size,
                "det_identity": det_identity_holds(F)}
    if c.name == "mfres":
        F = mf_from_resolution(env.get(a[0]))
        return {"factorization": None if F is None else F.to_json()}
    raise ValueError("unknown command %s" % c.name)


def _run_command(env, c, strict, timed):
    head = {"command": c.name, "args": [str(x) for x in c.args], "line": c.line}
    t0 = time.perf_counter()
    try:
        body = _execute(env, c)
        out = dict(head, ok=True, **body)
    except (AlgebraError, ValueError, IndexError) as exc:
        if strict:
            raise
        out = dict(head, ok=False, error=type(exc).__name__, message=str(exc))
    if timed:
        out["seconds"] = round(time.perf_counter() - t0, 4)
    return out


def run(session, max_index=12, strict=False, field=None, parallel=False, timing=False):
    """Run every statement in order; failures are isolated per command
    unless ``strict`` is set."""
    decl = next((s for s in session.statements if isinstance(s, FieldDecl)), None)
    fld, fname = _field(decl, field)
    env = _Env(fld, max_index)
    decls = []
    t0 = time.perf_counter()
    for s in session.statements:
        if isinstance(s, (RingDecl, ModuleDecl, MfDecl)):
            d = _declare(env, s)
            if strict and not d["ok"]:
                raise AlgebraError("%s: %s" % (s.name, d["message"]))
            decls.append(d)
    cmds = [s for s in session.statements if isinstance(s, Command)]
    if parallel:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda c: _run_command(env, c, strict, timing), cmds))
    else:
        results = [_run_command(env, c, strict, timing) for c in cmds]
    tm = {"total_seconds": round(time.perf_counter() - t0, 4)} if timing else {}
    return Report(results, max_index, fname, tm, decls)


def format_text(report):
    lines = []
    for d in report.declarations:
        if not d["ok"]:
            lines.append("[fail] line %d %s: %s" % (d["line"], d["name"], d["message"]))
    for r in report.results:
        tag = "ok" if r["ok"] else "fail"
        body = {k: v for k, v in r.items() if k not in ("command", "args", "line", "ok")}
        if r["ok"] and r["command"] == "resolve":
            body.pop("differentials", None)
        lines.append("[%s] %s %s: %s" % (tag, r["command"], " ".join(r["args"]),
                                         ", ".join("%s=%s" % kv for kv in body.items())))
    return "\n".join(lines)
