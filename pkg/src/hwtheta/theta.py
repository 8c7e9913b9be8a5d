"""The theta pairing, the vanishing-criterion instance check and the
Huneke-Wiegand verdict."""
from dataclasses import dataclass, field
from typing import Optional

from .errors import RankCapExceeded, ThetaUndefined
from .gb import Infinite
from .homology import (DEFAULT_RANK_CAP, TorLengthWindow, detect_periodicity,
                       resolve, tor_lengths)
from .modops import (direct_sum, dual, is_free, is_torsion_free, minimize,
                     tensor)

DEFAULT_MAX_INDEX = 12
STABLE = "Stable"
NOT_STABILIZED = "NotStabilized"
INFINITE_LENGTH = "InfiniteLength"


class UndefinedType:
    def __repr__(self):
        return "Undefined"


Undefined = UndefinedType()


@dataclass
class ThetaReport:
    value: object
    window: Optional[TorLengthWindow]
    period_info: Optional[tuple]
    reason: str
    note: str = ""

    @property
    def defined(self):
        return self.value is not Undefined

    def to_json(self):
        return {
            "value": self.value if self.defined else None,
            "window": [None if v is Infinite else v for v in self.window.lengths] if self.window else [],
            "period": list(self.period_info) if self.period_info else None,
            "reason": self.reason,
        }


def _stable_value(window, start, max_index):
    """First ``L(2n+2) - L(2n+1)`` that repeats at ``n+1``, using only
    indices inside the periodic part of the resolution."""
    diffs = []
    n = 0
    while 2 * n + 2 <= max_index:
        if 2 * n + 1 >= start:
            diffs.append((n, window[2 * n + 2] - window[2 * n + 1]))
        n += 1
    for (n0, a), (n1, b) in zip(diffs, diffs[1:]):
        if a == b:
            return a
    return None


def theta(M, N, max_index=DEFAULT_MAX_INDEX, rank_cap=DEFAULT_RANK_CAP):
    """Stabilised ``length Tor_{2n+2}(M, N) - length Tor_{2n+1}(M, N)``.

    A value is reported only when the resolution of M repeats exactly
    (period 1 or 2) and the even-minus-odd differences agree twice in a row.
    """
    try:
        res = resolve(M, max_index + 1, rank_cap=rank_cap)
    except RankCapExceeded as exc:
        return ThetaReport(Undefined, None, None, NOT_STABILIZED, str(exc))
    per = detect_periodicity(res)
    window = tor_lengths(M, N, max_index, res=res)
    if not window.all_finite():
        return ThetaReport(Undefined, window, per, INFINITE_LENGTH)
    if per is None:
        return ThetaReport(Undefined, window, None, NOT_STABILIZED,
                           "no exact periodicity in the resolution window")
    v = _stable_value(window, per[0], max_index)
    if v is None:
        return ThetaReport(Undefined, window, per, NOT_STABILIZED,
                           "length differences did not repeat")
    return ThetaReport(v, window, per, STABLE)


def _require(report):
    if not report.defined:
        raise ThetaUndefined("theta is undefined: %s" % report.reason, report)
    return report.value


def theta_bilinearity_check(summands, N, max_index=DEFAULT_MAX_INDEX):
    """``theta(sum M_i, N) == sum theta(M_i, N)``; raises ThetaUndefined otherwise."""
    summands = list(summands)
    whole = _require(theta(direct_sum(summands), N, max_index))
    parts = sum(_require(theta(m, N, max_index)) for m in summands)
    return whole == parts


@dataclass
class Theorem32Report:
    finite_tor: bool
    theta_zero: Optional[bool]
    tensor_nonzero: bool
    tensor_torsion_free: bool
    tor_vanish: bool
    m_torsion_free: bool
    n_torsion_free: bool
    theta: ThetaReport = None
    tor_window: list = field(default_factory=list)

    @property
    def hypotheses(self):
        """True, False, or None when theta is undefined."""
        if not (self.finite_tor and self.tensor_nonzero and self.tensor_torsion_free):
            return False
        if self.theta_zero is None:
            return None
        return self.theta_zero

    @property
    def conclusion(self):
        return self.tor_vanish and self.m_torsion_free and self.n_torsion_free

    @property
    def consistent(self):
        return not (self.hypotheses is True and not self.conclusion)

    def to_json(self):
        return {
            "hypotheses": {
                "finite_tor": self.finite_tor,
                "theta_zero": self.theta_zero,
                "tensor_nonzero": self.tensor_nonzero,
                "tensor_torsion_free": self.tensor_torsion_free,
            },
            "conclusion": {
                "tor_vanish_1_6": self.tor_vanish,
                "m_torsion_free": self.m_torsion_free,
                "n_torsion_free": self.n_torsion_free,
            },
            "hypotheses_hold": self.hypotheses,
            "conclusion_holds": self.conclusion,
            "consistent": self.consistent,
        }


def theorem32_check(M, N, max_index=DEFAULT_MAX_INDEX):
    """Evaluate both sides of: torsion-free nonzero ``M (x) N`` plus
    ``theta = 0`` forces ``Tor_i(M, N) = 0`` for ``i >= 1``."""
    rep = theta(M, N, max_index)
    window = rep.window if rep.window is not None else tor_lengths(M, N, 6)
    finite = window.all_finite()
    T = minimize(tensor(M, N))
    nonzero = not T.is_zero()
    tf = is_torsion_free(T) if nonzero else True
    first6 = [window[i] for i in range(1, 7)] if len(window.lengths) >= 6 else \
        tor_lengths(M, N, 6).lengths
    return Theorem32Report(
        finite_tor=finite,
        theta_zero=(rep.value == 0) if rep.defined else None,
        tensor_nonzero=nonzero,
        tensor_torsion_free=tf,
        tor_vanish=all(v == 0 for v in first6),
        m_torsion_free=is_torsion_free(M),
        n_torsion_free=is_torsion_free(N),
        theta=rep,
        tor_window=first6,
    )


@dataclass
class HWVerdict:
    module_id: str
    is_free: bool
    is_torsion_free: bool
    dual_nonzero: bool
    tensor_dual_torsion: bool
    theta_self: Optional[ThetaReport]

    @property
    def consistent_with_conjecture(self):
        return not (self.is_torsion_free and not self.is_free and not self.tensor_dual_torsion)

    def to_json(self):
        return {
            "module": self.module_id,
            "is_free": self.is_free,
            "is_torsion_free": self.is_torsion_free,
            "dual_nonzero": self.dual_nonzero,
            "tensor_dual_torsion": self.tensor_dual_torsion,
            "theta_self": self.theta_self.to_json() if self.theta_self else None,
            "consistent_with_conjecture": self.consistent_with_conjecture,
        }


def hw_verdict(M, module_id=None, with_theta=None, max_index=DEFAULT_MAX_INDEX):
    """Freeness, torsion-freeness and torsion in ``M (x) M*``.

    ``theta(M, M*)`` is attempted by default only over rings with a
    declared hypersurface split.
    """
    M = minimize(M)
    D = dual(M).module
    T = minimize(tensor(M, D))
    tdt = (not T.is_zero()) and not is_torsion_free(T)
    if with_theta is None:
        with_theta = M.ring.split is not None
    th = theta(M, D, max_index) if with_theta else None
    return HWVerdict(
        module_id=module_id or (M.provenance or "M"),
        is_free=is_free(M),
        is_torsion_free=is_torsion_free(M),
        dual_nonzero=not D.is_zero(),
        tensor_dual_torsion=tdt,
        theta_self=th,
    )
